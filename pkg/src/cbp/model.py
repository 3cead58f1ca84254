"""Instance and packing data model.

Items carry exact rational sizes in [0, 1] and a conflict graph on item
ids. All size comparisons are exact (``fractions.Fraction``), so threshold
classifications (1/3, 1/2, epsilon) never suffer float drift. Instances and
packings are immutable after construction; every operation here is a pure
function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence, Union

from .errors import ParameterError

SizeLike = Union[Fraction, int, float, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_size(value: SizeLike) -> Fraction:
    """Coerce a size to an exact Fraction.

    Strings are read either as "p/q" or as a decimal literal; floats are
    interpreted by their shortest decimal repr (so 0.2 becomes 1/5, not the
    nearest binary double).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParameterError(f"not a size: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParameterError(f"cannot parse size {value!r}") from exc
    raise ParameterError(f"cannot parse size {value!r}")


class ConflictInstance:
    """A set of items with sizes and a conflict graph.

    Item ids are nonnegative integers (dense 0..n-1 at parse time; a
    restriction keeps the original ids). ``labels`` maps ids back to the
    original external names for reporting.
    """

    __slots__ = ("items", "sizes", "edges", "class_hint", "labels", "adjacency", "_items_mask")

    def __init__(
        self,
        sizes: Union[Mapping[int, SizeLike], Sequence[SizeLike]],
        edges: Iterable[tuple[int, int]] = (),
        class_hint: Optional[str] = None,
        labels: Optional[Mapping[int, str]] = None,
    ):
        if isinstance(sizes, Mapping):
            size_map = {int(i): as_size(s) for i, s in sizes.items()}
        else:
            size_map = {i: as_size(s) for i, s in enumerate(sizes)}
        for i, s in size_map.items():
            if i < 0:
                raise ParameterError(f"item ids must be nonnegative, got {i}")
            if not (ZERO <= s <= ONE):
                raise ParameterError(f"size of item {i} is {s}, outside [0, 1]")
        self.items: tuple[int, ...] = tuple(sorted(size_map))
        self.sizes: dict[int, Fraction] = {i: size_map[i] for i in self.items}

        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ParameterError(f"self-loop on item {u}")
            if u not in size_map or v not in size_map:
                raise ParameterError(f"edge ({u}, {v}) references unknown items")
            norm.add((u, v) if u < v else (v, u))
        self.edges: frozenset[tuple[int, int]] = frozenset(norm)
        self.class_hint = class_hint
        self.labels: dict[int, str] = (
            {i: str(labels[i]) for i in self.items} if labels else {i: str(i) for i in self.items}
        )

        adj = {i: 0 for i in self.items}
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.adjacency: dict[int, int] = adj
        mask = 0
        for i in self.items:
            mask |= 1 << i
        self._items_mask = mask

    @property
    def n(self) -> int:
        return len(self.items)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(_mask_to_ids(self.adjacency[v]))

    def size_of(self, items: Iterable[int]) -> Fraction:
        return sum((self.sizes[i] for i in items), ZERO)

    @property
    def total_size(self) -> Fraction:
        return self.size_of(self.items)

    def is_independent(self, items: Iterable[int]) -> bool:
        mask = 0
        for i in items:
            if self.adjacency[i] & mask:
                return False
            mask |= 1 << i
        return True

    def conflicting_pairs(self, items: Iterable[int]) -> list[tuple[int, int]]:
        """All conflict edges with both endpoints inside ``items``."""
        ids = sorted(set(items))
        inside = 0
        for i in ids:
            inside |= 1 << i
        pairs = []
        for u in ids:
            hits = self.adjacency[u] & inside
            for v in _mask_to_ids(hits):
                if v > u:
                    pairs.append((u, v))
        return pairs

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConflictInstance):
            return NotImplemented
        return self.items == other.items and self.sizes == other.sizes and self.edges == other.edges

    def __hash__(self):
        return hash((self.items, tuple(self.sizes.values()), self.edges))

    def __repr__(self) -> str:
        return f"ConflictInstance(n={self.n}, edges={len(self.edges)}, hint={self.class_hint!r})"


def _mask_to_ids(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class ItemClasses:
    """Size-threshold partition of the items.

    ``large`` holds s > 1/2, ``medium`` 1/3 < s <= 1/2, ``small`` s <= 1/3.
    When an epsilon was given, ``tiny`` holds s <= eps and ``big`` the rest.
    """

    large: frozenset[int]
    medium: frozenset[int]
    small: frozenset[int]
    eps: Optional[Fraction] = None
    tiny: Optional[frozenset[int]] = None
    big: Optional[frozenset[int]] = None


HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


def classify_items(instance: ConflictInstance, eps: Optional[SizeLike] = None) -> ItemClasses:
    """Partition items into large/medium/small (and tiny/big when eps given).

    Boundaries are closed exactly as defined: s = 1/2 is medium, s = 1/3 is
    small, s = eps is tiny. ``eps`` must lie strictly inside (0, 0.1).
    """
    eps_f: Optional[Fraction] = None
    if eps is not None:
        eps_f = as_size(eps) if not isinstance(eps, Fraction) else eps
        if not (ZERO < eps_f < Fraction(1, 10)):
            raise ParameterError(f"eps must be in (0, 0.1), got {eps_f}")
    large, medium, small = set(), set(), set()
    for i in instance.items:
        s = instance.sizes[i]
        if s > HALF:
            large.add(i)
        elif s > THIRD:
            medium.add(i)
        else:
            small.add(i)
    tiny = big = None
    if eps_f is not None:
        tiny = frozenset(i for i in instance.items if instance.sizes[i] <= eps_f)
        big = frozenset(instance.items) - tiny
    return ItemClasses(
        large=frozenset(large),
        medium=frozenset(medium),
        small=frozenset(small),
        eps=eps_f,
        tiny=tiny,
        big=big,
    )


@dataclass(frozen=True)
class Packing:
    """An ordered list of bins (item-id sets) plus provenance metadata.

    A Packing object is just data; use :func:`validate_packing` to check
    disjointness, capacity and independence against an instance.
    """

    bins: tuple[frozenset[int], ...]
    source: str = ""
    flags: tuple[str, ...] = ()

    @property
    def bin_count(self) -> int:
        return len(self.bins)

    def items(self) -> frozenset[int]:
        out: set[int] = set()
        for b in self.bins:
            out |= b
        return frozenset(out)

    def with_source(self, source: str, extra_flags: tuple[str, ...] = ()) -> "Packing":
        return Packing(self.bins, source, self.flags + extra_flags)

    def with_flags(self, *flags: str) -> "Packing":
        return Packing(self.bins, self.source, self.flags + tuple(flags))


def make_packing(bins: Iterable[Iterable[int]], source: str = "", flags: tuple[str, ...] = ()) -> Packing:
    return Packing(tuple(frozenset(b) for b in bins), source, flags)


EMPTY_PACKING = Packing(())


class Violation(NamedTuple):
    bin_index: Optional[int]
    kind: str  # overflow | conflict | duplicate-item | unknown-item | uncovered-item
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    feasible: bool
    violations: tuple[Violation, ...]
    covered_items: frozenset[int]


def validate_packing(
    instance: ConflictInstance, packing: Packing, require_cover: bool = False
) -> ValidationReport:
    """Check a packing against an instance, reporting every problem found.

    Problems are reported, never raised: overflows (exact rational size
    sums), intra-bin conflict edges, items occurring in more than one bin,
    unknown item ids, and (when require_cover) items missing from all bins.
    """
    violations: list[Violation] = []
    seen: set[int] = set()
    covered: set[int] = set()
    for idx, b in enumerate(packing.bins):
        known = []
        for i in sorted(b):
            if i not in instance.sizes:
                violations.append(Violation(idx, "unknown-item", f"item {i} not in instance"))
                continue
            known.append(i)
            if i in seen:
                violations.append(Violation(idx, "duplicate-item", f"item {i} already packed"))
            seen.add(i)
            covered.add(i)
        total = instance.size_of(known)
        if total > ONE:
            violations.append(Violation(idx, "overflow", f"bin size {total} > 1"))
        for u, v in instance.conflicting_pairs(known):
            violations.append(Violation(idx, "conflict", f"items {u} and {v} conflict"))
    if require_cover:
        for i in instance.items:
            if i not in covered:
                violations.append(Violation(None, "uncovered-item", f"item {i} in no bin"))
    return ValidationReport(
        feasible=not violations,
        violations=tuple(violations),
        covered_items=frozenset(covered),
    )


def concat_packings(b: Packing, c: Packing) -> Packing:
    """Bins of ``b`` followed by bins of ``c``."""
    source = b.source if b.source == c.source else (b.source or c.source)
    return Packing(b.bins + c.bins, source, b.flags + c.flags)


def union_packings(b: Packing, c: Packing) -> Packing:
    """Slot-wise union of two packings of equal length.

    The result is not necessarily feasible; callers must validate.
    """
    if b.bin_count != c.bin_count:
        raise ParameterError(f"bin counts differ: {b.bin_count} vs {c.bin_count}")
    bins = tuple(x | y for x, y in zip(b.bins, c.bins))
    return Packing(bins, b.source or c.source, b.flags + c.flags)


def restrict_instance(
    instance: ConflictInstance, subset: Iterable[int], mode: str = "intersect"
) -> ConflictInstance:
    """Induced sub-instance on ``subset`` (or its complement for subtract).

    Item ids are preserved; edges are restricted to the kept items.
    """
    sub = set(subset)
    unknown = sub - set(instance.items)
    if unknown:
        raise ParameterError(f"subset contains unknown items: {sorted(unknown)}")
    if mode == "intersect":
        kept = sub
    elif mode == "subtract":
        kept = set(instance.items) - sub
    else:
        raise ParameterError(f"mode must be 'intersect' or 'subtract', got {mode!r}")
    sizes = {i: instance.sizes[i] for i in kept}
    edges = [(u, v) for (u, v) in instance.edges if u in kept and v in kept]
    labels = {i: instance.labels[i] for i in kept}
    return ConflictInstance(sizes, edges, class_hint=instance.class_hint, labels=labels)
