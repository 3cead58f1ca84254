"""Top-level packing algorithms.

Each algorithm returns a Packing whose ``source`` names it and whose
``flags`` carry fallback/bookkeeping notes for the harness. All functions
are pure; recognition info is computed on demand when not supplied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from . import oracle, packing_classic
from .errors import CapabilityError, ParameterError
from .graphs import (
    GraphClassInfo,
    maximum_matching_general,
    minimum_coloring,
    recognize,
    restrict_class_info,
)
from .maxsize import MaxSizeConfig, max_size
from .model import (
    ConflictInstance,
    Packing,
    classify_items,
    concat_packings,
    restrict_instance,
    validate_packing,
    ONE,
    ZERO,
)
from .simplex import solve_max_lp

PRACTICAL_EPS = Fraction(1, 6)


def _info(instance: ConflictInstance, info: Optional[GraphClassInfo]) -> GraphClassInfo:
    return info if info is not None else recognize(instance)


def _class_bound_terms(instance: ConflictInstance) -> tuple[int, Fraction, Fraction]:
    classes = classify_items(instance)
    s_m = instance.size_of(classes.medium)
    s_s = instance.size_of(classes.small)
    return len(classes.large), s_m, s_s


def color_sets(instance: ConflictInstance, info: Optional[GraphClassInfo] = None) -> Packing:
    """Pack each color class of a minimum coloring as a separate instance.

    Per class the better of first-fit-decreasing and the exact-on-small
    strategy is kept; the concatenation satisfies
    #bins <= chi + |large| + (3/2) s(medium) + (4/3) s(small), checked
    exactly on every run.
    """
    info = _info(instance, info)
    coloring = minimum_coloring(instance, info)
    result = Packing((), "color_sets")
    for cls in coloring:
        sizes = {i: instance.sizes[i] for i in cls}
        a1 = packing_classic.ffd(cls, sizes)
        a2 = packing_classic.asymptotic_bp(cls, sizes)
        best = a1 if a1.bin_count <= a2.bin_count else a2
        result = Packing(result.bins + best.bins, "color_sets")
    chi = len(coloring)
    n_large, s_m, s_s = _class_bound_terms(instance)
    bound = chi + n_large + Fraction(3, 2) * s_m + Fraction(4, 3) * s_s
    assert Fraction(result.bin_count) <= bound, (
        f"coloring-based bound violated: {result.bin_count} > {bound}"
    )
    return result


def max_solve(
    instance: ConflictInstance,
    info: Optional[GraphClassInfo] = None,
    eps=PRACTICAL_EPS,
    maxsize_config: Optional[MaxSizeConfig] = None,
) -> Packing:
    """Singleton bins for the large items, grown greedily, rest by coloring."""
    info = _info(instance, info)
    classes = classify_items(instance)
    large = sorted(classes.large)
    seed = Packing(tuple(frozenset({v}) for v in large), "max_solve")
    grown = max_size(instance, seed, info, eps=eps, config=maxsize_config)
    rest = restrict_instance(instance, grown.augmented.items(), mode="subtract")
    rest_info = restrict_class_info(info, rest.items)
    tail = color_sets(rest, rest_info)
    out = concat_packings(grown.augmented, tail)
    return Packing(out.bins, "max_solve", grown.augmented.flags)


def matching_pack(instance: ConflictInstance, info: Optional[GraphClassInfo] = None) -> Packing:
    """Pair up large/medium items that fit together, color the small rest.

    The auxiliary graph joins two non-conflicting large-or-medium items
    whose sizes sum to at most one; a maximum matching of it gives the
    two-item bins.
    """
    info = _info(instance, info)
    classes = classify_items(instance)
    lm = sorted(classes.large | classes.medium)
    aux_edges = [
        (u, v)
        for k, u in enumerate(lm)
        for v in lm[k + 1 :]
        if instance.sizes[u] + instance.sizes[v] <= ONE and not instance.has_edge(u, v)
    ]
    matching = maximum_matching_general(lm, aux_edges)
    matched: set[int] = set()
    bins: list[frozenset[int]] = []
    for u, v in sorted(matching):
        bins.append(frozenset({u, v}))
        matched |= {u, v}
    for v in lm:
        if v not in matched:
            bins.append(frozenset({v}))
    rest = restrict_instance(instance, set(lm), mode="subtract")
    rest_info = restrict_class_info(info, rest.items)
    tail = color_sets(rest, rest_info)
    return Packing(tuple(bins) + tail.bins, "matching_pack")


def approx_bpc(
    instance: ConflictInstance,
    info: Optional[GraphClassInfo] = None,
    eps=PRACTICAL_EPS,
    maxsize_config: Optional[MaxSizeConfig] = None,
) -> Packing:
    """Best of the three subroutines by bin count (ties by listed order)."""
    info = _info(instance, info)
    candidates = [
        color_sets(instance, info),
        max_solve(instance, info, eps=eps, maxsize_config=maxsize_config),
        matching_pack(instance, info),
    ]
    best = min(candidates, key=lambda p: p.bin_count)
    return Packing(best.bins, "approx_bpc", best.flags + (f"winner:{best.source}",))


def split_approx(
    instance: ConflictInstance,
    info: Optional[GraphClassInfo] = None,
    eps=Fraction(1, 10),
    maxsize_config: Optional[MaxSizeConfig] = None,
) -> Packing:
    """Clique singletons plus guessed empty bins, grown, remainder by FFD.

    Tries every guess alpha of how many bins beyond the clique the optimum
    uses, grows the initial packing with the split-graph single-bin scheme,
    packs the leftovers (all from the independent side) with FFD, and keeps
    the best guess.
    """
    info = _info(instance, info)
    if not info.is_split or info.split_partition is None:
        raise CapabilityError("split certificate required")
    if instance.n == 0:
        return Packing((), "split_approx")
    if instance.total_size <= ONE and instance.is_independent(instance.items):
        return Packing((frozenset(instance.items),), "split_approx")
    clique, _stable = info.split_partition
    singles = tuple(frozenset({v}) for v in sorted(clique))
    alpha_top = math.ceil(2 * instance.total_size) + 1
    best: Optional[Packing] = None
    for alpha in range(alpha_top + 1):
        start = Packing(singles + tuple(frozenset() for _ in range(alpha)), "split_approx")
        grown = max_size(instance, start, info, eps=eps, config=maxsize_config)
        covered = grown.augmented.items()
        rest = [i for i in instance.items if i not in covered]
        tail = packing_classic.ffd(rest, instance.sizes)
        candidate = Packing(
            grown.augmented.bins + tail.bins, "split_approx", grown.augmented.flags
        )
        if best is None or candidate.bin_count < best.bin_count:
            best = candidate
    assert best is not None
    return best


@dataclass(frozen=True)
class AssignmentLp:
    """The one-sided item-to-bin assignment LP.

    Variables x[i, v] exist for bin i and item v eligible for it (the bin
    stays an independent set with v added); rows bound per-bin residual
    capacity and per-item total assignment.
    """

    big_packing: Packing
    items_w: tuple[int, ...]
    capacities: tuple[Fraction, ...]
    eligible: tuple[frozenset[int], ...]
    variables: tuple[tuple[int, int], ...]  # (bin index, item) per column

    @property
    def bin_count(self) -> int:
        return len(self.capacities)


@dataclass(frozen=True)
class LpSolution:
    values: dict[tuple[int, int], Fraction]
    objective: Fraction
    basis: tuple[int, ...]
    fractional_items: frozenset[int]
    integral_items: frozenset[int]


def build_assignment_lp(
    instance: ConflictInstance, big_packing: Packing, w_items: Iterable[int]
) -> AssignmentLp:
    w = tuple(sorted(set(w_items)))
    packed = big_packing.items()
    overlap = [v for v in w if v in packed]
    if overlap:
        raise ParameterError(f"assignment items overlap the packed items: {overlap}")
    unknown = [v for v in w if v not in instance.sizes]
    if unknown:
        raise ParameterError(f"assignment items not in instance: {unknown}")
    if not instance.is_independent(w):
        raise ParameterError("assignment items must be mutually conflict-free (one side)")
    report = validate_packing(instance, big_packing, require_cover=False)
    if not report.feasible:
        first = report.violations[0]
        raise ParameterError(f"packed bins infeasible: {first.kind} ({first.detail})")

    capacities = []
    eligible = []
    variables: list[tuple[int, int]] = []
    for i, members in enumerate(big_packing.bins):
        capacities.append(ONE - instance.size_of(members))
        blocked = 0
        for u in members:
            blocked |= instance.adjacency[u]
        q = frozenset(v for v in w if not (blocked >> v) & 1)
        eligible.append(q)
        for v in w:
            if v in q:
                variables.append((i, v))
    return AssignmentLp(big_packing, w, tuple(capacities), tuple(eligible), tuple(variables))


def solve_assignment_lp(instance: ConflictInstance, lp: AssignmentLp) -> LpSolution:
    """Maximize total assignment; returns an optimal basic feasible solution.

    Basicness matters: it caps the number of fractionally assigned items by
    the number of bins, which the rounding step exploits.
    """
    t = lp.bin_count
    cols = lp.variables
    objective = [ONE] * len(cols)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in range(t):
        rows.append(
            [instance.sizes[v] if ci == i else ZERO for (ci, v) in cols]
        )
        rhs.append(lp.capacities[i])
    for v in lp.items_w:
        rows.append([ONE if cv == v else ZERO for (_, cv) in cols])
        rhs.append(ONE)
    result = solve_max_lp(objective, rows, rhs)
    values = {col: x for col, x in zip(cols, result.x)}
    fractional = frozenset(
        v for (i, v), x in values.items() if ZERO < x < ONE
    )
    integral = frozenset(lp.items_w) - fractional
    return LpSolution(values, result.objective, result.basis, fractional, integral)


def round_assignment(
    instance: ConflictInstance, big_packing: Packing, w_items: Iterable[int]
) -> Packing:
    """Keep the x = 1 assignments of a basic optimal solution.

    Dropping the (at most one per bin) fractional items leaves the bin
    count unchanged and keeps at least LP-opt minus bin-count items.
    """
    lp = build_assignment_lp(instance, big_packing, w_items)
    sol = solve_assignment_lp(instance, lp)
    bins = []
    kept = 0
    for i, members in enumerate(big_packing.bins):
        extra = {v for v in lp.eligible[i] if sol.values.get((i, v)) == ONE}
        kept += len(extra)
        bins.append(frozenset(members) | extra)
    ok = len(sol.fractional_items) <= lp.bin_count and Fraction(kept) >= sol.objective - lp.bin_count
    return Packing(
        tuple(bins),
        "round_assignment",
        ("lemma12:ok",) if ok else ("lemma12:fail",),
    )


@dataclass(frozen=True)
class AssignConfig:
    eps: Fraction = Fraction(1, 10000)
    max_bins: int = 6
    max_big_items: int = 10


def _enumerate_feasible_packings(
    instance: ConflictInstance, items: list[int], max_bins: int
):
    """All packings of ``items`` into at most max_bins feasible bins.

    Canonical generation (an item may only open the next unused bin), so
    each partition appears exactly once.
    """
    items = sorted(items)
    n = len(items)
    loads: list[Fraction] = []
    blocks: list[int] = []
    bins: list[list[int]] = []

    def dfs(k: int):
        if k == n:
            yield Packing(tuple(frozenset(b) for b in bins), "enumerated")
            return
        v = items[k]
        s = instance.sizes[v]
        for b in range(len(bins)):
            if loads[b] + s <= ONE and not (blocks[b] >> v) & 1:
                bins[b].append(v)
                loads[b] += s
                old = blocks[b]
                blocks[b] |= instance.adjacency[v]
                yield from dfs(k + 1)
                bins[b].pop()
                loads[b] -= s
                blocks[b] = old
        if len(bins) < max_bins:
            bins.append([v])
            loads.append(s)
            blocks.append(instance.adjacency[v])
            yield from dfs(k + 1)
            bins.pop()
            loads.pop()
            blocks.pop()

    yield from dfs(0)


def assign(
    instance: ConflictInstance,
    w_items: Iterable[int],
    info: Optional[GraphClassInfo] = None,
    config: Optional[AssignConfig] = None,
) -> Packing:
    """Enumerate packings of the big items, round the assignment LP on each.

    Starts from the coloring-based packing; every enumerated big-item
    packing is extended by LP rounding over ``w_items`` and a coloring-based
    packing of whatever remains. Enumeration limits trigger a silent
    fallback to the initialization (flagged, never fatal).
    """
    info = _info(instance, info)
    if not info.is_bipartite:
        raise CapabilityError("bipartite certificate required")
    config = config or AssignConfig()
    classes = classify_items(instance, eps=config.eps)
    assert classes.tiny is not None and classes.big is not None
    w = sorted(set(w_items))
    outside = [v for v in w if v not in classes.tiny]
    if outside:
        raise ParameterError(f"assignment items must be tiny at eps={config.eps}: {outside}")
    best = color_sets(instance, info).with_source("assign")
    flags: list[str] = []
    bigs = sorted(classes.big)
    if len(bigs) > config.max_big_items:
        return best.with_flags("enumeration-skipped")
    count = 0
    for big_packing in _enumerate_feasible_packings(instance, bigs, config.max_bins):
        count += 1
        rounded = round_assignment(instance, big_packing, w)
        rest = restrict_instance(instance, rounded.items(), mode="subtract")
        tail = color_sets(rest, restrict_class_info(info, rest.items))
        candidate = Packing(rounded.bins + tail.bins, "assign", rounded.flags)
        if candidate.bin_count < best.bin_count:
            best = candidate
    flags.append(f"enumerated:{count}")
    return best.with_flags(*flags)


def abs_bpb(
    instance: ConflictInstance,
    info: Optional[GraphClassInfo] = None,
    config: Optional[AssignConfig] = None,
    exact_limit: int = 16,
    feasibility_node_budget: int = 200_000,
) -> Packing:
    """Best of coloring, small-optimum exact search, and both one-sided
    LP-assignment runs, on a bipartite conflict graph."""
    info = _info(instance, info)
    if not info.is_bipartite or info.bipartition is None:
        raise CapabilityError("bipartite certificate required")
    config = config or AssignConfig()
    candidates: list[Packing] = [color_sets(instance, info).with_source("abs_bpb/color_sets")]
    if instance.n <= exact_limit:
        packing, _ = oracle.opt_bpc_exact(instance, limit_n=exact_limit)
        candidates.append(packing.with_source("abs_bpb/exact"))
    else:
        try:
            packing, _ = oracle.opt_bpc_exact(
                instance,
                limit_n=instance.n,
                max_bins=3,
                node_budget=feasibility_node_budget,
            )
            candidates.append(packing.with_source("abs_bpb/exact-small"))
        except CapabilityError:
            pass
    classes = classify_items(instance, eps=config.eps)
    assert classes.tiny is not None
    x_side, y_side = info.bipartition
    for side in (x_side, y_side):
        w = sorted(side & classes.tiny)
        candidates.append(assign(instance, w, info, config))
    best = min(candidates, key=lambda p: p.bin_count)
    return Packing(best.bins, "abs_bpb", best.flags + (f"winner:{best.source}",))


def multipartite_pack(instance: ConflictInstance, info: Optional[GraphClassInfo] = None) -> Packing:
    """Pack each part of a complete multipartite graph on its own.

    Bins never mix parts (every cross pair conflicts), and the per-part
    optima add up to the overall optimum, so a good per-part packing is a
    good packing.
    """
    info = _info(instance, info)
    if not info.is_complete_multipartite or info.parts is None:
        raise CapabilityError("complete-multipartite certificate required")
    bins: tuple[frozenset[int], ...] = ()
    for part in info.parts:
        sizes = {i: instance.sizes[i] for i in part}
        a1 = packing_classic.ffd(part, sizes)
        a2 = packing_classic.asymptotic_bp(part, sizes)
        best = a1 if a1.bin_count <= a2.bin_count else a2
        bins += best.bins
    return Packing(bins, "multipartite_pack")
