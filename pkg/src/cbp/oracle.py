"""Exact small-scale solvers used as ground truth.

All three solvers are deliberately dependency-free branch-and-bound /
exhaustive searches, fast enough for the desk-scale limits they enforce
and trivially auditable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from .errors import CapabilityError
from .model import ConflictInstance, Packing, ZERO, _mask_to_ids

DEFAULT_EXACT_LIMIT = 18


def _scaled_sizes(sizes: list[Fraction]) -> tuple[list[int], int]:
    """Integerize sizes on a common denominator (capacity = denominator)."""
    den = 1
    for s in sizes:
        den = den * s.denominator // math.gcd(den, s.denominator)
        if den > 10**9:
            raise OverflowError
    return [int(s * den) for s in sizes], den


class _BnB:
    """Branch and bound over item-to-bin assignments with symmetry breaking.

    Items are processed in non-increasing size order; item k may only open
    bin number <= current_bins. Interchangeable items (equal size, equal
    adjacency outside the pair) are forced into non-decreasing bin indices.
    Bins with identical residual capacity and identical conflict footprint
    on the remaining items are tried once.
    """

    def __init__(self, instance: ConflictInstance, max_bins: Optional[int], node_budget: Optional[int]):
        self.instance = instance
        order = sorted(instance.items, key=lambda i: (-instance.sizes[i], i))
        self.order = order
        self.n = len(order)
        self.pos = {v: k for k, v in enumerate(order)}
        try:
            sizes, den = _scaled_sizes([instance.sizes[i] for i in order])
        except OverflowError:
            # Rare in practice (file-level sizes are decimals or small
            # fractions); exact Fractions still work, just slower.
            sizes = [instance.sizes[i] for i in order]
            den = Fraction(1)
        self.sizes = sizes
        self.cap = den
        self.suffix = [0] * (self.n + 1)
        for k in range(self.n - 1, -1, -1):
            self.suffix[k] = self.suffix[k + 1] + sizes[k]
        # Adjacency in order-index space.
        self.adj = [0] * self.n
        for k, v in enumerate(order):
            mask = 0
            for u in _mask_to_ids(instance.adjacency[v]):
                if u in self.pos:
                    mask |= 1 << self.pos[u]
            self.adj[k] = mask
        # Interchangeability groups: previous equal item in scan order.
        self.prev_equal = [-1] * self.n
        for k in range(1, self.n):
            j = k - 1
            if sizes[j] == sizes[k]:
                if (self.adj[j] & ~(1 << k)) == (self.adj[k] & ~(1 << j)):
                    self.prev_equal[k] = j
        self.max_bins = max_bins
        self.node_budget = node_budget
        self.nodes = 0
        self.best_bins: Optional[list[int]] = None
        self.best_count = 0
        self.budget_exhausted = False

    def greedy(self) -> list[int]:
        """Conflict-aware first fit in the sorted order (initial incumbent)."""
        loads: list = []
        blocks: list[int] = []
        assign = [0] * self.n
        for k in range(self.n):
            placed = False
            for b in range(len(loads)):
                if loads[b] + self.sizes[k] <= self.cap and not (blocks[b] >> k) & 1:
                    loads[b] += self.sizes[k]
                    blocks[b] |= self.adj[k]
                    assign[k] = b
                    placed = True
                    break
            if not placed:
                loads.append(self.sizes[k])
                blocks.append(self.adj[k])
                assign[k] = len(loads) - 1
        return assign

    def root_lower_bound(self) -> int:
        inst = self.instance
        if self.n == 0:
            return 0
        size_lb = -(-self.suffix[0] // self.cap) if self.suffix[0] else 0
        large = sum(1 for i in inst.items if inst.sizes[i] > Fraction(1, 2))
        clique = self._greedy_clique()
        return max(int(size_lb), large, clique, 1)

    def _greedy_clique(self) -> int:
        by_degree = sorted(range(self.n), key=lambda k: (-self.adj[k].bit_count(), k))
        clique_mask = 0
        size = 0
        for k in by_degree:
            if clique_mask & ~self.adj[k]:
                continue
            clique_mask |= 1 << k
            size += 1
        return size

    def solve(self) -> Optional[tuple[list[int], int]]:
        if self.n == 0:
            return [], 0
        incumbent = self.greedy()
        count = max(incumbent) + 1
        if self.max_bins is not None and count > self.max_bins:
            incumbent, count = None, self.max_bins + 1
        self.best_bins, self.best_count = incumbent, count
        root_lb = self.root_lower_bound()
        if incumbent is not None and count == root_lb:
            return incumbent, count
        loads = [0] * (self.n + 1)
        blocks = [0] * (self.n + 1)
        assign = [0] * self.n
        self._search(0, 0, loads, blocks, assign, root_lb)
        if self.best_bins is None:
            return None
        return list(self.best_bins), self.best_count

    def _search(self, k: int, used: int, loads, blocks, assign, root_lb: int) -> None:
        if self.budget_exhausted or (self.best_count == root_lb and self.best_bins is not None):
            return
        if self.node_budget is not None:
            self.nodes += 1
            if self.nodes > self.node_budget:
                self.budget_exhausted = True
                return
        if k == self.n:
            self.best_bins = assign[:]
            self.best_count = used
            return
        # Capacity-based completion bound.
        free = used * self.cap - sum(loads[b] for b in range(used))
        deficit = self.suffix[k] - free
        needed = -(-deficit // self.cap) if deficit > 0 else 0
        if used + needed >= self.best_count:
            return
        size_k = self.sizes[k]
        adj_k = self.adj[k]
        start = 0
        if self.prev_equal[k] >= 0:
            start = assign[self.prev_equal[k]]
        seen: set = set()
        for b in range(start, used):
            if loads[b] + size_k > self.cap or (blocks[b] >> k) & 1:
                continue
            key = (loads[b], blocks[b] >> k)
            if key in seen:
                continue
            seen.add(key)
            old_block = blocks[b]
            loads[b] += size_k
            blocks[b] |= adj_k
            assign[k] = b
            self._search(k + 1, used, loads, blocks, assign, root_lb)
            loads[b] -= size_k
            blocks[b] = old_block
            if self.budget_exhausted:
                return
        if used + 1 < self.best_count and (self.max_bins is None or used < self.max_bins):
            loads[used] = size_k
            blocks[used] = adj_k
            assign[k] = used
            self._search(k + 1, used + 1, loads, blocks, assign, root_lb)
            loads[used] = 0
            blocks[used] = 0


def _assignment_to_packing(instance: ConflictInstance, order: list[int], assign: list[int], count: int, source: str) -> Packing:
    bins: list[set[int]] = [set() for _ in range(count)]
    for k, b in enumerate(assign):
        bins[b].add(order[k])
    return Packing(tuple(frozenset(b) for b in bins), source)


def opt_bpc_exact(
    instance: ConflictInstance,
    limit_n: int = DEFAULT_EXACT_LIMIT,
    max_bins: Optional[int] = None,
    node_budget: Optional[int] = None,
) -> tuple[Packing, int]:
    """Provably optimal packing by branch and bound.

    With ``max_bins`` set, searches only packings within that many bins and
    raises CapabilityError if none exists (or the node budget runs out).
    """
    if instance.n > limit_n:
        raise CapabilityError(f"exact solver limited to n <= {limit_n}, got {instance.n}")
    solver = _BnB(instance, max_bins, node_budget)
    result = solver.solve()
    if result is None:
        if solver.budget_exhausted:
            raise CapabilityError("exact solver node budget exhausted")
        raise CapabilityError(f"no packing within {max_bins} bins")
    assign, count = result
    packing = _assignment_to_packing(instance, solver.order, assign, count, "exact")
    return packing, count


def bis_brute(problem, limit_n: int = 20) -> tuple[frozenset[int], Fraction]:
    """Optimal bounded independent set by exhaustive independent-set scan.

    Maximizes total weight subject to independence and weight <= budget;
    ties broken toward the lexicographically smallest sorted id tuple.
    """
    vertices = sorted(problem.vertices)
    if len(vertices) > limit_n:
        raise CapabilityError(f"brute-force BIS limited to n <= {limit_n}, got {len(vertices)}")
    adj = {v: 0 for v in vertices}
    for u, v in problem.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    weights = problem.weights
    budget = problem.budget
    best: tuple[Fraction, tuple[int, ...]] = (ZERO, ())

    def consider(current: list[int], weight: Fraction) -> None:
        nonlocal best
        key = (weight, tuple(current))
        if key[0] > best[0] or (key[0] == best[0] and key[1] < best[1]):
            best = key

    def dfs(idx: int, banned: int, current: list[int], weight: Fraction) -> None:
        consider(current, weight)
        for j in range(idx, len(vertices)):
            v = vertices[j]
            if (banned >> v) & 1:
                continue
            w = weights[v]
            if weight + w > budget:
                continue
            current.append(v)
            dfs(j + 1, banned | adj[v] | (1 << v), current, weight + w)
            current.pop()

    dfs(0, 0, [], ZERO)
    return frozenset(best[1]), best[0]


def maxsize_brute(
    instance: ConflictInstance,
    initial: Packing,
    limit_items: int = 12,
    limit_bins: int = 4,
) -> Fraction:
    """Optimal total size addable to the bins of ``initial``.

    Exhaustive assignment of each unpacked item to one of the bins or to
    none, with feasibility filtering and a remaining-size bound.
    """
    packed = initial.items()
    unpacked = sorted(
        (i for i in instance.items if i not in packed),
        key=lambda i: (-instance.sizes[i], i),
    )
    if len(unpacked) > limit_items:
        raise CapabilityError(f"brute-force limited to <= {limit_items} unpacked items")
    if initial.bin_count > limit_bins:
        raise CapabilityError(f"brute-force limited to <= {limit_bins} bins")
    t = initial.bin_count
    loads = [instance.size_of(b) for b in initial.bins]
    blocks = [0] * t
    for b, members in enumerate(initial.bins):
        for v in members:
            blocks[b] |= instance.adjacency[v]
    sizes = [instance.sizes[i] for i in unpacked]
    suffix = [ZERO] * (len(unpacked) + 1)
    for k in range(len(unpacked) - 1, -1, -1):
        suffix[k] = suffix[k + 1] + sizes[k]
    best = ZERO

    def dfs(k: int, added: Fraction) -> None:
        nonlocal best
        if added > best:
            best = added
        if k == len(unpacked) or added + suffix[k] <= best:
            return
        v = unpacked[k]
        s = sizes[k]
        seen = set()
        for b in range(t):
            if loads[b] + s > 1 or (blocks[b] >> v) & 1:
                continue
            key = (loads[b], blocks[b])
            if key in seen:
                continue
            seen.add(key)
            old = blocks[b]
            loads[b] += s
            blocks[b] |= instance.adjacency[v]
            dfs(k + 1, added + s)
            loads[b] -= s
            blocks[b] = old
        dfs(k + 1, added)

    dfs(0, ZERO)
    return best
