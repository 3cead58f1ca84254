"""Budgeted independent-set solvers and shared knapsack machinery.

The budgeted problem: maximize w(S) over independent sets S with
w(S) <= budget. Two schemes are provided — an enumeration-plus-exact-MWIS
scheme for any class with exact weighted independent sets (bipartite,
split, chordal, cluster, complete multipartite, edgeless), and a faster
scheme for split graphs built on a knapsack FPTAS.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import CapabilityError, ParameterError
from .graphs import GraphClassInfo, restrict_class_info, _mwis_core
from .model import ZERO

DEFAULT_ENUM_CAP = 6
EXACT_DP_DENOM_LIMIT = 4096
EXACT_DP_CELL_LIMIT = 400_000


@dataclass(frozen=True)
class BisProblem:
    """Graph + weights + budget, with class certificates for dispatch."""

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    weights: Mapping[int, Fraction]
    budget: Fraction
    class_info: GraphClassInfo

    def __post_init__(self):
        for v in self.vertices:
            if self.weights[v] < ZERO:
                raise ParameterError(f"negative weight on vertex {v}")
        if self.budget < ZERO:
            raise ParameterError(f"negative budget {self.budget}")

    def adjacency(self) -> dict[int, int]:
        adj = {v: 0 for v in self.vertices}
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def weight_of(self, items: Iterable[int]) -> Fraction:
        return sum((self.weights[v] for v in items), ZERO)


def _check_eps(eps) -> Fraction:
    eps = Fraction(eps) if not isinstance(eps, Fraction) else eps
    if not (0 < eps < 1):
        raise ParameterError(f"eps must be in (0, 1), got {eps}")
    return eps


def knapsack_fptas(
    items: Iterable[int],
    profits: Mapping[int, Fraction],
    costs: Mapping[int, Fraction],
    budget: Fraction,
    eps,
) -> frozenset[int]:
    """Feasible set with profit >= (1 - eps) * optimum.

    When the costs share a small common denominator the exact dynamic
    program over integer costs runs instead (profit-optimal); otherwise a
    profit-scaling dynamic program gives the usual FPTAS guarantee.
    """
    eps = _check_eps(eps)
    ids = sorted(items)
    ids = [i for i in ids if costs[i] <= budget]
    if not ids or budget < ZERO:
        return frozenset()

    den = 1
    for i in ids:
        den = den * costs[i].denominator // math.gcd(den, costs[i].denominator)
        if den > EXACT_DP_DENOM_LIMIT:
            den = None
            break
    if den is not None:
        cap = int(budget * den) if budget * den == int(budget * den) else math.floor(budget * den)
        if (cap + 1) * len(ids) <= EXACT_DP_CELL_LIMIT:
            return _knapsack_exact(ids, profits, costs, den, cap)
    return _knapsack_scaled(ids, profits, costs, budget, eps)


def _knapsack_exact(ids, profits, costs, den, cap) -> frozenset[int]:
    # dp[c] = best profit at integer cost exactly <= c; parents rebuild the set.
    dp: list[Fraction] = [ZERO] * (cap + 1)
    take: list[int] = [0] * (cap + 1)
    for idx, i in enumerate(ids):
        c = int(costs[i] * den)
        p = profits[i]
        if p <= ZERO:
            continue
        for w in range(cap, c - 1, -1):
            cand = dp[w - c] + p
            if cand > dp[w]:
                dp[w] = cand
                take[w] = take[w - c] | (1 << idx)
    best_w = max(range(cap + 1), key=lambda w: (dp[w], -w))
    return frozenset(ids[k] for k in range(len(ids)) if (take[best_w] >> k) & 1)


def _knapsack_scaled(ids, profits, costs, budget, eps) -> frozenset[int]:
    positive = [i for i in ids if profits[i] > ZERO]
    if not positive:
        return frozenset()
    p_max = max(profits[i] for i in positive)
    scale = eps * p_max / len(positive)
    scaled = {i: int(profits[i] / scale) for i in positive}
    top = sum(scaled.values())
    # dp[p] = minimal cost achieving scaled profit exactly p.
    inf = budget + 1
    dp: list[Fraction] = [inf] * (top + 1)
    dp[0] = ZERO
    take: list[int] = [0] * (top + 1)
    for idx, i in enumerate(positive):
        sp = scaled[i]
        c = costs[i]
        for p in range(top, sp - 1, -1):
            cand = dp[p - sp] + c
            if cand < dp[p]:
                dp[p] = cand
                take[p] = take[p - sp] | (1 << idx)
    best_p = max((p for p in range(top + 1) if dp[p] <= budget), default=0)
    chosen = frozenset(positive[k] for k in range(len(positive)) if (take[best_p] >> k) & 1)
    return chosen


def _independent_subsets(order, adj, weights, budget, max_size):
    """DFS over independent vertex subsets with bounded size and weight.

    Yields (member list, weight); members ascend in ``order``. The empty
    set comes first.
    """
    current: list[int] = []

    def dfs(idx: int, banned: int, weight: Fraction):
        yield list(current), weight
        if len(current) >= max_size:
            return
        for j in range(idx, len(order)):
            v = order[j]
            if (banned >> v) & 1:
                continue
            w = weights[v]
            if weight + w > budget:
                continue
            current.append(v)
            yield from dfs(j + 1, banned | adj[v] | (1 << v), weight + w)
            current.pop()

    yield from dfs(0, 0, ZERO)


def bis_ptas(problem: BisProblem, eps, enum_cap: int = DEFAULT_ENUM_CAP) -> frozenset[int]:
    """Enumeration scheme: value >= (1 - eps) * optimum.

    Guesses every independent set F of at most ceil(1/eps) vertices within
    budget, extends it with an exact max-weight independent set over the
    light (weight <= eps * budget) vertices not adjacent to F, and evicts
    light vertices while over budget. Requires a class certificate with an
    exact weighted-independent-set algorithm.
    """
    eps = _check_eps(eps)
    cap = math.ceil(1 / eps)
    if cap > enum_cap:
        raise ParameterError(
            f"enumeration bound ceil(1/eps) = {cap} exceeds cap {enum_cap}; use a larger eps"
        )
    budget = problem.budget
    weights = problem.weights
    adj = problem.adjacency()
    eligible = [v for v in sorted(problem.vertices) if weights[v] <= budget]
    if not eligible:
        return frozenset()
    light_cut = eps * budget
    total_eligible = sum((weights[v] for v in eligible), ZERO)
    reachable = min(budget, total_eligible)

    best: frozenset[int] = frozenset()
    best_w = ZERO
    for members, w_f in _independent_subsets(eligible, adj, weights, budget, cap):
        f_mask = 0
        for v in members:
            f_mask |= 1 << v
        residual = [
            v
            for v in eligible
            if not (f_mask >> v) & 1 and weights[v] <= light_cut and not (adj[v] & f_mask)
        ]
        if residual:
            sub_mask = 0
            for v in residual:
                sub_mask |= 1 << v
            info = restrict_class_info(problem.class_info, residual)
            chosen = _mwis_core(residual, adj, sub_mask, info, weights)
        else:
            chosen = frozenset()
        picked = set(chosen)
        total = w_f + sum((weights[v] for v in picked), ZERO)
        while total > budget:
            z = min(picked, key=lambda v: (weights[v], v))
            picked.discard(z)
            total -= weights[z]
        if total > best_w:
            best = frozenset(members) | frozenset(picked)
            best_w = total
            if best_w >= reachable:
                break
    return best


def bis_fptas_split(problem: BisProblem, eps) -> frozenset[int]:
    """Split-graph scheme: value >= (1 - eps) * optimum.

    At most one clique vertex can be in any solution, so try each clique
    vertex (knapsack over the non-neighbors in the independent side with
    the residual budget) plus the no-clique-vertex case.
    """
    eps = _check_eps(eps)
    if not problem.class_info.is_split or problem.class_info.split_partition is None:
        raise CapabilityError("split certificate required for the split-graph scheme")
    clique, stable = problem.class_info.split_partition
    vset = frozenset(problem.vertices)
    clique = sorted(clique & vset)
    stable_set = stable & vset
    adj = problem.adjacency()
    weights = problem.weights
    budget = problem.budget

    best: frozenset[int] = frozenset()
    best_w = ZERO
    for v in clique:
        wv = weights[v]
        if wv > budget:
            continue
        pool = [u for u in sorted(stable_set) if not (adj[v] >> u) & 1]
        chosen = knapsack_fptas(pool, weights, weights, budget - wv, eps)
        total = wv + problem.weight_of(chosen)
        if total > best_w:
            best = frozenset({v}) | chosen
            best_w = total
    chosen = knapsack_fptas(sorted(stable_set), weights, weights, budget, eps)
    total = problem.weight_of(chosen)
    if total > best_w:
        best = chosen
        best_w = total
    return best
