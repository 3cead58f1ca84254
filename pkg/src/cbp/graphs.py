"""Graph-class recognition, class-specific coloring, weighted independent
sets, and general maximum matching.

Every recognizer produces a verifiable certificate (bipartition, clique/
independent split, cluster components, multipartite parts, or a perfect
elimination ordering) and the certificate is re-checked before the flag is
set. All supported classes are hereditary, so certificates restrict to
induced subgraphs without re-verification (:func:`restrict_class_info`).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

import networkx as nx

from .errors import CapabilityError
from .model import ConflictInstance, ZERO, _mask_to_ids

Certificate = Optional[tuple]

# Disjoint vertex pairs, each an edge of the queried graph.
Matching = frozenset[tuple[int, int]]


@dataclass(frozen=True)
class GraphClassInfo:
    """Recognition flags plus the certificates backing them."""

    is_edgeless: bool = False
    is_bipartite: bool = False
    bipartition: Optional[tuple[frozenset[int], frozenset[int]]] = None
    is_split: bool = False
    split_partition: Optional[tuple[frozenset[int], frozenset[int]]] = None
    is_cluster: bool = False
    cluster_components: Optional[tuple[frozenset[int], ...]] = None
    is_complete_multipartite: bool = False
    parts: Optional[tuple[frozenset[int], ...]] = None
    is_chordal: bool = False
    elimination_order: Optional[tuple[int, ...]] = None

    def supported_classes(self) -> tuple[str, ...]:
        names = []
        if self.is_edgeless:
            names.append("edgeless")
        if self.is_bipartite:
            names.append("bipartite")
        if self.is_split:
            names.append("split")
        if self.is_cluster:
            names.append("cluster")
        if self.is_complete_multipartite:
            names.append("complete-multipartite")
        if self.is_chordal:
            names.append("chordal")
        return tuple(names)


SUPPORTED_CLASS_NAMES = (
    "edgeless",
    "bipartite",
    "split",
    "cluster",
    "complete-multipartite",
    "chordal",
)


def _components(vertices: Iterable[int], adj: Mapping[int, int]) -> list[frozenset[int]]:
    todo = set(vertices)
    comps = []
    while todo:
        start = min(todo)
        comp = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for u in _mask_to_ids(adj[v]):
                if u in todo and u not in comp:
                    comp.add(u)
                    frontier.append(u)
        todo -= comp
        comps.append(frozenset(comp))
    return sorted(comps, key=min)


def _try_bipartition(instance: ConflictInstance) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    color: dict[int, int] = {}
    for start in instance.items:
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for u in _mask_to_ids(instance.adjacency[v]):
                if u not in color:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    x = frozenset(i for i in instance.items if color[i] == 0)
    y = frozenset(i for i in instance.items if color[i] == 1)
    return x, y


def _is_clique(instance: ConflictInstance, items: Iterable[int]) -> bool:
    ids = sorted(items)
    inside = 0
    for i in ids:
        inside |= 1 << i
    for i in ids:
        missing = inside & ~(instance.adjacency[i] | (1 << i))
        if missing:
            return False
    return True


def _try_split(instance: ConflictInstance) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    # Degree-sequence characterization: with d_1 >= ... >= d_n and
    # m = max{i : d_i >= i-1}, the graph is split iff
    # sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i, and the m highest-degree
    # vertices then form a clique. The certificate is verified regardless.
    if not instance.items:
        return frozenset(), frozenset()
    order = sorted(instance.items, key=lambda v: (-instance.adjacency[v].bit_count(), v))
    degs = [instance.adjacency[v].bit_count() for v in order]
    m = 0
    for i, d in enumerate(degs, start=1):
        if d >= i - 1:
            m = i
    if sum(degs[:m]) != m * (m - 1) + sum(degs[m:]):
        return None
    clique = frozenset(order[:m])
    stable = frozenset(order[m:])
    if _is_clique(instance, clique) and instance.is_independent(stable):
        return clique, stable
    return None


def _try_cluster(instance: ConflictInstance) -> Optional[tuple[frozenset[int], ...]]:
    comps = _components(instance.items, instance.adjacency)
    for comp in comps:
        if not _is_clique(instance, comp):
            return None
    return tuple(comps)


def _try_complete_multipartite(instance: ConflictInstance) -> Optional[tuple[frozenset[int], ...]]:
    if not instance.items:
        return ()
    items_mask = 0
    for i in instance.items:
        items_mask |= 1 << i
    # Complement components; each must be independent in G and all cross
    # edges must be present.
    co_adj = {v: items_mask & ~(instance.adjacency[v] | (1 << v)) for v in instance.items}
    parts = _components(instance.items, co_adj)
    for part in parts:
        if not instance.is_independent(part):
            return None
    part_of = {}
    for k, part in enumerate(parts):
        for v in part:
            part_of[v] = k
    expected_edges = 0
    sizes = [len(p) for p in parts]
    total = sum(sizes)
    for s in sizes:
        expected_edges += s * (total - s)
    if expected_edges // 2 != len(instance.edges):
        return None
    return tuple(parts)


def _try_peo(instance: ConflictInstance) -> Optional[tuple[int, ...]]:
    # Maximum-cardinality search; the reverse visit order is a perfect
    # elimination ordering iff the graph is chordal. Verified by a direct
    # simpliciality check on every vertex.
    items = instance.items
    if not items:
        return ()
    weight = {v: 0 for v in items}
    visited: set[int] = set()
    heap = [(0, v) for v in items]
    heapq.heapify(heap)
    visit_order = []
    while heap:
        negw, v = heapq.heappop(heap)
        if v in visited or -negw != weight[v]:
            continue
        visited.add(v)
        visit_order.append(v)
        for u in _mask_to_ids(instance.adjacency[v]):
            if u not in visited:
                weight[u] += 1
                heapq.heappush(heap, (-weight[u], u))
    peo = tuple(reversed(visit_order))
    pos = {v: k for k, v in enumerate(peo)}
    for v in peo:
        later = [u for u in _mask_to_ids(instance.adjacency[v]) if pos[u] > pos[v]]
        if not _is_clique(instance, later):
            return None
    return peo


def recognize(instance: ConflictInstance) -> GraphClassInfo:
    """Compute all class flags with verified certificates.

    A declared class_hint on the instance is never trusted; only verified
    certificates drive algorithm dispatch.
    """
    bip = _try_bipartition(instance)
    split = _try_split(instance)
    cluster = _try_cluster(instance)
    parts = _try_complete_multipartite(instance)
    peo = _try_peo(instance)
    return GraphClassInfo(
        is_edgeless=not instance.edges,
        is_bipartite=bip is not None,
        bipartition=bip,
        is_split=split is not None,
        split_partition=split,
        is_cluster=cluster is not None,
        cluster_components=cluster,
        is_complete_multipartite=parts is not None,
        parts=parts,
        is_chordal=peo is not None,
        elimination_order=peo,
    )


def restrict_class_info(info: GraphClassInfo, kept: Iterable[int]) -> GraphClassInfo:
    """Certificates for the induced subgraph on ``kept``.

    All supported classes are hereditary: a restricted bipartition stays a
    bipartition, a restricted PEO stays a PEO, and so on, so no
    re-verification is needed.
    """
    k = frozenset(kept)
    bip = None
    if info.bipartition is not None:
        bip = (info.bipartition[0] & k, info.bipartition[1] & k)
    split = None
    if info.split_partition is not None:
        split = (info.split_partition[0] & k, info.split_partition[1] & k)
    cluster = None
    if info.cluster_components is not None:
        cluster = tuple(c & k for c in info.cluster_components if c & k)
    parts = None
    if info.parts is not None:
        parts = tuple(p & k for p in info.parts if p & k)
    peo = None
    if info.elimination_order is not None:
        peo = tuple(v for v in info.elimination_order if v in k)
    return GraphClassInfo(
        is_edgeless=info.is_edgeless,
        is_bipartite=info.is_bipartite,
        bipartition=bip,
        is_split=info.is_split,
        split_partition=split,
        is_cluster=info.is_cluster,
        cluster_components=cluster,
        is_complete_multipartite=info.is_complete_multipartite,
        parts=parts,
        is_chordal=info.is_chordal,
        elimination_order=peo,
    )


def minimum_coloring(instance: ConflictInstance, info: GraphClassInfo) -> tuple[frozenset[int], ...]:
    """Minimum coloring for a supported class, as a tuple of color classes.

    Dispatch order: edgeless (one class), bipartite (the two sides),
    chordal (greedy on the reverse perfect elimination ordering, which uses
    exactly clique-number many colors), complete multipartite (one class
    per part).
    """
    if not instance.items:
        return ()
    if info.is_edgeless:
        return (frozenset(instance.items),)
    if info.is_bipartite and info.bipartition is not None:
        x, y = info.bipartition
        return tuple(side for side in (x, y) if side)
    if info.is_chordal and info.elimination_order is not None:
        peo = info.elimination_order
        color: dict[int, int] = {}
        for v in reversed(peo):
            used = {color[u] for u in _mask_to_ids(instance.adjacency[v]) if u in color}
            c = 0
            while c in used:
                c += 1
            color[v] = c
        k = max(color.values()) + 1
        classes = [set() for _ in range(k)]
        for v, c in color.items():
            classes[c].add(v)
        return tuple(frozenset(c) for c in classes)
    if info.is_complete_multipartite and info.parts is not None:
        return info.parts
    raise CapabilityError(
        "minimum coloring needs a certificate for one of: "
        + ", ".join(SUPPORTED_CLASS_NAMES)
        + f"; recognized: {info.supported_classes() or ('none',)}"
    )


def _mwis_chordal(
    vertices: list[int],
    adj: Mapping[int, int],
    sub_mask: int,
    peo: tuple[int, ...],
    weights: Mapping[int, Fraction],
) -> frozenset[int]:
    # Residual-weight sweep along the elimination ordering, then a reverse
    # greedy pick of the marked vertices.
    residual = {v: weights[v] for v in vertices}
    pos = {v: k for k, v in enumerate(peo)}
    marked = []
    for v in peo:
        rv = residual[v]
        if rv <= ZERO:
            continue
        marked.append(v)
        for u in _mask_to_ids(adj[v] & sub_mask):
            if pos[u] > pos[v]:
                residual[u] -= rv
    chosen_mask = 0
    chosen = []
    for v in reversed(marked):
        if not (adj[v] & chosen_mask):
            chosen.append(v)
            chosen_mask |= 1 << v
    return frozenset(chosen)


def _mwis_bipartite(
    vertices: list[int],
    adj: Mapping[int, int],
    sub_mask: int,
    sides: tuple[frozenset[int], frozenset[int]],
    weights: Mapping[int, Fraction],
) -> frozenset[int]:
    # Min-weight vertex cover via max flow (source->X with capacity w,
    # Y->sink with capacity w, conflict edges unbounded); the independent
    # set is the complement of the cover.
    xs = sorted(v for v in vertices if v in sides[0] and weights[v] > ZERO)
    ys = sorted(v for v in vertices if v in sides[1] and weights[v] > ZERO)
    node = {"s": 0, "t": 1}
    for v in xs + ys:
        node[v] = len(node)
    graph: list[dict[int, Fraction]] = [dict() for _ in range(len(node))]
    inf = sum((weights[v] for v in xs + ys), ZERO) + 1

    def add_edge(a: int, b: int, cap: Fraction) -> None:
        graph[a][b] = graph[a].get(b, ZERO) + cap
        graph[b].setdefault(a, ZERO)

    for v in xs:
        add_edge(0, node[v], weights[v])
        for u in _mask_to_ids(adj[v] & sub_mask):
            if u in node and u in sides[1]:
                add_edge(node[v], node[u], inf)
    for v in ys:
        add_edge(node[v], 1, weights[v])

    # Dinic's algorithm with exact rational capacities.
    def bfs_levels() -> Optional[list[int]]:
        level = [-1] * len(graph)
        level[0] = 0
        queue = [0]
        for v in queue:
            for u, cap in graph[v].items():
                if cap > ZERO and level[u] < 0:
                    level[u] = level[v] + 1
                    queue.append(u)
        return level if level[1] >= 0 else None

    def dfs_push(v: int, limit: Fraction, level: list[int], it: list[list[int]]) -> Fraction:
        if v == 1:
            return limit
        while it[v]:
            u = it[v][-1]
            cap = graph[v].get(u, ZERO)
            if cap > ZERO and level[u] == level[v] + 1:
                pushed = dfs_push(u, min(limit, cap), level, it)
                if pushed > ZERO:
                    graph[v][u] -= pushed
                    graph[u][v] = graph[u].get(v, ZERO) + pushed
                    return pushed
            it[v].pop()
        return ZERO

    while True:
        level = bfs_levels()
        if level is None:
            break
        iters = [sorted(graph[v], reverse=True) for v in range(len(graph))]
        while True:
            pushed = dfs_push(0, inf, level, iters)
            if pushed <= ZERO:
                break

    reach = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u, cap in graph[v].items():
            if cap > ZERO and u not in reach:
                reach.add(u)
                stack.append(u)
    keep = [v for v in xs if node[v] in reach] + [v for v in ys if node[v] not in reach]
    return frozenset(keep)


def max_weight_independent_set(
    instance: ConflictInstance,
    info: GraphClassInfo,
    weights: Mapping[int, Fraction],
) -> frozenset[int]:
    """Maximum-weight independent set for a supported class.

    Ties between optima are broken by the fixed scan order of the class
    algorithm (deterministic, documented, not globally canonical).
    Zero-weight vertices are never included.
    """
    sub_mask = 0
    for v in instance.items:
        sub_mask |= 1 << v
    return _mwis_core(list(instance.items), instance.adjacency, sub_mask, info, weights)


def _mwis_core(
    vertices: list[int],
    adj: Mapping[int, int],
    sub_mask: int,
    info: GraphClassInfo,
    weights: Mapping[int, Fraction],
) -> frozenset[int]:
    if not vertices:
        return frozenset()
    vset = frozenset(vertices)
    no_edges = all((adj[v] & sub_mask) == 0 for v in vertices)
    if no_edges:
        return frozenset(v for v in vertices if weights[v] > ZERO)
    if info.is_chordal and info.elimination_order is not None:
        peo = tuple(v for v in info.elimination_order if v in vset)
        return _mwis_chordal(vertices, adj, sub_mask, peo, weights)
    if info.is_bipartite and info.bipartition is not None:
        return _mwis_bipartite(vertices, adj, sub_mask, info.bipartition, weights)
    if info.is_cluster and info.cluster_components is not None:
        chosen = []
        for comp in info.cluster_components:
            best = None
            for v in sorted(comp & vset):
                if weights[v] > ZERO and (best is None or weights[v] > weights[best]):
                    best = v
            if best is not None:
                chosen.append(best)
        return frozenset(chosen)
    if info.is_complete_multipartite and info.parts is not None:
        best: frozenset[int] = frozenset()
        best_w = ZERO
        for part in info.parts:
            cand = frozenset(v for v in part & vset if weights[v] > ZERO)
            w = sum((weights[v] for v in cand), ZERO)
            if w > best_w:
                best, best_w = cand, w
        return best
    raise CapabilityError(
        "max-weight independent set needs a certificate for one of: "
        + ", ".join(SUPPORTED_CLASS_NAMES)
    )


def maximum_matching_general(
    vertices: Iterable[int], edges: Iterable[tuple[int, int]]
) -> Matching:
    """Maximum-cardinality matching on an arbitrary graph.

    Backed by the blossom algorithm; returns disjoint edges as sorted
    pairs.
    """
    g = nx.Graph()
    g.add_nodes_from(sorted(vertices))
    g.add_edges_from(sorted((min(u, v), max(u, v)) for u, v in edges))
    mate = nx.max_weight_matching(g, maxcardinality=True)
    return frozenset((min(u, v), max(u, v)) for u, v in mate)
