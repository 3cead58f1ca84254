"""Shared helpers: seeded instance factories and independent brute oracles.

The brute-force routines here are deliberately naive (exhaustive scans) so
they stay independent of the library paths they check.
"""

from fractions import Fraction

from cbp import BisProblem, ConflictInstance, recognize
from cbp.harness import GeneratorSpec, generate
from cbp.oracle import bis_brute


CLASSES = ("edgeless", "bipartite", "split", "cluster", "complete-multipartite", "chordal")


def seeded_instance(klass: str, n: int, seed: int, density: float = 0.4) -> ConflictInstance:
    return generate(GeneratorSpec(klass=klass, n=n, density=density, seed=seed))


def brute_chromatic(instance: ConflictInstance) -> int:
    """Exhaustive chromatic number (n <= ~10)."""
    items = list(instance.items)
    if not items:
        return 0
    if not instance.edges:
        return 1

    def colorable(k: int) -> bool:
        colors: dict[int, int] = {}

        def dfs(idx: int, used: int) -> bool:
            if idx == len(items):
                return True
            v = items[idx]
            for c in range(min(used + 1, k)):
                if all(colors.get(u) != c for u in instance.neighbors(v)):
                    colors[v] = c
                    if dfs(idx + 1, max(used, c + 1)):
                        return True
                    del colors[v]
            return False

        return dfs(0, 0)

    k = 2
    while not colorable(k):
        k += 1
    return k


def brute_matching_size(vertices, edges) -> int:
    """Exhaustive maximum matching cardinality."""
    edges = sorted((min(u, v), max(u, v)) for u, v in edges)

    def dfs(idx: int, used: frozenset, count: int) -> int:
        best = count
        for j in range(idx, len(edges)):
            u, v = edges[j]
            if u in used or v in used:
                continue
            best = max(best, dfs(j + 1, used | {u, v}, count + 1))
        return best

    return dfs(0, frozenset(), 0)


def brute_split_partition_exists(instance: ConflictInstance) -> bool:
    """Exhaustive split check: some vertex subset is a clique whose
    complement is independent (n <= ~10)."""
    items = list(instance.items)
    n = len(items)
    for mask in range(1 << n):
        clique = [items[k] for k in range(n) if (mask >> k) & 1]
        rest = [items[k] for k in range(n) if not (mask >> k) & 1]
        ok = all(instance.has_edge(u, v) for i, u in enumerate(clique) for v in clique[i + 1 :])
        if ok and instance.is_independent(rest):
            return True
    return False


def brute_mwis_value(instance: ConflictInstance, weights) -> Fraction:
    total = sum(weights.values(), Fraction(0)) + 1
    problem = BisProblem(
        vertices=tuple(instance.items),
        edges=instance.edges,
        weights=weights,
        budget=total,
        class_info=recognize(instance),
    )
    _, value = bis_brute(problem)
    return value


def brute_opt_bins(instance: ConflictInstance) -> int:
    """Exhaustive optimal bin count via canonical partition enumeration
    (n <= ~8). Independent of the branch-and-bound path."""
    items = sorted(instance.items)
    best = len(items) if items else 0

    def dfs(idx: int, bins: list[list[int]]):
        nonlocal best
        if len(bins) >= best:
            return
        if idx == len(items):
            best = min(best, len(bins))
            return
        v = items[idx]
        for b in bins:
            if instance.size_of(b) + instance.sizes[v] <= 1 and all(
                not instance.has_edge(v, u) for u in b
            ):
                b.append(v)
                dfs(idx + 1, bins)
                b.pop()
        bins.append([v])
        dfs(idx + 1, bins)
        bins.pop()

    if items:
        dfs(0, [])
    else:
        best = 0
    return best
