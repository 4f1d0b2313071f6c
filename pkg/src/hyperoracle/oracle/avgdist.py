"""Expected average pairwise distance inside small components.

Every connected unlabeled simple graph ("topology") on ``i`` nodes is
enumerated; the value for size ``i`` is the plain mean of the per-topology
average pairwise distances.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from itertools import combinations, permutations

MAX_SIZE = 5


class UnsupportedSizeError(ValueError):
    pass


def _mean_distance(n: int, edges: frozenset) -> float | None:
    """Mean shortest-path distance over node pairs, None if disconnected."""
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    total = 0
    for src in range(n):
        dist = {src: 0}
        frontier = [src]
        while frontier:
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        nxt.append(y)
            frontier = nxt
        if len(dist) < n:
            return None
        total += sum(dist.values())
    return total / (n * (n - 1))


@lru_cache(maxsize=None)
def topologies(n: int) -> tuple[tuple[int, float], ...]:
    """``(n_edges, mean_distance)`` for each connected unlabeled graph on n nodes."""
    if n < 2:
        return ()
    slots = list(combinations(range(n), 2))
    perms = list(permutations(range(n)))
    seen = set()
    out = []
    for mask in range(1 << len(slots)):
        edges = [slots[k] for k in range(len(slots)) if mask >> k & 1]
        canon = min(
            tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in edges))
            for p in perms
        )
        if canon in seen:
            continue
        seen.add(canon)
        mean = _mean_distance(n, frozenset(canon))
        if mean is not None:
            out.append((len(canon), mean))
    return tuple(sorted(out))


def approx_avg_dist(i: int) -> float:
    if not 2 <= i <= MAX_SIZE:
        raise UnsupportedSizeError(f"average distance is only tabulated for sizes 2..{MAX_SIZE}, got {i}")
    topo = topologies(i)
    return sum(m for _, m in topo) / len(topo)


def topology_table(max_n: int = MAX_SIZE) -> dict[tuple[int, int], float]:
    """Mean distance per (nodes, edges) class, for n in ``[2, max_n]``."""
    table = {}
    for n in range(2, max_n + 1):
        groups = defaultdict(list)
        for m, mean in topologies(n):
            groups[m].append(mean)
        for m, vals in groups.items():
            table[(n, m)] = sum(vals) / len(vals)
    return table


def avg_dist_table(d_min: int) -> dict[int, float]:
    """Table stored in the oracle, rounded to the 6 decimals it is saved with."""
    return {i: round(approx_avg_dist(i), 6) for i in range(2, d_min + 1)}
