"""Line graphs and exact s-distances.

Everything here is ground truth: exact BFS distances that the landmark
oracle is measured against.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .connectivity import SAdjacency, adjacency_bruteforce
from .hypercore import Hypergraph, pairwise_overlaps

INF = math.inf
DEFAULT_EDGE_BUDGET = 10**8


class LineGraphTooLarge(RuntimeError):
    pass


@dataclass
class LineGraph:
    """Weighted graph on hyperedge ids; ``weights[(e, f)] = |e ∩ f|`` with e < f."""

    n_nodes: int
    weights: dict[tuple[int, int], int]

    @property
    def n_edges(self) -> int:
        return len(self.weights)

    def edge_list(self) -> list[tuple[int, int, int]]:
        return [(e, f, w) for (e, f), w in sorted(self.weights.items())]

    def adjacency(self, s: int = 1) -> SAdjacency:
        return SAdjacency.from_pairs(s, self.n_nodes, (k for k, w in self.weights.items() if w >= s))


@dataclass
class AugmentedLineGraph:
    """Line graph plus one node per vertex.

    Hyperedge ``e`` is node ``e``; vertex ``v`` is node ``n_edges + v``.
    ``membership`` lists ``(vertex, hyperedge)`` pairs.
    """

    line_graph: LineGraph
    n_vertices: int
    membership: list[tuple[int, int]]

    @property
    def n_nodes(self) -> int:
        return self.line_graph.n_nodes + self.n_vertices

    def node_kind(self, node: int) -> str:
        return "hyperedge" if node < self.line_graph.n_nodes else "vertex"


def build_line_graph(h: Hypergraph, max_edges: int = DEFAULT_EDGE_BUDGET) -> LineGraph:
    weights = pairwise_overlaps(h)
    if len(weights) > max_edges:
        raise LineGraphTooLarge(f"line graph has {len(weights)} edges, budget is {max_edges}")
    return LineGraph(h.n_edges, weights)


def s_line_graph(lg: LineGraph, s: int) -> LineGraph:
    return LineGraph(lg.n_nodes, {k: w for k, w in lg.weights.items() if w >= s})


def build_augmented_line_graph(h: Hypergraph, max_edges: int = DEFAULT_EDGE_BUDGET) -> AugmentedLineGraph:
    lg = build_line_graph(h, max_edges)
    membership = [(v, e) for e, verts in enumerate(h.edges) for v in verts]
    if lg.n_edges + len(membership) > max_edges:
        raise LineGraphTooLarge("augmented line graph exceeds the edge budget")
    return AugmentedLineGraph(lg, h.n_vertices, membership)


def bfs_distances(adj: SAdjacency, sources) -> dict[int, int]:
    """Unit-weight multi-source BFS; returns hop counts of reached nodes."""
    dist = {}
    queue = deque()
    for src in sources:
        if src not in dist:
            dist[src] = 0
            queue.append(src)
    neighbors = adj.neighbors
    while queue:
        x = queue.popleft()
        d = dist[x] + 1
        for y in neighbors[x]:
            if y not in dist:
                dist[y] = d
                queue.append(y)
    return dist


def bfs_tree(adj: SAdjacency, source: int) -> tuple[dict[int, int], dict[int, int]]:
    """BFS distances and parents; ties go to the lowest-id discoverer."""
    dist = {source: 0}
    parent = {source: source}
    queue = deque([source])
    neighbors = adj.neighbors
    while queue:
        x = queue.popleft()
        for y in neighbors[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                parent[y] = x
                queue.append(y)
    return dist, parent


def bidirectional_distance(adj: SAdjacency, e: int, f: int) -> float:
    """Hop distance between two nodes, expanding the smaller frontier."""
    if e == f:
        return 0
    neighbors = adj.neighbors
    dist_a, dist_b = {e: 0}, {f: 0}
    front_a, front_b = [e], [f]
    while front_a and front_b:
        if len(front_a) > len(front_b):
            front_a, front_b = front_b, front_a
            dist_a, dist_b = dist_b, dist_a
        best = INF
        nxt = []
        for x in front_a:
            dx = dist_a[x] + 1
            for y in neighbors[x]:
                if y in dist_b:
                    best = min(best, dx + dist_b[y])
                elif y not in dist_a:
                    dist_a[y] = dx
                    nxt.append(y)
        if best < INF:
            return best
        front_a = nxt
    return INF


def exact_s_distance(h: Hypergraph, adj: SAdjacency, e: int, f: int, s: int) -> float:
    """Length of the shortest s-path minus one (``inf`` if none)."""
    h.check_edge(e)
    h.check_edge(f)
    if adj.s != s:
        raise ValueError(f"adjacency is for s={adj.s}, query asks s={s}")
    if e == f:
        return 0
    if min(len(h.edges[e]), len(h.edges[f])) < s:
        return INF
    return bidirectional_distance(adj, e, f)


class ExactOracle:
    """Exact s-distances computed on demand from cached s-adjacency.

    Serves as ground truth for evaluation and as the ``--exact`` ranking mode.
    """

    def __init__(self, h: Hypergraph, adjacency: dict[int, SAdjacency] | None = None):
        self.h = h
        self._adj: dict[int, SAdjacency] = dict(adjacency or {})
        self._sssp: dict[tuple[int, int], dict[int, int]] = {}

    def adjacency(self, s: int) -> SAdjacency:
        adj = self._adj.get(s)
        if adj is None:
            adj = self._adj[s] = adjacency_bruteforce(self.h, s)
        return adj

    def single_source(self, e: int, s: int) -> dict[int, int]:
        key = (e, s)
        d = self._sssp.get(key)
        if d is None:
            if len(self.h.edges[e]) < s:
                d = {e: 0}
            else:
                d = bfs_distances(self.adjacency(s), [e])
            if len(self._sssp) > 4096:
                self._sssp.clear()
            self._sssp[key] = d
        return d

    def h2h(self, e: int, f: int, s: int) -> float:
        return exact_s_distance(self.h, self.adjacency(s), e, f, s)

    def v2v(self, u: int, v: int, s: int) -> float:
        h = self.h
        h.check_vertex(u)
        h.check_vertex(v)
        if u == v:
            return 0
        eu, ev = h.incidence[u], h.incidence[v]
        if set(eu) & set(ev):
            return 1
        best = INF
        for e in eu:
            if len(h.edges[e]) < s:
                continue
            dist = self.single_source(e, s)
            for f in ev:
                d = dist.get(f, INF)
                if d + 1 < best:
                    best = d + 1
        return best

    def v2e(self, u: int, f: int, s: int) -> float:
        h = self.h
        h.check_vertex(u)
        h.check_edge(f)
        if u in h.edge_sets[f]:
            return 0
        if len(h.edges[f]) < s:
            return INF
        dist = self.single_source(f, s)
        return min((dist.get(e, INF) for e in h.incidence[u]), default=INF)

    def profile(self, e: int, f: int) -> dict[int, float]:
        return exact_profile(self.h, e, f, self)


def exact_profile(h: Hypergraph, e: int, f: int, oracle: ExactOracle | None = None) -> dict[int, float]:
    """Exact s-distance for every ``s <= min(|e|, |f|)``."""
    h.check_edge(e)
    h.check_edge(f)
    oracle = oracle or ExactOracle(h)
    top = min(len(h.edges[e]), len(h.edges[f]))
    out = {}
    for s in range(1, top + 1):
        out[s] = oracle.h2h(e, f, s)
    return out
