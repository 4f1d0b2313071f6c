"""s-connected components for every s up to ``s_max``.

``find_connected_components`` processes s in decreasing order, seeding each
stage's union-find forest with the components of stage s+1 and growing a
single inverted index as smaller hyperedges become eligible.  Along the way
it records which pairs it saw overlap (``OverlapLedger.op``) and which pairs
it skipped because they were already known to be co-component
(``OverlapLedger.cp``); ``s_adjacency`` turns the ledger into adjacency lists.

The two baselines recompute everything per s and exist as test oracles.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .hypercore import Hypergraph, pairwise_overlaps


class UnionFind:
    """Disjoint-set forest over ``0..n-1`` with union by rank and path compression."""

    __slots__ = ("parent", "rank")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; False if already merged.

        On equal ranks the root of ``a`` survives and its rank grows by one.
        """
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        rank = self.rank
        if rank[ra] < rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if rank[ra] == rank[rb]:
            rank[ra] += 1
        return True


@dataclass
class ComponentLevel:
    """Partition of ``E_s`` into s-connected components.

    ``comp_of`` only holds hyperedges with ``|e| >= s``.  Component ids are
    dense and numbered by their smallest member.
    """

    s: int
    comp_of: dict[int, int]
    sizes: list[int]
    n_vertices: list[int]
    members: list[tuple[int, ...]]

    @property
    def n_components(self) -> int:
        return len(self.sizes)

    def partition(self) -> frozenset:
        return frozenset(frozenset(m) for m in self.members)


@dataclass
class SComponents:
    s_max: int
    levels: dict[int, ComponentLevel]
    overlap_updates: int = 0

    def level(self, s: int) -> ComponentLevel:
        try:
            return self.levels[s]
        except KeyError:
            raise ValueError(f"s={s} outside [1, {self.s_max}]") from None

    def partition(self, s: int) -> frozenset:
        return self.level(s).partition()

    def component(self, e: int, s: int) -> int | None:
        return self.level(s).comp_of.get(e)

    def same_component(self, e: int, f: int, s: int) -> bool:
        comp_of = self.level(s).comp_of
        c = comp_of.get(e)
        return c is not None and c == comp_of.get(f)


@dataclass
class OverlapLedger:
    """Pairwise knowledge gathered while finding components.

    ``op[(e, f)]`` is a lower bound on ``|e ∩ f|`` (exact once resolved);
    ``cp`` holds pairs known to share a component whose overlap was never
    fully counted.  Keys are ordered pairs ``e < f``.
    """

    op: dict[tuple[int, int], int] = field(default_factory=dict)
    cp: set[tuple[int, int]] = field(default_factory=set)

    def resolve(self, h: Hypergraph, e: int, f: int) -> int:
        """Compute the true overlap of a CP pair once and cache it in ``op``."""
        key = (e, f) if e < f else (f, e)
        o = h.overlap(e, f)
        self.op[key] = o
        self.cp.discard(key)
        return o


class SAdjacency:
    """Sorted s-adjacency lists indexed by hyperedge id."""

    __slots__ = ("s", "neighbors")

    def __init__(self, s: int, neighbors: list[list[int]]):
        self.s = s
        self.neighbors = neighbors

    def __getitem__(self, e: int) -> list[int]:
        return self.neighbors[e]

    def __len__(self) -> int:
        return len(self.neighbors)

    def degree(self, e: int) -> int:
        return len(self.neighbors[e])

    def n_edges(self) -> int:
        return sum(len(n) for n in self.neighbors) // 2

    @classmethod
    def from_pairs(cls, s: int, n: int, pairs) -> "SAdjacency":
        neighbors: list[list[int]] = [[] for _ in range(n)]
        for e, f in pairs:
            neighbors[e].append(f)
            neighbors[f].append(e)
        for lst in neighbors:
            lst.sort()
        return cls(s, neighbors)


def _finalize(h: Hypergraph, uf: UnionFind, s: int) -> ComponentLevel:
    eligible = sorted(h.edges_at_least(s))
    dense: dict[int, int] = {}
    comp_of: dict[int, int] = {}
    members: list[list[int]] = []
    for e in eligible:
        root = uf.find(e)
        cid = dense.get(root)
        if cid is None:
            cid = dense[root] = len(members)
            members.append([])
        comp_of[e] = cid
        members[cid].append(e)
    n_vertices = []
    for mem in members:
        verts: set[int] = set()
        for e in mem:
            verts.update(h.edges[e])
        n_vertices.append(len(verts))
    return ComponentLevel(s, comp_of, [len(m) for m in members], n_vertices,
                          [tuple(m) for m in members])


def find_connected_components(h: Hypergraph, s_max: int) -> tuple[SComponents, OverlapLedger]:
    """Stage-wise s-connected components for ``s = s_max .. 1``."""
    if s_max < 1:
        raise ValueError("s_max must be >= 1")
    m = h.n_edges
    uf = UnionFind(m)
    find, union = uf.find, uf.union
    index: dict[int, list[int]] = {}
    indexed = [False] * m
    ledger = OverlapLedger()
    op, cp = ledger.op, ledger.cp
    levels = {}
    updates = 0
    for s in range(s_max, 0, -1):
        # uf still holds the level-(s+1) forest, which seeds this stage
        touched = set()
        for e in h.edges_at_least(s):
            if indexed[e]:
                continue
            indexed[e] = True
            for v in h.edges[e]:
                index.setdefault(v, []).append(e)
                touched.add(v)
        for v in touched:
            index[v].sort()
        ov: dict[tuple[int, int], int] = {}
        for v in sorted(index):
            plist = index[v]
            n = len(plist)
            for i in range(n - 1):
                e1 = plist[i]
                for j in range(i + 1, n):
                    e2 = plist[j]
                    if find(e1) != find(e2):
                        key = (e1, e2)
                        o = ov.get(key, 0) + 1
                        ov[key] = o
                        updates += 1
                        if o >= s:
                            if op.get(key, 0) < o:
                                op[key] = o
                            union(e1, e2)
                    else:
                        cp.add((e1, e2))
        levels[s] = _finalize(h, uf, s)
    return SComponents(s_max, levels, updates), ledger


def s_adjacency(h: Hypergraph, ledger: OverlapLedger, s: int) -> SAdjacency:
    """Level-s adjacency from the ledger; CP pairs are resolved lazily."""
    pairs = [key for key, o in ledger.op.items() if o >= s]
    seen = set(pairs)
    sizes = [len(e) for e in h.edges]
    for key in sorted(ledger.cp):
        if key in seen:
            continue
        e, f = key
        if sizes[e] < s or sizes[f] < s:
            continue
        if ledger.resolve(h, e, f) >= s:
            pairs.append(key)
    return SAdjacency.from_pairs(s, h.n_edges, pairs)


def adjacency_bruteforce(h: Hypergraph, s: int) -> SAdjacency:
    """Adjacency from the full pairwise overlap table (test oracle)."""
    pairs = [k for k, w in pairwise_overlaps(h).items() if w >= s]
    return SAdjacency.from_pairs(s, h.n_edges, pairs)


def baseline_cc_linegraph(h: Hypergraph, s_max: int) -> SComponents:
    """Build the weighted line graph once, then union-find per s."""
    weights = pairwise_overlaps(h)
    levels = {}
    for s in range(1, s_max + 1):
        uf = UnionFind(h.n_edges)
        for (e, f), w in weights.items():
            if w >= s:
                uf.union(e, f)
        levels[s] = _finalize(h, uf, s)
    return SComponents(s_max, levels, sum(weights.values()))


def baseline_cc_independent(h: Hypergraph, s_max: int) -> SComponents:
    """Fresh inverted index and overlap counts for every s."""
    levels = {}
    updates = 0
    for s in range(1, s_max + 1):
        index: dict[int, list[int]] = {}
        for e in sorted(h.edges_at_least(s)):
            for v in h.edges[e]:
                index.setdefault(v, []).append(e)
        counts: Counter = Counter()
        for plist in index.values():
            n = len(plist)
            for i in range(n - 1):
                for j in range(i + 1, n):
                    counts[(plist[i], plist[j])] += 1
                    updates += 1
        uf = UnionFind(h.n_edges)
        for (e, f), c in counts.items():
            if c >= s:
                uf.union(e, f)
        levels[s] = _finalize(h, uf, s)
    return SComponents(s_max, levels, updates)
