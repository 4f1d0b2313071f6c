"""s-closeness centrality, exact and oracle-estimated.

The score is the mean s-distance from an entity to the other members of its
s-connected component, so smaller means more central.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..connectivity import SAdjacency, SComponents
from ..hypercore import Hypergraph
from ..linegraph import bfs_distances
from ..oracle import Oracle, estimate_from
from .metrics import ErrorRatios, mape_lar


class UndefinedCentrality(ValueError):
    """Raised for entities whose component has a single member."""


def s_closeness(h: Hypergraph, adj: SAdjacency, cc: SComponents, e: int, s: int,
                oracle: Oracle | None = None) -> float:
    h.check_edge(e)
    lvl = cc.level(s)
    c = lvl.comp_of.get(e)
    if c is None or lvl.sizes[c] < 2:
        raise UndefinedCentrality(f"hyperedge {e} has no s-component partner at s={s}")
    members = lvl.members[c]
    if oracle is None:
        dist = bfs_distances(adj, [e])
        total = sum(dist[f] for f in members)
    else:
        total = float(estimate_from(oracle, e, s, members).sum())
    return total / (len(members) - 1)


def vertex_s_closeness(h: Hypergraph, adj: SAdjacency, cc: SComponents, v: int, s: int,
                       oracle: Oracle | None = None, cache: dict | None = None) -> float:
    """Max closeness over the hyperedges containing ``v``; singletons are skipped."""
    h.check_vertex(v)
    best = None
    for e in h.incidence[v]:
        key = (e, s, oracle is None)
        if cache is not None and key in cache:
            val = cache[key]
        else:
            try:
                val = s_closeness(h, adj, cc, e, s, oracle)
            except UndefinedCentrality:
                val = None
            if cache is not None:
                cache[key] = val
        if val is not None and (best is None or val > best):
            best = val
    if best is None:
        raise UndefinedCentrality(f"vertex {v} has no s-component partner at s={s}")
    return best


@dataclass
class CentralityRow:
    kind: str
    id: int
    s: int
    exact: float
    estimate: float


@dataclass
class CentralityReport:
    rows: list[CentralityRow] = field(default_factory=list)
    hyperedge: ErrorRatios | None = None
    vertex: ErrorRatios | None = None


def _stats(rows: list[CentralityRow], kind: str) -> ErrorRatios:
    sel = [r for r in rows if r.kind == kind]
    return mape_lar([r.estimate for r in sel], [r.exact for r in sel])


def centrality_report(h: Hypergraph, o: Oracle, cc: SComponents, adjacency, s_values,
                      max_entities: int | None = None, seed: int = 0,
                      kinds=("hyperedge", "vertex")) -> CentralityReport:
    """Exact vs estimated closeness for hyperedges and vertices at each s.

    ``adjacency`` maps s to its ``SAdjacency``.  With ``max_entities`` set,
    a seeded sample of that many defined entities per kind and s is scored.
    """
    rng = random.Random(seed)
    rows = []
    for s in s_values:
        adj = adjacency(s)
        lvl = cc.level(s)
        cache: dict = {}
        if "hyperedge" in kinds:
            ids = sorted(e for e, c in lvl.comp_of.items() if lvl.sizes[c] >= 2)
            if max_entities is not None and len(ids) > max_entities:
                ids = sorted(rng.sample(ids, max_entities))
            for e in ids:
                ex = s_closeness(h, adj, cc, e, s)
                est = s_closeness(h, adj, cc, e, s, o)
                cache[(e, s, True)], cache[(e, s, False)] = ex, est
                rows.append(CentralityRow("hyperedge", e, s, ex, est))
        if "vertex" in kinds:
            ids = sorted(
                v for v in range(h.n_vertices)
                if any(lvl.sizes[lvl.comp_of[e]] >= 2 for e in h.incidence[v] if e in lvl.comp_of)
            )
            if max_entities is not None and len(ids) > max_entities:
                ids = sorted(rng.sample(ids, max_entities))
            for v in ids:
                ex = vertex_s_closeness(h, adj, cc, v, s, cache=cache)
                est = vertex_s_closeness(h, adj, cc, v, s, o, cache=cache)
                rows.append(CentralityRow("vertex", v, s, ex, est))
    return CentralityReport(rows, _stats(rows, "hyperedge"), _stats(rows, "vertex"))
