"""Landmark-based s-distance oracle: construction and queries."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from numbers import Integral

import numpy as np

from ..connectivity import SAdjacency, find_connected_components, s_adjacency
from ..hypercore import Hypergraph
from ..landmarks import AssignmentConfig, LandmarkSet, assign_landmarks
from ..linegraph import bfs_distances
from .avgdist import avg_dist_table

INF = math.inf

EXACT = "exact"
BOUNDED = "bounded"
SMALL = "small-component"
DISCONNECTED = "disconnected"
UNCOVERED = "uncovered"
STATUSES = (EXACT, BOUNDED, SMALL, DISCONNECTED, UNCOVERED)


@dataclass(frozen=True)
class DistanceEstimate:
    s: int
    lb: float
    ub: float
    estimate: float
    status: str

    @classmethod
    def exact(cls, s: int, d: float) -> "DistanceEstimate":
        return cls(s, d, d, d, EXACT)

    @classmethod
    def disconnected(cls, s: int) -> "DistanceEstimate":
        return cls(s, INF, INF, INF, DISCONNECTED)


@dataclass
class DistanceProfile:
    source: int
    target: int
    kind: str
    estimates: list[DistanceEstimate]

    def __getitem__(self, s: int) -> DistanceEstimate:
        return self.estimates[s - 1]

    def as_dict(self) -> dict[int, float]:
        return {d.s: d.estimate for d in self.estimates}


@dataclass
class Oracle:
    """Immutable after build.

    ``labels[s][e]`` maps landmark id -> exact s-distance, with landmarks in
    ascending id order.  ``comp_of[s]`` only covers hyperedges with
    ``|e| >= s``.
    """

    s_max: int
    d_min: int
    seed: int
    avgd: dict[int, float]
    comp_of: dict[int, dict[int, int]]
    comp_size: dict[int, list[int]]
    labels: dict[int, dict[int, dict[int, int]]]
    report: dict = field(default_factory=dict, compare=False)
    landmark_set: LandmarkSet | None = field(default=None, compare=False, repr=False)

    @property
    def n_edges(self) -> int:
        n = self.__dict__.get("_n_edges")
        if n is None:
            n = self.__dict__["_n_edges"] = len(self.comp_of.get(1, {}))
        return n

    def landmarks(self, s: int) -> list[int]:
        return sorted(e for e, lab in self.labels[s].items() if e in lab)

    def stored_triples(self) -> int:
        return sum(len(lab) for lvl in self.labels.values() for lab in lvl.values())

    def top_level(self, e: int) -> int:
        """Largest s <= s_max at which ``e`` is indexed, i.e. ``min(s_max, |e|)``."""
        s = self.s_max
        while s > 1 and e not in self.comp_of[s]:
            s -= 1
        return s

    def check_edge(self, e) -> None:
        if type(e) is int and 0 <= e < self.n_edges:
            return
        if isinstance(e, bool) or not isinstance(e, Integral) or not 0 <= e < self.n_edges:
            raise ValueError(f"invalid hyperedge id {e!r}")

    def check_s(self, s) -> None:
        if not 1 <= s <= self.s_max:
            raise ValueError(f"s={s} outside [1, {self.s_max}]")


def build_oracle(h: Hypergraph, cfg: AssignmentConfig, s_max: int) -> Oracle:
    """Components, small-component table, landmarks, then one BFS per landmark."""
    if s_max < 1:
        raise ValueError("s_max must be >= 1")
    t0 = time.perf_counter()
    cc, ledger = find_connected_components(h, s_max)
    t1 = time.perf_counter()
    avgd = avg_dist_table(cfg.d_min)
    adj_cache: dict[int, SAdjacency] = {}

    def adjacency(s: int) -> SAdjacency:
        adj = adj_cache.get(s)
        if adj is None:
            adj = adj_cache[s] = s_adjacency(h, ledger, s)
        return adj

    landmarks = assign_landmarks(cc, cfg, adjacency)
    t2 = time.perf_counter()
    labels: dict[int, dict[int, dict[int, int]]] = {}
    for s in range(1, s_max + 1):
        level: dict[int, dict[int, int]] = {}
        for l in sorted(landmarks.at(s)):
            for e, d in bfs_distances(adjacency(s), [l]).items():
                level.setdefault(e, {})[l] = d
        labels[s] = {e: level[e] for e in sorted(level)}
    t3 = time.perf_counter()
    comp_of = {s: dict(cc.levels[s].comp_of) for s in range(1, s_max + 1)}
    comp_size = {s: list(cc.levels[s].sizes) for s in range(1, s_max + 1)}
    report = {
        "components_seconds": t1 - t0,
        "assignment_seconds": t2 - t1,
        "population_seconds": t3 - t2,
        "off_seconds": t3 - t0,
        "budget": landmarks.budget,
        "stored_pairs_estimate": landmarks.stored_pairs(),
        "n_landmarks": len(landmarks),
        "warning": landmarks.warning,
    }
    return Oracle(s_max, cfg.d_min, cfg.seed, avgd, comp_of, comp_size, labels, report, landmarks)


def estimate_h2h(o: Oracle, e: int, f: int, s: int) -> DistanceEstimate:
    o.check_edge(e)
    o.check_edge(f)
    o.check_s(s)
    if e == f:
        return DistanceEstimate.exact(s, 0)
    comp_of = o.comp_of[s]
    ce = comp_of.get(e)
    if ce is None or ce != comp_of.get(f):
        return DistanceEstimate.disconnected(s)
    size = o.comp_size[s][ce]
    if size <= o.d_min:
        return DistanceEstimate(s, 1, size - 1, o.avgd[size], SMALL)
    level = o.labels[s]
    le = level.get(e)
    lf = level.get(f)
    if le is None or lf is None:
        return DistanceEstimate(s, 1, size - 1, 1, UNCOVERED)
    d = lf.get(e)
    if d is not None:
        return DistanceEstimate.exact(s, d)
    d = le.get(f)
    if d is not None:
        return DistanceEstimate.exact(s, d)
    if len(le) > len(lf):
        le, lf = lf, le
    lb, ub = 0, INF
    for l, d1 in le.items():
        d2 = lf.get(l)
        if d2 is not None:
            gap = d1 - d2 if d1 > d2 else d2 - d1
            if gap > lb:
                lb = gap
            if d1 + d2 < ub:
                ub = d1 + d2
    if ub == INF:
        return DistanceEstimate(s, 1, size - 1, 1, UNCOVERED)
    if lb == ub:
        return DistanceEstimate.exact(s, lb)
    return DistanceEstimate(s, lb, ub, (lb + ub) / 2, BOUNDED)


def _label_matrix(o: Oracle, s: int):
    """Dense ``(n_edges, n_landmarks)`` distance matrix for level s, inf where unlabeled."""
    cache = o.__dict__.setdefault("_matrices", {})
    hit = cache.get(s)
    if hit is None:
        lms = o.landmarks(s)
        col = {l: i for i, l in enumerate(lms)}
        mat = np.full((o.n_edges, len(lms)), INF)
        for e, lab in o.labels[s].items():
            for l, d in lab.items():
                mat[e, col[l]] = d
        hit = cache[s] = (col, mat)
    return hit


def estimate_from(o: Oracle, e: int, s: int, targets) -> np.ndarray:
    """Point estimates from ``e`` to many targets at once.

    Same piecewise rules as :func:`estimate_h2h`, vectorized over the
    landmark columns; meant for single-source workloads such as closeness.
    """
    o.check_edge(e)
    o.check_s(s)
    targets = np.asarray(targets, dtype=np.int64)
    out = np.full(len(targets), INF)
    comp_of = o.comp_of[s]
    ce = comp_of.get(e)
    if ce is None:
        out[targets == e] = 0.0
        return out
    same = np.array([comp_of.get(int(f)) == ce for f in targets], dtype=bool)
    size = o.comp_size[s][ce]
    if size == 1:
        pass
    elif size <= o.d_min:
        out[same] = o.avgd[size]
    else:
        col, mat = _label_matrix(o, s)
        idx = targets[same]
        de = mat[e]
        df = mat[idx]
        both = np.isfinite(df) & np.isfinite(de)
        has = both.any(axis=1)
        with np.errstate(invalid="ignore"):
            gap = np.where(both, np.abs(df - de), -INF).max(axis=1) if len(de) else np.zeros(len(idx))
            tot = np.where(both, df + de, INF).min(axis=1) if len(de) else np.full(len(idx), INF)
        est = np.where(gap == tot, gap, (gap + tot) / 2)
        est = np.where(has, est, 1.0)
        if e in col:
            direct = df[:, col[e]]
            est = np.where(np.isfinite(direct), direct, est)
        for i, f in enumerate(idx):
            c = col.get(int(f))
            if c is not None and np.isfinite(de[c]):
                est[i] = de[c]
        out[same] = est
    out[targets == e] = 0.0
    return out


def _refine(raw: list[DistanceEstimate]) -> list[DistanceEstimate]:
    """Tighten bounds across s using monotonicity of s-distances in s."""
    n = len(raw)
    lb = [r.lb for r in raw]
    ub = [r.ub for r in raw]
    for i in range(1, n):
        lb[i] = max(lb[i], lb[i - 1])
    for i in range(n - 2, -1, -1):
        ub[i] = min(ub[i], ub[i + 1])
    out = []
    for r, lo, hi in zip(raw, lb, ub):
        if r.status == DISCONNECTED:
            out.append(r)
        elif r.status == EXACT or lo == hi:
            if r.status == SMALL:
                out.append(DistanceEstimate(r.s, lo, hi, lo, SMALL))
            else:
                out.append(DistanceEstimate.exact(r.s, lo))
        elif r.status == BOUNDED:
            out.append(DistanceEstimate(r.s, lo, hi, (lo + hi) / 2, BOUNDED))
        elif r.status == SMALL:
            out.append(DistanceEstimate(r.s, lo, hi, min(max(r.estimate, lo), hi), SMALL))
        else:
            out.append(DistanceEstimate(r.s, lo, hi, min(max(lo, 1), hi), UNCOVERED))
    return out


def profile_h2h(o: Oracle, e: int, f: int) -> DistanceProfile:
    o.check_edge(e)
    o.check_edge(f)
    top = min(o.top_level(e), o.top_level(f))
    raw = [estimate_h2h(o, e, f, s) for s in range(1, top + 1)]
    return DistanceProfile(e, f, "hh", _refine(raw))


def _vertex_edges(h: Hypergraph, u: int) -> list[int]:
    h.check_vertex(u)
    return h.incidence[u]


def _combine(s: int, candidates: list[DistanceEstimate], offset: int) -> DistanceEstimate:
    """Min-combine hyperedge estimates into a vertex-level estimate."""
    best = None
    lb = ub = INF
    for c in candidates:
        lb = min(lb, c.lb + offset)
        ub = min(ub, c.ub + offset)
        if best is None or c.estimate < best.estimate:
            best = c
    if best is None or best.estimate == INF:
        return DistanceEstimate.disconnected(s)
    est = best.estimate + offset
    if lb == ub == est:
        return DistanceEstimate.exact(s, est)
    status = BOUNDED if best.status == EXACT else best.status
    return DistanceEstimate(s, lb, ub, est, status)


def estimate_v2v(o: Oracle, h: Hypergraph, u: int, v: int, s: int) -> DistanceEstimate:
    """Vertex-to-vertex estimate: 1 for co-members, else best hyperedge pair + 1."""
    eu, ev = _vertex_edges(h, u), _vertex_edges(h, v)
    o.check_s(s)
    if u == v:
        return DistanceEstimate.exact(s, 0)
    if not set(eu).isdisjoint(ev):
        return DistanceEstimate.exact(s, 1)
    eu = [e for e in eu if len(h.edges[e]) >= s]
    ev = [f for f in ev if len(h.edges[f]) >= s]
    return _combine(s, [estimate_h2h(o, e, f, s) for e in eu for f in ev], 1)


def estimate_v2e(o: Oracle, h: Hypergraph, u: int, f: int, s: int) -> DistanceEstimate:
    """Vertex-to-hyperedge estimate: 0 on membership, else nearest containing hyperedge."""
    eu = _vertex_edges(h, u)
    o.check_edge(f)
    o.check_s(s)
    if u in h.edge_sets[f]:
        return DistanceEstimate.exact(s, 0)
    eu = [e for e in eu if len(h.edges[e]) >= s]
    return _combine(s, [estimate_h2h(o, e, f, s) for e in eu], 0)


def profile_v2v(o: Oracle, h: Hypergraph, u: int, v: int) -> DistanceProfile:
    eu, ev = _vertex_edges(h, u), _vertex_edges(h, v)
    top = min(o.s_max, max(len(h.edges[e]) for e in eu), max(len(h.edges[f]) for f in ev))
    raw = [estimate_v2v(o, h, u, v, s) for s in range(1, top + 1)]
    return DistanceProfile(u, v, "vv", _refine(raw))
