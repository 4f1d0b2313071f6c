"""Distribute the landmark budget over s-connected components.

Both strategies keep an estimated oracle size ``q_est`` that grows by
``|c|`` per landmark placed in component ``c`` (one stored distance per
member) and stop once it reaches the budget or every eligible component is
saturated.  Only components with more than ``d_min`` hyperedges take part.
"""

from __future__ import annotations

import bisect
import logging
import random
from dataclasses import dataclass, field
from itertools import accumulate
from typing import Callable

import numpy as np

from ..connectivity import SAdjacency, SComponents
from .config import AssignmentConfig, ComponentRef
from .ranking import dense_ranks, consensus_positions, pairwise_costs
from .selection import select_landmark

log = logging.getLogger(__name__)

AdjacencyFn = Callable[[int], SAdjacency]


@dataclass
class LandmarkSet:
    """Landmarks per level as ``(hyperedge, component)`` in selection order."""

    by_level: dict[int, list[tuple[int, int]]] = field(default_factory=dict)
    component_sizes: dict[tuple[int, int], int] = field(default_factory=dict)
    budget: int = 0
    warning: str | None = None

    def add(self, comp: ComponentRef, landmark: int) -> None:
        self.by_level.setdefault(comp.s, []).append((landmark, comp.comp_id))
        self.component_sizes[comp.key] = comp.size

    def at(self, s: int) -> list[int]:
        return [l for l, _ in self.by_level.get(s, [])]

    def stored_pairs(self) -> int:
        return sum(self.component_sizes[(s, c)] for s, lst in self.by_level.items() for _, c in lst)

    def __len__(self) -> int:
        return sum(len(v) for v in self.by_level.values())


def component_refs(cc: SComponents) -> list[ComponentRef]:
    refs = []
    for s in sorted(cc.levels):
        lvl = cc.levels[s]
        for cid in range(lvl.n_components):
            refs.append(ComponentRef(s, cid, lvl.sizes[cid], lvl.n_vertices[cid], lvl.members[cid]))
    return refs


def eligible_components(cc: SComponents, d_min: int) -> list[ComponentRef]:
    return [c for c in component_refs(cc) if c.size > d_min]


def _n_edges(cc: SComponents) -> int:
    return len(cc.level(1).comp_of)


class _Selector:
    def __init__(self, cfg: AssignmentConfig, adjacency: AdjacencyFn, rng: random.Random):
        self.cfg = cfg
        self.adjacency = adjacency
        self.rng = rng
        self.chosen: dict[tuple[int, int], set[int]] = {}
        self.cache: dict = {}

    def __call__(self, comp: ComponentRef) -> int:
        already = self.chosen.setdefault(comp.key, set())
        lm = select_landmark(comp, already, self.adjacency(comp.s), self.cfg.selection,
                             self.rng, self.cfg.pair_sample_fraction, self.cache)
        already.add(lm)
        return lm


def _no_eligible(out: LandmarkSet, cfg: AssignmentConfig) -> LandmarkSet:
    out.warning = f"no s-connected component has more than d_min={cfg.d_min} hyperedges"
    log.warning(out.warning)
    return out


def sampling_weights(cc: SComponents, comps: list[ComponentRef], alpha: float, beta: float) -> list[float]:
    """Unnormalised sampling probabilities; normalisers run over all components."""
    zeta = sum(sum(lvl.sizes) for lvl in cc.levels.values())
    xi = sum(sum(lvl.n_vertices) for lvl in cc.levels.values())
    eta = sum(s * lvl.n_components for s, lvl in cc.levels.items())
    gamma = 1.0 - alpha - beta
    return [alpha * c.size / zeta + beta * c.s / eta + gamma * c.n_vertices / xi for c in comps]


def assign_sampling(cc: SComponents, cfg: AssignmentConfig, adjacency: AdjacencyFn) -> LandmarkSet:
    budget = cfg.budget(_n_edges(cc))
    out = LandmarkSet(budget=budget)
    active = eligible_components(cc, cfg.d_min)
    if not active:
        return _no_eligible(out, cfg)
    rng = random.Random(cfg.seed)
    select = _Selector(cfg, adjacency, rng)
    weights = sampling_weights(cc, active, cfg.alpha, cfg.beta)
    cum = list(accumulate(weights))
    q_est = 0
    while q_est < budget and active:
        i = bisect.bisect_right(cum, rng.random() * cum[-1])
        i = min(i, len(active) - 1)
        comp = active[i]
        out.add(comp, select(comp))
        comp.assigned += 1
        q_est += comp.size
        if comp.saturated:
            # saturated components leave the urn; the rest renormalise implicitly
            del active[i]
            del weights[i]
            cum = list(accumulate(weights))
    return out


def assign_rankagg(cc: SComponents, cfg: AssignmentConfig, adjacency: AdjacencyFn) -> LandmarkSet:
    budget = cfg.budget(_n_edges(cc))
    out = LandmarkSet(budget=budget)
    comps = eligible_components(cc, cfg.d_min)
    if not comps:
        return _no_eligible(out, cfg)
    rng = random.Random(cfg.seed)
    select = _Selector(cfg, adjacency, rng)
    n = len(comps)
    # static rankings: larger size, more vertices, higher s come first
    static = [
        (dense_ranks(np.array([-c.size for c in comps])), cfg.alpha),
        (dense_ranks(np.array([-c.n_vertices for c in comps])), cfg.alpha),
        (dense_ranks(np.array([-c.s for c in comps])), cfg.beta),
    ]
    before0 = np.zeros((n, n))
    tied0 = np.zeros((n, n))
    for pos, w in static:
        b, t = pairwise_costs(pos, w)
        before0 += b
        tied0 += t
    assigned = np.zeros(n, dtype=np.int64)
    active = np.arange(n)
    q_est = 0
    while q_est < budget and len(active):
        pos4 = dense_ranks(assigned[active])
        b4, t4 = pairwise_costs(pos4, 1.0)
        sub = np.ix_(active, active)
        before = before0[sub] + b4
        tied = tied0[sub] + t4
        starts = [dense_ranks(pos[active]) for pos, _ in static] + [pos4]
        q, _ = consensus_positions(starts, before, tied)
        head = sorted(int(i) for i in active[q == 0])
        i = rng.choice(head)
        comp = comps[i]
        out.add(comp, select(comp))
        comp.assigned += 1
        assigned[i] += 1
        q_est += comp.size
        if comp.saturated:
            active = active[active != i]
    return out


def assign_landmarks(cc: SComponents, cfg: AssignmentConfig, adjacency: AdjacencyFn) -> LandmarkSet:
    if cfg.strategy == "sampling":
        return assign_sampling(cc, cfg, adjacency)
    if cfg.strategy == "rankagg":
        return assign_rankagg(cc, cfg, adjacency)
    raise ValueError(f"unknown assignment strategy {cfg.strategy!r}")
