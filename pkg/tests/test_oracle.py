import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperoracle import AssignmentConfig, ExactOracle, build_oracle, find_connected_components
from hyperoracle.hypercore import Hypergraph
from hyperoracle.oracle import (
    BOUNDED,
    DISCONNECTED,
    EXACT,
    SMALL,
    UNCOVERED,
    estimate_from,
    estimate_h2h,
    estimate_v2e,
    estimate_v2v,
    profile_h2h,
    profile_v2v,
)
from hyperoracle.oracle.core import DistanceEstimate, _refine
from hyperoracle.synthetic import powerlaw_hypergraph, random_hypergraph

from conftest import full_oracle

INF = math.inf
edge_lists = st.lists(
    st.sets(st.integers(0, 14), min_size=2, max_size=6).map(sorted), min_size=2, max_size=30
)


def test_toy_estimates(toy_full, toy):
    o = toy_full
    e = estimate_h2h(o, 1, 3, 2)
    assert e.status == SMALL and e.estimate == pytest.approx(1.166667, abs=1e-6)
    assert estimate_h2h(o, 0, 2, 2) == DistanceEstimate.disconnected(2)
    assert estimate_h2h(o, 2, 2, 3).estimate == 0
    vid = toy.vertex_id
    assert estimate_v2v(o, toy, vid("3"), vid("4"), 1).estimate == 1
    assert estimate_v2v(o, toy, vid("2"), vid("6"), 2).estimate == pytest.approx(2.166667, abs=1e-6)
    assert estimate_v2v(o, toy, vid("5"), vid("5"), 3).estimate == 0
    assert estimate_v2e(o, toy, vid("1"), 0, 2).estimate == 0
    assert estimate_v2e(o, toy, vid("1"), 3, 3).estimate == INF


def test_toy_full_budget_with_small_dmin(toy):
    o = full_oracle(toy, s_max=4, d_min=2)
    assert o.landmarks(2) == [1, 2, 3]
    truth = ExactOracle(toy)
    for s in range(1, 5):
        for e, lab in o.labels[s].items():
            for l, d in lab.items():
                assert truth.h2h(l, e, s) == d
    prof = profile_h2h(o, 1, 3)
    assert prof.as_dict() == {1: 1, 2: 2, 3: INF}
    assert all(p.status in (EXACT, DISCONNECTED) for p in prof.estimates)
    assert estimate_v2e(o, toy, toy.vertex_id("1"), 3, 1).estimate == 2


def test_zero_budget_and_single_edge(toy):
    o = build_oracle(toy, AssignmentConfig(budget_q=0, d_min=2), 3)
    assert o.stored_triples() == 0
    assert estimate_h2h(o, 0, 4, 1).status == UNCOVERED
    h1 = Hypergraph.from_edges([[1, 2]])
    o1 = build_oracle(h1, AssignmentConfig(), 3)
    assert estimate_h2h(o1, 0, 0, 1).estimate == 0


def test_argument_errors(toy_full):
    for args in ((0, 9, 1), (-1, 0, 1), (0, 1, 0), (0, 1, 99)):
        with pytest.raises(ValueError):
            estimate_h2h(toy_full, *args)


def test_refinement_is_idempotent_and_monotone():
    raw = [
        DistanceEstimate(1, 2, 6, 4, BOUNDED),
        DistanceEstimate(2, 1, 3, 2, BOUNDED),
        DistanceEstimate(3, 1, 9, 1, UNCOVERED),
        DistanceEstimate(4, INF, INF, INF, DISCONNECTED),
    ]
    once = _refine(raw)
    assert [r.lb for r in once] == [2, 2, 2, INF]
    assert [r.ub for r in once] == [3, 3, 9, INF]
    assert _refine(once) == once
    steady = [DistanceEstimate.exact(1, 1), DistanceEstimate(2, 1, 3, 2, BOUNDED)]
    assert _refine(steady) == steady


def check_sandwich(h, o, truth, s_max):
    n = h.n_edges
    for s in range(1, s_max + 1):
        for e in range(n):
            ests = estimate_from(o, e, s, list(range(n)))
            for f in range(n):
                est = estimate_h2h(o, e, f, s)
                t = truth.h2h(e, f, s)
                assert ests[f] == est.estimate
                if est.status in (BOUNDED, EXACT):
                    assert est.lb <= t <= est.ub
                if est.status == EXACT:
                    assert est.estimate == t
                if est.status == DISCONNECTED:
                    assert t == INF
                else:
                    assert t < INF


@settings(max_examples=30, deadline=None)
@given(edge_lists, st.integers(0, 200), st.sampled_from(["degree", "random", "farthest", "bestcover", "betweenness"]))
def test_sandwich_and_statuses(edges, q, selection):
    h = Hypergraph.from_edges(edges)
    o = build_oracle(h, AssignmentConfig(budget_q=q, d_min=2, selection=selection), 4)
    check_sandwich(h, o, ExactOracle(h), 4)


@settings(max_examples=20, deadline=None)
@given(edge_lists)
def test_full_budget_is_exact(edges):
    h = Hypergraph.from_edges(edges)
    o = full_oracle(h, s_max=4, d_min=2)
    truth = ExactOracle(h)
    for s in range(1, 5):
        for e in range(h.n_edges):
            for f in range(h.n_edges):
                est = estimate_h2h(o, e, f, s)
                if est.status in (BOUNDED, EXACT):
                    assert est.estimate == truth.h2h(e, f, s)
                assert est.status != UNCOVERED


@settings(max_examples=20, deadline=None)
@given(edge_lists, st.integers(0, 80))
def test_profiles_monotone(edges, q):
    h = Hypergraph.from_edges(edges)
    o = build_oracle(h, AssignmentConfig(budget_q=q, d_min=2), 5)
    for e in range(h.n_edges):
        for f in range(h.n_edges):
            prof = profile_h2h(o, e, f).estimates
            assert len(prof) == min(5, len(h.edges[e]), len(h.edges[f]))
            lbs = [p.lb for p in prof]
            ubs = [p.ub for p in prof]
            assert lbs == sorted(lbs) and ubs == sorted(ubs)
            for p in prof:
                assert p.lb <= p.estimate <= p.ub or p.status == SMALL


def test_vertex_estimates_bound_truth_with_full_budget():
    h = random_hypergraph(25, 30, seed=9)
    o = full_oracle(h, s_max=4, d_min=2)
    truth = ExactOracle(h)
    for s in (1, 2, 3):
        for u in range(h.n_vertices):
            for v in range(h.n_vertices):
                est = estimate_v2v(o, h, u, v, s)
                if est.status in (BOUNDED, EXACT):
                    assert est.estimate == truth.v2v(u, v, s)
            for f in range(h.n_edges):
                if len(h.edges[f]) >= s:
                    est = estimate_v2e(o, h, u, f, s)
                    if est.status in (BOUNDED, EXACT):
                        assert est.estimate == truth.v2e(u, f, s)
        prof = profile_v2v(o, h, 0, 1)
        assert [p.lb for p in prof.estimates] == sorted(p.lb for p in prof.estimates)


def test_budget_accounting():
    h = powerlaw_hypergraph(200, seed=1)
    cfg = AssignmentConfig(budget_l=5, seed=2)
    o = build_oracle(h, cfg, 6)
    r = o.report
    cc, _ = find_connected_components(h, 6)
    largest = max(max(lvl.sizes) for lvl in cc.levels.values())
    assert r["budget"] == 1000
    assert r["budget"] <= r["stored_pairs_estimate"] < r["budget"] + largest
    assert o.stored_triples() <= r["stored_pairs_estimate"]
    assert r["off_seconds"] >= r["components_seconds"] >= 0
