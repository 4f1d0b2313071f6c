import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperoracle.connectivity import SAdjacency, find_connected_components, s_adjacency
from hyperoracle.landmarks import (
    AssignmentConfig,
    ComponentRef,
    ComponentSaturated,
    assign_landmarks,
    eligible_components,
    sampling_weights,
    select_landmark,
)
from hyperoracle.landmarks.config import SELECTIONS
from hyperoracle.synthetic import powerlaw_hypergraph, random_hypergraph


def adjacency_fn(h, ledger):
    cache = {}

    def get(s):
        if s not in cache:
            cache[s] = s_adjacency(h, ledger, s)
        return cache[s]

    return get


def path_component(n=3):
    adj = SAdjacency.from_pairs(1, n, [(i, i + 1) for i in range(n - 1)])
    return ComponentRef(1, 0, n, n + 1, tuple(range(n))), adj


def test_config_validation():
    assert AssignmentConfig().budget(10) == 300
    assert AssignmentConfig(budget_l=2.5).budget(3) == 8
    assert AssignmentConfig(budget_q=7).budget(1000) == 7
    for bad in (dict(d_min=6), dict(d_min=1), dict(alpha=0.7, beta=0.5), dict(budget_q=1, budget_l=1),
                dict(selection="nope"), dict(strategy="nope"), dict(pair_sample_fraction=0)):
        with pytest.raises(ValueError):
            AssignmentConfig(**bad)
    AssignmentConfig(alpha=0.7, beta=0.5, strategy="rankagg")


def test_degree_selection_on_toy(toy):
    cc, ledger = find_connected_components(toy, 2)
    comp = next(c for c in eligible_components(cc, 2) if c.s == 1)
    adj = s_adjacency(toy, ledger, 1)
    # e2 and e4 both have s-degree 3; the lower id wins
    assert select_landmark(comp, set(), adj, "degree", random.Random(0)) == 1
    assert select_landmark(comp, {1}, adj, "degree", random.Random(0)) == 3


def test_farthest_on_path():
    comp, adj = path_component(3)
    assert select_landmark(comp, {0}, adj, "farthest", random.Random(0)) == 2
    with pytest.raises(ComponentSaturated):
        select_landmark(comp, {0, 1, 2}, adj, "degree", random.Random(0))


def test_random_selection_is_seeded():
    comp, adj = path_component(9)
    picks = [select_landmark(comp, set(), adj, "random", random.Random(4)) for _ in range(3)]
    assert len(set(picks)) == 1


def test_path_based_selection_prefers_centre():
    comp, adj = path_component(7)
    for sel in ("bestcover", "betweenness"):
        got = select_landmark(comp, set(), adj, sel, random.Random(1), pair_fraction=1.0)
        assert got == 3
    cache = {}
    first = select_landmark(comp, set(), adj, "bestcover", random.Random(1), 1.0, cache)
    second = select_landmark(comp, {first}, adj, "bestcover", random.Random(1), 1.0, cache)
    assert second != first


def test_sampling_weights_sum_to_one_over_all_components():
    h = random_hypergraph(50, 80, seed=2)
    cc, _ = find_connected_components(h, 5)
    from hyperoracle.landmarks.assignment import component_refs
    w = sampling_weights(cc, component_refs(cc), 0.2, 0.6)
    assert sum(w) == pytest.approx(1.0)


def test_no_eligible_component_warns(toy):
    cc, ledger = find_connected_components(toy, 3)
    out = assign_landmarks(cc, AssignmentConfig(budget_q=100, d_min=5), adjacency_fn(toy, ledger))
    assert len(out) == 0 and out.warning


@pytest.mark.parametrize("strategy", ["sampling", "rankagg"])
@pytest.mark.parametrize("selection", SELECTIONS)
def test_budget_and_saturation(strategy, selection):
    h = powerlaw_hypergraph(120, seed=4)
    cc, ledger = find_connected_components(h, 5)
    adj = adjacency_fn(h, ledger)
    max_size = max(c.size for c in eligible_components(cc, 3))
    for q in (0, 50, 400, 10**6):
        cfg = AssignmentConfig(budget_q=q, d_min=3, strategy=strategy, selection=selection, seed=1)
        out = assign_landmarks(cc, cfg, adj)
        stored = out.stored_pairs()
        saturated_all = all(
            len([l for l, c in out.by_level.get(comp.s, []) if c == comp.comp_id]) == comp.size
            for comp in eligible_components(cc, 3)
        )
        assert stored >= q or saturated_all
        assert stored < q + max_size or q == 0 and stored == 0
        for s, lms in out.by_level.items():
            ids = [l for l, _ in lms]
            assert len(ids) == len(set(ids))
            lvl = cc.level(s)
            for l, c in lms:
                assert lvl.comp_of[l] == c and lvl.sizes[c] > 3
        again = assign_landmarks(cc, cfg, adj)
        assert again.by_level == out.by_level


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(SELECTIONS))
def test_degree_tie_break_and_membership(seed, selection):
    h = random_hypergraph(30, 40, seed=seed % 1000)
    cc, ledger = find_connected_components(h, 3)
    adj = adjacency_fn(h, ledger)
    rng = random.Random(seed)
    for comp in eligible_components(cc, 2):
        already = set()
        for _ in range(comp.size):
            lm = select_landmark(comp, already, adj(comp.s), selection, rng, 0.4, {})
            assert lm in comp.members and lm not in already
            already.add(lm)
        assert already == set(comp.members)
