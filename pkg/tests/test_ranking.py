import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperoracle.landmarks.ranking import (
    TiedRanking,
    all_tied_rankings,
    consensus_ranking,
    kemeny_score,
    kendall_tau_ties,
)

from _oracles import exhaustive_kemeny_optimum

ELEMS = ("a", "b", "c")
WEAK_ORDERS = all_tied_rankings(ELEMS)


def weak_orders(n):
    return st.lists(st.integers(0, n - 1), min_size=n, max_size=n).map(
        lambda pos: TiedRanking.from_positions(list(range(n)), pos)
    )


def test_thirteen_weak_orders():
    assert len(WEAK_ORDERS) == 13
    assert len(set(WEAK_ORDERS)) == 13


def test_kendall_examples():
    r1 = TiedRanking([["a"], ["b"], ["c"]])
    r2 = TiedRanking([["c"], ["b"], ["a"]])
    tie = TiedRanking([["a", "b", "c"]])
    assert kendall_tau_ties(r1, r1) == 0
    assert kendall_tau_ties(r1, r2) == 3
    assert kendall_tau_ties(r1, tie) == 1.5
    assert kendall_tau_ties(r1, tie, p=1.0) == 3
    with pytest.raises(ValueError):
        kendall_tau_ties(r1, TiedRanking([["a"], ["b"]]))


def test_ranking_helpers():
    r = TiedRanking.by_key(["x", "yy", "zz", "w"], key=len)
    assert r.buckets == (frozenset({"x", "w"}), frozenset({"yy", "zz"}))
    assert r.first() == frozenset({"x", "w"})
    assert r.without("x").buckets[0] == frozenset({"w"})
    with pytest.raises(ValueError):
        TiedRanking([["a"], ["a"]])


def test_consensus_trivial_cases():
    r = TiedRanking([["a"], ["b", "c"]])
    assert consensus_ranking([(r, 1.0)]) == r
    assert consensus_ranking([(r, 1.0), (r, 2.0), (r, 0.5)]) == r
    with pytest.raises(ValueError):
        consensus_ranking([])


@settings(max_examples=80, deadline=None)
@given(weak_orders(5), weak_orders(5), weak_orders(5))
def test_kendall_is_a_metric(a, b, c):
    assert kendall_tau_ties(a, b) == kendall_tau_ties(b, a) >= 0
    assert (kendall_tau_ties(a, b) == 0) == (a == b)
    assert kendall_tau_ties(a, c) <= kendall_tau_ties(a, b) + kendall_tau_ties(b, c) + 1e-9


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(weak_orders(6), st.floats(0.1, 3.0)), min_size=1, max_size=5))
def test_consensus_beats_every_input(Pi):
    best = consensus_ranking(Pi)
    score = kemeny_score(best, Pi)
    for r, _ in Pi:
        assert score <= kemeny_score(r, Pi) + 1e-9


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(WEAK_ORDERS), st.sampled_from([0.2, 0.6, 1.0, 2.5])),
                min_size=1, max_size=4))
def test_consensus_optimal_with_weights(Pi):
    opt = exhaustive_kemeny_optimum(ELEMS, [(r.positions(), w) for r, w in Pi])
    assert kemeny_score(consensus_ranking(Pi), Pi) == pytest.approx(opt)


def test_consensus_optimal_on_all_small_instances():
    instances = 0
    for k in range(1, 5):
        for combo in itertools.combinations_with_replacement(range(13), k):
            Pi = [(WEAK_ORDERS[i], 1.0) for i in combo]
            opt = exhaustive_kemeny_optimum(ELEMS, [(r.positions(), w) for r, w in Pi])
            assert kemeny_score(consensus_ranking(Pi), Pi) == pytest.approx(opt)
            instances += 1
    assert instances == 13 + 91 + 455 + 1820
