import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperoracle import AssignmentConfig, build_oracle
from hyperoracle.hypercore import Hypergraph
from hyperoracle.oracle import OracleFormatError, dumps, estimate_h2h, load_oracle, loads, save_oracle

from conftest import full_oracle


def test_toy_round_trip(tmp_path, toy):
    o = full_oracle(toy, s_max=4, d_min=2)
    p1, p2 = tmp_path / "a.oracle", tmp_path / "b.oracle"
    save_oracle(o, p1)
    o2 = load_oracle(p1)
    save_oracle(o2, p2)
    assert p1.read_bytes() == p2.read_bytes()
    assert o2 == o
    assert o2.labels == o.labels


def test_toy_file_layout(toy):
    text = dumps(full_oracle(toy, s_max=2, d_min=2))
    lines = text.splitlines()
    assert lines[0] == "#HYPED-ORACLE v1"
    assert lines[1] == "meta smax=2 dmin=2 seed=0"
    assert lines[2] == "avgd 2 1.000000"
    assert "comp 2 1 1" in lines and "csize 2 1 3" in lines
    assert lines[-1] == "end"


@pytest.mark.parametrize("mutate,section", [
    (lambda t: "", "header"),
    (lambda t: t.replace("#HYPED-ORACLE v1", "#HYPED-ORACLE v2"), "header"),
    (lambda t: t.replace("\nend\n", "\n"), "label"),
    (lambda t: t[: t.index("\ncsize")] + "\n", "comp"),
    (lambda t: t.replace("meta smax=2", "meta smax=x"), "meta"),
    (lambda t: t.replace("avgd 2 1.000000\n", ""), "avgd"),
    (lambda t: t.replace("csize 2 1 3", "csize 2 1 4"), "csize"),
    (lambda t: t.replace("end\n", "end\nlabel 1 0 1:1\n"), "end"),
])
def test_corrupt_files_name_the_section(toy, mutate, section):
    text = dumps(full_oracle(toy, s_max=2, d_min=2))
    with pytest.raises(OracleFormatError) as exc:
        loads(mutate(text))
    assert exc.value.section == section


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sets(st.integers(0, 12), min_size=2, max_size=5).map(sorted), min_size=1, max_size=25),
       st.integers(0, 150), st.integers(0, 5))
def test_round_trip_preserves_answers(edges, q, seed):
    h = Hypergraph.from_edges(edges)
    o = build_oracle(h, AssignmentConfig(budget_q=q, d_min=2, seed=seed, selection="random"), 4)
    text = dumps(o)
    o2 = loads(text)
    assert dumps(o2) == text
    for s in range(1, 5):
        for e in range(h.n_edges):
            for f in range(h.n_edges):
                assert estimate_h2h(o, e, f, s) == estimate_h2h(o2, e, f, s)
