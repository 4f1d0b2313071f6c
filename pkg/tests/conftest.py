import pytest

from hyperoracle import AssignmentConfig, build_oracle, find_connected_components
from hyperoracle.synthetic import random_hypergraph, toy_hypergraph

from _oracles import full_budget


@pytest.fixture
def toy():
    return toy_hypergraph()


@pytest.fixture
def toy_path(tmp_path):
    p = tmp_path / "toy.tsv"
    p.write_text("1 2\n2 3 4\n3 4 5\n4 5 6 7\n7 8\n")
    return p


def full_oracle(h, s_max=8, d_min=4, selection="degree", seed=0):
    cc, _ = find_connected_components(h, s_max)
    cfg = AssignmentConfig(budget_q=full_budget(cc, d_min), d_min=d_min, selection=selection, seed=seed)
    return build_oracle(h, cfg, s_max)


@pytest.fixture
def toy_full(toy):
    return full_oracle(toy, s_max=4, d_min=4)


@pytest.fixture
def small_random():
    return random_hypergraph(40, 60, seed=3)
