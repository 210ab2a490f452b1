import numpy as np
import pytest

from mbgraph import build_graph, oracle
from mbgraph.errors import NoSeparator, TooLarge


def test_enumerate_trails(diamond):
    assert oracle.enumerate_trails(diamond, "t", "w") == [("t", "u", "w"), ("t", "v", "w")]
    assert oracle.enumerate_trails(diamond, "t", "w", max_len=1) == []
    g = build_graph("undirected", "abc", [("a", "b")])
    assert oracle.enumerate_trails(g, "a", "c") == []
    assert oracle.enumerate_trails(g, "a", "b") == [("a", "b")]


def test_bruteforce_separation_examples(diamond):
    assert oracle.is_d_separated_bruteforce(diamond, {"t"}, {"w"}, {"u", "v"})
    assert not oracle.is_d_separated_bruteforce(diamond, {"t"}, {"w"}, {"u"})


def test_pruned_search_matches_trail_listing():
    # the pruned depth-first search against the plain definition
    from mbgraph.separation import is_active_trail
    for seed in range(120):
        g = oracle.random_graph(seed, 6, 0.45, seed % 2 == 0)
        rng = np.random.default_rng(seed)
        x, y = rng.choice(g.labels, size=2, replace=False)
        Z = {v for v in g.labels if v not in (x, y) and rng.random() < 0.4}
        plain = not any(is_active_trail(g, t, Z) for t in oracle.enumerate_trails(g, x, y))
        assert oracle.is_d_separated_bruteforce(g, {x}, {y}, Z) == plain


def test_all_minimal_separators(seven):
    seps = oracle.all_minimal_separators(seven, {"B"}, {"D"}, {"E"})
    assert {"u", "v"} in seps and {"t", "v"} in seps
    g = build_graph("undirected", "bd", [])
    assert oracle.all_minimal_separators(g, {"b"}, {"d"}) == [set()]
    g = build_graph("undirected", "bd", [("b", "d")])
    assert oracle.all_minimal_separators(g, {"b"}, {"d"}) == []


def test_bruteforce_blankets(diamond, seven):
    assert oracle.mb_in_set_bruteforce(diamond, {"t"}, {"t", "u", "w"}) == {"u", "w"}
    assert oracle.mb_in_set_bruteforce(diamond, {"t"}, set()) == set()
    assert oracle.directional_bruteforce(seven, {"B"}, {"D"}, {"E"}) == {"u", "v"}
    g = build_graph("directed", "bd", [])
    assert oracle.directional_bruteforce(g, {"b"}, {"d"}) == set()
    with pytest.raises(NoSeparator):
        oracle.directional_bruteforce(seven, {"B"}, {"u"})


def test_check_ci_product():
    g = build_graph("directed", "xy", [])
    joint = oracle.exact_joint(oracle.sample_model(g, 0))
    assert oracle.check_ci(joint, {"x"}, {"y"})


@pytest.mark.parametrize("seed", range(5))
def test_check_ci_v_structure(seed):
    g = build_graph("directed", "abc", [("a", "c"), ("b", "c")])
    joint = oracle.exact_joint(oracle.sample_model(g, seed))
    assert oracle.check_ci(joint, {"a"}, {"b"})
    assert not oracle.check_ci(joint, {"a"}, {"b"}, {"c"})


@pytest.mark.parametrize("seed", range(5))
def test_check_ci_diamond(diamond, seed):
    joint = oracle.exact_joint(oracle.sample_model(diamond, seed, max_domain=3))
    assert oracle.check_ci(joint, {"t"}, {"w"}, {"u", "v"})


def test_undirected_model_cliques():
    g = build_graph("undirected", "abcd", [("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")])
    m = oracle.sample_model(g, 1)
    assert sorted(f.scope for f in m.factors) == [(0, 1, 2), (2, 3)]
    joint = oracle.exact_joint(m)
    assert oracle.check_ci(joint, {"a", "b"}, {"d"}, {"c"})
    assert abs(joint.table.sum() - 1) <= 1e-12


def test_guards():
    labels = [f"x{i}" for i in range(13)]
    g = build_graph("directed", labels, [])
    with pytest.raises(TooLarge):
        oracle.is_d_separated_bruteforce(g, {"x0"}, {"x1"})
    with pytest.raises(TooLarge):
        oracle.enumerate_trails(g, "x0", "x1")
    g = build_graph("directed", labels[:11], [])
    model = oracle.DiscreteModel(g, [4] * 11, [oracle.Factor((v,), np.full(4, 0.25)) for v in range(11)])
    with pytest.raises(TooLarge):
        oracle.exact_joint(model)


def test_sampling_is_seeded(seven):
    a, b = oracle.sample_model(seven, 7), oracle.sample_model(seven, 7)
    assert all(np.array_equal(x.table, y.table) for x, y in zip(a.factors, b.factors))
