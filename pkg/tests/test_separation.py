import time

import pytest
from hypothesis import given, settings, strategies as st

from mbgraph import build_graph, is_active_trail, is_d_separated, is_separated, oracle, reachable, separated
from mbgraph.errors import KindMismatch, NotATrail, UnknownVertex


def test_seven_reachability(seven, backend):
    assert "D" not in reachable(seven, {"B"}, {"u", "v", "E"})
    assert reachable(seven, {"B"}, {"E"}) >= {"D", "s", "t", "u", "v"}


def test_isolated_source(backend):
    g = build_graph("directed", "ab", [])
    assert reachable(g, {"b"}, set()) <= {"b"}
    assert "a" not in reachable(g, {"b"}, set())


def test_diamond_separation(diamond, backend):
    assert is_d_separated(diamond, {"t"}, {"w"}, {"u", "v"})
    assert not is_d_separated(diamond, {"t"}, {"w"}, {"u"})
    assert not is_d_separated(diamond, {"u"}, {"v"}, {"w"})  # collider opened
    assert is_d_separated(diamond, {"u"}, {"v"}, {"t"})


def test_components(backend):
    g = build_graph("undirected", "abcd", [("a", "b"), ("c", "d")])
    assert is_separated(g, {"a"}, {"d"})
    assert not is_separated(g, {"a"}, {"b"})


def test_overlap_semantics(diamond, backend):
    assert not is_d_separated(diamond, {"t", "u"}, {"u"}, set())
    assert is_d_separated(diamond, {"t", "u"}, {"u"}, {"u"}) == is_d_separated(diamond, {"t"}, set(), {"u"})
    # a source inside Z is observed and starts no trail
    assert is_d_separated(diamond, {"u"}, {"w"}, {"u", "v"})


def test_unknown_and_kind(diamond):
    with pytest.raises(UnknownVertex):
        is_d_separated(diamond, {"q"}, {"t"})
    with pytest.raises(KindMismatch):
        is_separated(diamond, {"t"}, {"w"})
    ug = build_graph("undirected", "ab", [("a", "b")])
    with pytest.raises(KindMismatch):
        is_d_separated(ug, {"a"}, {"b"})


def test_active_trail_examples(seven, diamond):
    assert is_active_trail(seven, ["B", "v", "E", "s", "D"], {"E"})
    assert not is_active_trail(seven, ["B", "v", "E", "s", "D"], set())
    assert is_active_trail(diamond, ["t", "u"], set())
    assert not is_active_trail(diamond, ["t", "u", "w"], {"u"})
    with pytest.raises(NotATrail):
        is_active_trail(diamond, ["t", "w"], set())


def test_collider_opened_by_descendant(backend):
    g = build_graph("directed", "abcd", [("a", "c"), ("b", "c"), ("c", "d")])
    assert is_d_separated(g, {"a"}, {"b"})
    assert not is_d_separated(g, {"a"}, {"b"}, {"d"})
    assert is_active_trail(g, ["a", "c", "b"], {"d"})


instances = st.builds(
    lambda seed, n, d, directed: oracle.random_graph(seed, n, d, directed),
    st.integers(0, 10**6), st.integers(1, 8), st.floats(0.15, 0.6), st.booleans())


@settings(max_examples=150, deadline=None)
@given(instances, st.data())
def test_symmetry_and_oracle(g, data):
    pick = st.sets(st.sampled_from(g.labels))
    X, Y, Z = data.draw(pick), data.draw(pick), data.draw(pick)
    got = separated(g, X, Y, Z)
    assert got == separated(g, Y, X, Z)
    assert got == oracle.is_d_separated_bruteforce(g, X, Y, Z)


def _chain(n):
    labels = [f"x{i}" for i in range(n)]
    return build_graph("directed", labels, list(zip(labels, labels[1:])))


def _best(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def test_linear_cost_on_chains(backend):
    small, large = _chain(5_000), _chain(50_000)
    t_small = _best(lambda: reachable(small, {"x0"}, set()))
    t_large = _best(lambda: reachable(large, {"x0"}, set()))
    assert t_large / t_small < 15
