import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from mbgraph import kernels, oracle
from mbgraph.blankets import mb_in_ids

compiled_only = pytest.mark.skipif("compiled" not in kernels.BACKENDS, reason="extension not built")


def test_backend_switching():
    first = kernels.active_backend()
    with kernels.use_backend("python"):
        assert kernels.active_backend() == "python"
    assert kernels.active_backend() == first
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")


def test_env_forces_fallback():
    env = dict(os.environ, MBGRAPH_BACKEND="python")
    out = subprocess.run([sys.executable, "-c", "from mbgraph import kernels; print(kernels.active_backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


instances = st.builds(
    lambda seed, n, d, directed: oracle.random_graph(seed, n, d, directed),
    st.integers(0, 10**6), st.integers(1, 30), st.floats(0.05, 0.5), st.booleans())


@compiled_only
@settings(max_examples=200, deadline=None)
@given(instances, st.data())
def test_backends_agree(g, data):
    ids = st.sets(st.integers(0, g.n - 1))
    sources, cond_ids, C = data.draw(ids), data.draw(ids), data.draw(ids)
    cond = g.mask(cond_ids)
    results = {}
    for name in kernels.BACKENDS:
        with kernels.use_backend(name):
            results[name] = (bytes(kernels.reach_ids(g, sorted(sources), bytearray(cond))),
                             mb_in_ids(g, sources, C, cond_ids))
    assert results["compiled"] == results["python"]


@compiled_only
def test_compiled_leaves_inputs_untouched():
    g = oracle.random_graph(1, 12, 0.3, True)
    cond = g.mask({1, 2, 3})
    before = bytes(cond)
    with kernels.use_backend("compiled"):
        kernels.blanket_flags(g, [0], [4, 5, 6], cond)
    assert bytes(cond) == before
