import sys
from pathlib import Path

import pytest

from mbgraph import build_graph, kernels

sys.path.insert(0, str(Path(__file__).parent))

DIAMOND_EDGES = [("t", "u"), ("t", "v"), ("u", "w"), ("v", "w")]
SEVEN_EDGES = [("u", "B"), ("t", "u"), ("t", "D"), ("B", "v"), ("v", "E"), ("D", "s"), ("s", "E")]


@pytest.fixture
def diamond():
    return build_graph("directed", "tuvw", DIAMOND_EDGES)


@pytest.fixture
def seven():
    return build_graph("directed", ["B", "v", "E", "s", "D", "u", "t"], SEVEN_EDGES)


@pytest.fixture(params=kernels.BACKENDS)
def backend(request):
    with kernels.use_backend(request.param):
        yield request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
