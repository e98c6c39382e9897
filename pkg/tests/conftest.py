import numpy as np
import pytest

from fiedler_hotspots.graph import LabeledGraph
from fiedler_hotspots.kernels import numba_impl, numpy_impl

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(params=["numba", "numpy"])
def impl(request):
    mod = numba_impl if request.param == "numba" else numpy_impl
    if mod is None:
        pytest.skip("numba unavailable")
    return mod


@pytest.fixture
def two_k2():
    return LabeledGraph.from_edges(4, [(0, 1), (2, 3)], [1, 1, -1, -1])


@pytest.fixture
def path3():
    return LabeledGraph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def cycle4():
    return LabeledGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def random_graph(n, density, seed, labels=True):
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < density
    g = np.where(rng.random(n) < 0.5, 1, -1) if labels else None
    return LabeledGraph.from_edges(n, np.column_stack([iu[keep], ju[keep]]), g)
