from __future__ import annotations

import pytest

from fareylab.farey import build_level
from fareylab.graph import Graph
from fareylab.models import ModelSpec, TreeEdge, build_tree_model


@pytest.fixture
def lozenge() -> Graph:
    return Graph(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])


@pytest.fixture
def c4() -> Graph:
    return Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture
def chain() -> Graph:
    """Two copies of F_1 glued apex 3 to apex 2: free apexes are 2 and the last vertex."""
    spec = ModelSpec(((0, 1), (1, 1)), (TreeEdge(0, 1, 3, 2),))
    return build_tree_model(spec).graph


@pytest.fixture(scope="session")
def levels():
    return {n: build_level(n) for n in range(1, 7)}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
