"""Pytest configuration and fixtures."""

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from smallcut.graph import Graph

PROPERTY_SETTINGS = settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


def path_graph(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


@st.composite
def graphs(draw, min_n=1, max_n=8):
    """Random simple graphs on a drawn number of vertices."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@pytest.fixture
def path4():
    """Path 0-1-2-3."""
    return path_graph(4)


@pytest.fixture
def path10():
    """Path on ten vertices."""
    return path_graph(10)


@pytest.fixture
def triangle():
    """Complete graph K3."""
    return Graph.from_networkx(nx.complete_graph(3))


@pytest.fixture
def k4():
    """Complete graph K4."""
    return Graph.from_networkx(nx.complete_graph(4))


@pytest.fixture
def cycle4():
    """Cycle 0-1-2-3-0."""
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def star():
    """Star K_{1,4} with center 0."""
    return Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])


@pytest.fixture
def two_triangles():
    """Two disjoint triangles {0,1,2} and {3,4,5}."""
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


@pytest.fixture
def diamond():
    """Two parallel paths 0-1-3 and 0-2-3."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


@pytest.fixture
def write_file(tmp_path):
    """Write text to a file under tmp_path and return its path."""
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return path
    return _write
