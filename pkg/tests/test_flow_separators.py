"""Tests for flow_separators module."""

from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from smallcut.flow_separators import (
    NotASeparatorError,
    enumerate_important_separators,
    is_important,
    min_separator_size,
    unique_min_important_separator,
)
from smallcut.graph import Graph, neighborhood, reachable
from smallcut.oracle import naive_important_separators
from tests.conftest import PROPERTY_SETTINGS, graphs


@st.composite
def separation_queries(draw, max_n=8, max_t=4):
    """A graph with disjoint non-empty terminal sets and a budget."""
    g = draw(graphs(min_n=2, max_n=max_n))
    order = draw(st.permutations(range(g.n)))
    x_size = draw(st.integers(1, min(2, g.n - 1)))
    y_size = draw(st.integers(1, min(2, g.n - x_size)))
    t = draw(st.integers(0, max_t))
    return g, frozenset(order[:x_size]), frozenset(order[x_size:x_size + y_size]), t


def _max_disjoint_paths(graph, x, y):
    """Menger count by brute force: largest set of internally disjoint X-Y paths."""
    nxg = graph.to_networkx()
    s, t = graph.n, graph.n + 1
    nxg.add_nodes_from([s, t])
    nxg.add_edges_from((s, w) for w in neighborhood(graph, x))
    nxg.add_edges_from((w, t) for w in neighborhood(graph, y))
    nxg.remove_nodes_from(x | y)
    return nx.algorithms.connectivity.local_node_connectivity(nxg, s, t)


class TestMinSeparatorSize:
    """Tests for min_separator_size function."""

    def test_path(self, path4):
        """Test that a single path needs one vertex."""
        assert min_separator_size(path4, {0}, {3}) == 1

    def test_cycle(self, cycle4):
        """Test that opposite cycle vertices need two."""
        assert min_separator_size(cycle4, {0}, {2}) == 2

    def test_adjacent_terminals(self):
        """Test that adjacent X and Y have no separator."""
        assert min_separator_size(Graph.from_edges(2, [(0, 1)]), 0, 1) is None

    def test_disconnected_terminals(self, two_triangles):
        """Test that terminals in different components need nothing."""
        assert min_separator_size(two_triangles, 0, 4) == 0

    def test_overlapping_terminals_rejected(self, path4):
        """Test that X and Y must be disjoint."""
        with pytest.raises(ValueError, match="overlap"):
            min_separator_size(path4, {0, 1}, {1, 3})

    def test_empty_terminals_rejected(self, path4):
        """Test that X must be non-empty."""
        with pytest.raises(ValueError, match="non-empty"):
            min_separator_size(path4, set(), {3})

    @PROPERTY_SETTINGS
    @given(query=separation_queries())
    def test_equals_disjoint_path_count(self, query):
        """Test Menger: min cut equals the number of disjoint paths."""
        g, x, y, _ = query
        size = min_separator_size(g, x, y)
        if size is not None:
            assert size == _max_disjoint_paths(g, x, y)


class TestUniqueMinImportantSeparator:
    """Tests for unique_min_important_separator function."""

    def test_path_pushes_toward_sink(self, path4):
        """Test that {2} is chosen over {1}."""
        sep = unique_min_important_separator(path4, {0}, {3})
        assert sep.members == {2}
        assert sep.source_side == {0, 1}

    def test_cycle(self, cycle4):
        """Test the only minimum separator of the 4-cycle."""
        assert unique_min_important_separator(cycle4, {0}, {2}).members == {1, 3}

    def test_star_cut_vertex(self):
        """Test that the center of K_{1,3} separates two leaves."""
        star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        assert unique_min_important_separator(star, 1, 2).members == {0}

    def test_adjacent_terminals(self):
        """Test that no separator exists between neighbors."""
        assert unique_min_important_separator(Graph.from_edges(2, [(0, 1)]), 0, 1) is None

    def test_limit_exceeded(self, cycle4):
        """Test that a minimum above the limit yields None."""
        assert unique_min_important_separator(cycle4, 0, 2, limit=1) is None
        assert unique_min_important_separator(cycle4, 0, 2, limit=2) is not None

    def test_source_side_neighborhood_is_separator(self, diamond):
        """Test N(R(X, S)) = S."""
        sep = unique_min_important_separator(diamond, 0, 3)
        assert neighborhood(diamond, sep.source_side) == sep.members


class TestIsImportant:
    """Tests for is_important function."""

    def test_dominated_separator(self, path4):
        """Test that {1} is dominated by {2}."""
        assert not is_important(path4, {0}, {3}, {1})

    def test_important_separator(self, path4):
        """Test that {2} is important."""
        assert is_important(path4, {0}, {3}, {2})

    def test_non_minimal_separator(self, path4):
        """Test that {1, 2} is not minimal."""
        assert not is_important(path4, {0}, {3}, {1, 2})

    def test_not_a_separator(self, path4):
        """Test that a set leaving a path open is rejected."""
        with pytest.raises(NotASeparatorError):
            is_important(path4, {0}, {3}, set())

    def test_separator_touching_terminal(self, path4):
        """Test that S may not contain a terminal."""
        with pytest.raises(NotASeparatorError):
            is_important(path4, {0}, {3}, {3})


class TestEnumerateImportantSeparators:
    """Tests for enumerate_important_separators function."""

    def test_path(self, path4):
        """Test that the path has exactly one important separator."""
        result = enumerate_important_separators(path4, {0}, {3}, 2)
        assert [s.members for s in result] == [frozenset({2})]

    def test_cycle_budget_too_small(self, cycle4):
        """Test that nothing is returned below the min cut."""
        assert enumerate_important_separators(cycle4, {0}, {2}, 1) == []

    def test_cycle(self, cycle4):
        """Test the 4-cycle at budget 2."""
        result = enumerate_important_separators(cycle4, {0}, {2}, 2)
        assert [s.members for s in result] == [frozenset({1, 3})]

    def test_adjacent_terminals(self, triangle):
        """Test that adjacent terminals give an empty list."""
        assert enumerate_important_separators(triangle, 0, 1, 3) == []

    def test_disconnected_terminals(self, two_triangles):
        """Test that the empty set is the only important separator."""
        result = enumerate_important_separators(two_triangles, 0, 3, 2)
        assert [s.members for s in result] == [frozenset()]

    def test_several_separators(self):
        """Test three parallel paths where only the cut next to y is important."""
        # x=0 joined to three paths 0-a-b-y
        g = Graph.from_edges(8, [(0, 1), (1, 2), (2, 7), (0, 3), (3, 4), (4, 7), (0, 5), (5, 6), (6, 7)])
        result = enumerate_important_separators(g, 0, 7, 3)
        assert [sorted(s.members) for s in result] == [[2, 4, 6]]
        assert enumerate_important_separators(g, 0, 7, 2) == []

    def test_sorted_and_duplicate_free(self):
        """Test ordering by size then members on a random graph."""
        g = Graph.from_networkx(nx.gnp_random_graph(10, 0.35, seed=11))
        result = enumerate_important_separators(g, 0, 9, 4)
        keys = [s.sort_key() for s in result]
        assert keys == sorted(keys)
        assert len({s.members for s in result}) == len(result)

    @PROPERTY_SETTINGS
    @given(query=separation_queries())
    def test_matches_definition(self, query):
        """Test equality with the brute-force listing from the definition."""
        g, x, y, t = query
        found = enumerate_important_separators(g, x, y, t)
        assert {s.members for s in found} == set(naive_important_separators(g, x, y, t))
        assert len(found) <= 4**t

    @PROPERTY_SETTINGS
    @given(query=separation_queries())
    def test_each_result_is_important(self, query):
        """Test is_important and N(R(X, S)) = S for every result."""
        g, x, y, t = query
        for sep in enumerate_important_separators(g, x, y, t):
            assert is_important(g, x, y, sep.members)
            assert sep.source_side == reachable(g, x, sep.members)
            assert neighborhood(g, sep.source_side) == sep.members

    @PROPERTY_SETTINGS
    @given(query=separation_queries())
    def test_unique_minimum(self, query):
        """Test that exactly one result has minimum size and it matches the flow cut."""
        g, x, y, t = query
        smallest = min_separator_size(g, x, y)
        if smallest is None or smallest > t:
            return
        found = enumerate_important_separators(g, x, y, t)
        minimum = [s.members for s in found if s.size == smallest]
        assert minimum == [unique_min_important_separator(g, x, y).members]


class TestNaiveAgreementSmallGraphs:
    """Exhaustive agreement on every pair of vertices of a few fixed graphs."""

    @pytest.mark.parametrize("graph_fn", [
        lambda: nx.petersen_graph(),
        lambda: nx.grid_2d_graph(3, 3),
        lambda: nx.cycle_graph(7),
    ])
    def test_all_pairs(self, graph_fn):
        """Test every non-adjacent vertex pair at budget 3."""
        g = Graph.from_networkx(graph_fn())
        for x, y in combinations(range(g.n), 2):
            if g.has_edge(x, y):
                continue
            found = {s.members for s in enumerate_important_separators(g, x, y, 3)}
            assert found == set(naive_important_separators(g, x, y, 3))
