"""Tests for fpt_t_solver module."""

import time

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from smallcut.colorcoding import UniversalFamilyTooLarge
from smallcut.flow_separators import Separator
from smallcut.fpt_t_solver import (
    AnchorState,
    anchor_state_violations,
    build_anchor_state,
    search_with_anchor,
    solve_by_t,
    trim,
)
from smallcut.graph import Graph
from smallcut.oracle import SearchSpaceTooLarge, brute_force_solve, verify_certificate
from smallcut.problems import Instance, InvalidInstanceError
from smallcut.reductions import generate_random_graph
from tests.conftest import PROPERTY_SETTINGS, graphs, path_graph


@pytest.fixture
def bridged_triangles():
    """Triangles 0-1-2 and 3-4-5 joined by the edge 2-3."""
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])


class TestBuildAnchorState:
    """Tests for build_anchor_state function."""

    def test_path(self, path4):
        """Test V0, S_v, R(v) and the family on a path."""
        state = build_anchor_state(path4, 0, 1)
        assert state.v0 == {2, 3}
        assert state.sep_of[2].members == {1}
        assert state.reach_of[2] == {2, 3}
        assert state.sep_of[3].members == {2}
        assert state.reach_of[3] == {3}
        assert state.family_x == [frozenset({3})]

    def test_clique_has_empty_v0(self, k4):
        """Test that every vertex of K4 is adjacent to the anchor."""
        state = build_anchor_state(k4, 0, 2)
        assert state.v0 == frozenset()
        assert state.family_x == []

    def test_star_leaves(self):
        """Test that removing the center isolates each leaf."""
        star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        state = build_anchor_state(star, 1, 1)
        assert state.v0 == {2, 3}
        assert state.sep_of[2].members == state.sep_of[3].members == {0}
        assert state.family_x == [frozenset({2}), frozenset({3})]

    def test_budget_excludes_large_separators(self, cycle4):
        """Test that v with |S_v| > t stays out of V0."""
        assert build_anchor_state(cycle4, 0, 1).v0 == frozenset()
        assert build_anchor_state(cycle4, 0, 2).v0 == {2}

    @PROPERTY_SETTINGS
    @given(data=st.data(), g=graphs(max_n=10))
    def test_containment_and_disjointness_hold(self, data, g):
        """Test R-containment and family disjointness on random graphs."""
        u = data.draw(st.integers(0, g.n - 1))
        t = data.draw(st.integers(0, 4))
        state = build_anchor_state(g, u, t)
        assert anchor_state_violations(state) == []
        assert all(v != u and not g.has_edge(u, v) for v in state.v0)


class TestAnchorStateViolations:
    """Tests for anchor_state_violations function."""

    def test_reports_intersecting_family(self):
        """Test that overlapping family members are flagged."""
        state = AnchorState(0, reach_of={4: frozenset({1, 2}), 5: frozenset({2, 3})})
        assert state.family_x == [frozenset({1, 2}), frozenset({2, 3})]
        assert any("intersect" in problem for problem in anchor_state_violations(state))

    def test_reports_broken_containment(self):
        """Test that w in R(v) with R(w) not inside R(v) is flagged."""
        state = AnchorState(0, reach_of={1: frozenset({1, 2}), 2: frozenset({2, 3})})
        assert any("not inside" in problem for problem in anchor_state_violations(state))


class TestSearchWithAnchor:
    """Tests for search_with_anchor function."""

    def test_case_two_may_avoid_anchor(self, path4):
        """Test that a small R(v) is returned even without u."""
        state = build_anchor_state(path4, 0, 1)
        cert = search_with_anchor(path4, state, 2, 1)
        assert cert.members == {3}

    def test_case_two_stops_before_family(self, path4):
        """Test that the family is not assembled when a small R(v) exists."""
        state = build_anchor_state(path4, 0, 1)
        assert "family_x" not in vars(state)
        assert search_with_anchor(path4, state, 2, 1) is not None
        assert "family_x" not in vars(state)

    def test_case_one(self, k4):
        """Test that an empty V0 gives no solution."""
        assert search_with_anchor(k4, build_anchor_state(k4, 0, 2), 2, 2) is None

    def test_bridged_triangles(self, bridged_triangles):
        """Test that a piece of the far triangle is found from anchor 0."""
        state = build_anchor_state(bridged_triangles, 0, 1)
        assert state.reach_of[3] == {3, 4, 5}
        cert = search_with_anchor(bridged_triangles, state, 3, 1)
        assert cert.members == {4, 5}
        assert cert.boundary == {3}

    def test_case_three_uses_separators(self):
        """Test a graph where every R(v) is larger than k."""
        # u=0 sits in a triangle 0-1-2 hanging off a 7-clique through 1-3 and 2-4
        g = nx.complete_graph(range(3, 10))
        g.add_edges_from([(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)])
        graph = Graph.from_networkx(g)
        state = build_anchor_state(graph, 0, 2)
        assert state.family_x
        assert all(len(member) > 3 for member in state.family_x)
        cert = search_with_anchor(graph, state, 3, 2)
        assert state.family_x == [frozenset(range(5, 10))]
        assert cert.members == {0}
        assert cert.boundary == {1, 2}


class TestTrim:
    """Tests for trim function."""

    def test_removes_farthest_vertex(self):
        """Test trimming a path prefix."""
        path = path_graph(5)
        cert = trim(path, frozenset({0, 1, 2}), Separator(frozenset({3}), frozenset({0, 1, 2})), 2, anchor=0, t=2)
        assert cert.members == {0, 1}
        assert cert.boundary == {2}

    def test_disconnected_remainder(self, two_triangles):
        """Test that the boundary stays inside the removed set when S is empty."""
        reach = frozenset({0, 1, 2})
        cert = trim(two_triangles, reach, Separator(frozenset(), reach), 2, anchor=0, t=1)
        assert cert.size == 2
        assert 0 in cert.members
        assert cert.boundary <= reach - cert.members

    def test_nothing_to_trim(self, path4):
        """Test that |R| <= k is refused."""
        reach = frozenset({0, 1})
        with pytest.raises(ValueError, match="nothing to trim"):
            trim(path4, reach, Separator(frozenset({2}), reach), 2)

    def test_bound_violated(self, path4):
        """Test that |R| + |S| > k + t is refused."""
        reach = frozenset({0, 1, 2})
        with pytest.raises(ValueError, match="exceeds"):
            trim(path4, reach, Separator(frozenset({3}), reach), 1, t=1)


class TestSolveByT:
    """Tests for solve_by_t function."""

    def test_path(self, path10):
        """Test a YES on the 10-path."""
        verdict = solve_by_t(path10, 3, 1)
        assert verdict.answer
        assert verdict.certificate.size <= 3
        assert verdict.certificate.boundary_size <= 1

    def test_trivial_branch(self):
        """Test that k >= n - t answers directly."""
        k5 = Graph.from_networkx(nx.complete_graph(5))
        verdict = solve_by_t(k5, 2, 3)
        assert verdict.answer
        assert verdict.algorithm == "trivial"
        assert verdict.certificate.boundary_size == 3

    def test_clique_no(self):
        """Test K5 with k=2, t=2."""
        k5 = Graph.from_networkx(nx.complete_graph(5))
        assert not solve_by_t(k5, 2, 2).answer

    def test_small_k_delegates_to_colorcoding(self, path10):
        """Test that 4k <= 3t goes to color coding."""
        verdict = solve_by_t(path10, 1, 2)
        assert verdict.answer
        assert verdict.algorithm == "colorcoding-derandomized"

    def test_falls_back_when_family_too_large(self, monkeypatch, path10):
        """Test that the anchor loop runs when derandomization is refused."""
        def refuse(*args, **kwargs):
            raise UniversalFamilyTooLarge("refused")

        monkeypatch.setattr("smallcut.fpt_t_solver.solve_colorcoding", refuse)
        verdict = solve_by_t(path10, 1, 2)
        assert verdict.answer
        assert verdict.algorithm == "important-separators"

    def test_empty_graph(self):
        """Test that a graph without vertices has no solution."""
        assert not solve_by_t(Graph.from_edges(0, []), 1, 0).answer

    def test_invalid_parameters(self, path4):
        """Test that k < 1 or t < 0 is rejected."""
        with pytest.raises(InvalidInstanceError):
            solve_by_t(path4, 0, 1)
        with pytest.raises(InvalidInstanceError):
            solve_by_t(path4, 1, -1)

    def test_inspect_sees_every_anchor(self):
        """Test that the hook receives each built state."""
        seen = []
        verdict = solve_by_t(Graph.from_networkx(nx.cycle_graph(8)), 1, 1, inspect=lambda s: seen.append(s.u))
        assert not verdict.answer
        assert seen == list(range(8))

    def test_threads_agree(self):
        """Test that more workers give the same certificate."""
        g = generate_random_graph(12, 0.3, seed=4)
        one = solve_by_t(g, 4, 3)
        many = solve_by_t(g, 4, 3, max_workers=4)
        assert one == many

    @PROPERTY_SETTINGS
    @given(g=graphs(max_n=9), k=st.integers(1, 5), t=st.integers(0, 4))
    def test_matches_oracle(self, g, k, t):
        """Test exact agreement with brute force and certificate validity."""
        instance = Instance(g, "vertex", k, t)
        violations = []
        verdict = solve_by_t(g, k, t, inspect=lambda s: violations.extend(anchor_state_violations(s)))
        assert violations == []
        assert verdict.answer == brute_force_solve(instance).answer
        if verdict.answer:
            assert verify_certificate(instance, verdict.certificate)

    @pytest.mark.slow
    def test_random_sweep_matches_oracle(self):
        """Test 500 random instances with n <= 11, k <= 6, t <= 4."""
        for seed in range(500):
            n = 2 + seed % 10
            p = (0.2, 0.5, 0.8)[seed % 3]
            k, t = 1 + seed % 6, seed % 5
            g = generate_random_graph(n, p, seed=seed)
            instance = Instance(g, "vertex", k, t)
            verdict = solve_by_t(g, k, t)
            assert verdict.answer == brute_force_solve(instance).answer, (seed, n, k, t)
            if verdict.answer:
                assert verify_certificate(instance, verdict.certificate)

    @pytest.mark.slow
    def test_beyond_oracle_reach(self):
        """Test n=50, m~150, t=4: the oracle refuses but solve_by_t finishes quickly."""
        for seed in range(20):
            g = generate_random_graph(50, 150 / 1225, seed=seed)
            instance = Instance(g, "vertex", 8, 4)
            with pytest.raises(SearchSpaceTooLarge):
                brute_force_solve(instance)
            start = time.perf_counter()
            verdict = solve_by_t(g, 8, 4)
            assert time.perf_counter() - start < 10
            if verdict.answer:
                assert verify_certificate(instance, verdict.certificate)
