"""Cutting at most k vertices in 4^t * poly(n) time, parameterized by t alone.

The search guesses an anchor vertex u of a solution. For every vertex v that
is neither u nor a neighbor of u, the unique minimum important
(u, v)-separator S_v is computed; V0 collects the v with |S_v| <= t and
R(v) = R(v, S_v) is the part cut off on v's side. Then:

1. V0 empty: no solution contains u.
2. Some |R(v)| <= k: R(v) itself is a solution (it may avoid u).
3. Otherwise the inclusion-minimal sets R(v) form a family of pairwise
   disjoint sets, each larger than k. At most ``(k + t) // (k + 1)`` of them
   fit inside X ∪ N(X) of a minimal solution X containing u, so the union Z
   of the others is guessed by leaving out that many members. An important
   (Z, u)-separator S with |R(u, S)| + |S| <= k + t then yields a solution,
   trimmed down to k vertices when R(u, S) is too large.

Instances with k >= n - t are answered directly and small k (4k <= 3t) is
delegated to derandomized color coding, which runs in 4^t * poly(n) there.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from smallcut.colorcoding import UniversalFamilyTooLarge, solve_colorcoding
from smallcut.flow_separators import Separator, enumerate_important_separators, unique_min_important_separator
from smallcut.graph import Graph, VertexSet, neighborhood, reachable
from smallcut.problems import Certificate, Instance, InvalidInstanceError, Variant, Verdict
from smallcut.utils import first_hit

logger = logging.getLogger(__name__)

ALGORITHM = "important-separators"


@dataclass
class AnchorState:
    """Per-anchor data: V0, the separators S_v, the sets R(v) and the family 𝒳.

    Attributes:
        u: The anchor vertex.
        v0: Vertices v outside {u} ∪ N(u) whose S_v has size at most t.
        sep_of: ``v -> S_v``, the unique minimum important (u, v)-separator.
        reach_of: ``v -> R(v)``, the vertices reachable from v in G - S_v.
        family_x: The inclusion-minimal distinct sets among the R(v),
            ordered by smallest member. Assembled on first access, so a
            search that stops in case 2 never builds it.
    """

    u: int
    v0: VertexSet = frozenset()
    sep_of: dict[int, Separator] = field(default_factory=dict)
    reach_of: dict[int, VertexSet] = field(default_factory=dict)

    @cached_property
    def family_x(self) -> list[VertexSet]:
        return _minimal_sets(list(self.reach_of.values()))


def _minimal_sets(sets: list[VertexSet]) -> list[VertexSet]:
    distinct = sorted(set(sets), key=lambda s: (min(s), len(s)))
    return [a for a in distinct if not any(b < a for b in distinct)]


def build_anchor_state(graph: Graph, u: int, t: int) -> AnchorState:
    """Compute V0, S_v and R(v) for anchor u (polynomial time); 𝒳 is left to first use."""
    state = AnchorState(u)
    excluded = neighborhood(graph, u) | {u}
    for v in range(graph.n):
        if v in excluded:
            continue
        separator = unique_min_important_separator(graph, u, v, limit=t)
        if separator is None:
            continue
        state.sep_of[v] = separator
        state.reach_of[v] = reachable(graph, v, separator.members)
    state.v0 = frozenset(state.sep_of)
    return state


def anchor_state_violations(state: AnchorState) -> list[str]:
    """Check R-containment (w in R(v) implies R(w) ⊆ R(v)) and disjointness of 𝒳."""
    problems = []
    for v, reach_v in state.reach_of.items():
        for w in reach_v:
            reach_w = state.reach_of.get(w)
            if reach_w is not None and not reach_w <= reach_v:
                problems.append(f"anchor {state.u}: {w} in R({v}) but R({w}) not inside R({v})")
    for a, b in combinations(state.family_x, 2):
        if a & b:
            problems.append(f"anchor {state.u}: family members {sorted(a)} and {sorted(b)} intersect")
    for a in state.family_x:
        if any(reach < a for reach in state.reach_of.values()):
            problems.append(f"anchor {state.u}: family member {sorted(a)} is not inclusion-minimal")
    return problems


def trim(
    graph: Graph,
    reach: VertexSet,
    separator: Separator,
    k: int,
    anchor: int | None = None,
    t: int | None = None,
) -> Certificate:
    """Shrink R(u, S) to exactly k vertices while keeping |N(X')| <= t.

    The removed set S' holds the |R| - k vertices farthest from the anchor
    (breadth-first inside R, ties broken by larger id); the anchor itself is
    never removed. Since N(X') ⊆ S' ∪ S, the boundary has at most
    |R| - k + |S| vertices.

    Raises:
        ValueError: If |R| <= k, or if ``t`` is given and |R| + |S| > k + t.
    """
    if len(reach) <= k:
        raise ValueError(f"nothing to trim: |R| = {len(reach)} <= k = {k}")
    if t is not None and len(reach) + separator.size > k + t:
        raise ValueError(f"|R| + |S| = {len(reach) + separator.size} exceeds k + t = {k + t}")
    if anchor is None or anchor not in reach:
        anchor = min(reach)

    distance = {anchor: 0}
    queue = deque([anchor])
    while queue:
        v = queue.popleft()
        for w in graph.adjacency[v]:
            if w in reach and w not in distance:
                distance[w] = distance[v] + 1
                queue.append(w)
    unreached = len(reach)
    order = sorted(
        (v for v in reach if v != anchor),
        key=lambda v: (distance.get(v, unreached), v),
        reverse=True,
    )
    removed = frozenset(order[: len(reach) - k])
    certificate = Certificate.build(graph, reach - removed, Variant.VERTEX)
    assert certificate.boundary <= removed | separator.members
    return certificate


def _exclusion_depth(k: int, t: int) -> int:
    # members of 𝒳 are disjoint and larger than k, |X ∪ N(X)| <= k + t
    return max(2, (k + t) // (k + 1))


def search_with_anchor(
    graph: Graph,
    state: AnchorState,
    k: int,
    t: int,
    depth: int | None = None,
) -> Certificate | None:
    """Run the three-case analysis for one anchor.

    Args:
        graph: The graph.
        state: Output of :func:`build_anchor_state` for the same t.
        k: Size bound.
        t: Separator budget.
        depth: Largest number of 𝒳-members left out of a guess for Z.
            Defaults to ``max(2, (k + t) // (k + 1))``; the second term is
            at most 2 whenever 4k > 3t.

    Returns:
        Certificate | None: A solution (not necessarily containing u), or
        None if no solution contains u.
    """
    if not state.v0:
        logger.debug("anchor %d: V0 empty", state.u)
        return None

    small = [v for v in state.v0 if len(state.reach_of[v]) <= k]
    if small:
        v = min(small, key=lambda w: (len(state.reach_of[w]), w))
        logger.debug("anchor %d: R(%d) is small enough", state.u, v)
        return Certificate.build(graph, state.reach_of[v], Variant.VERTEX)

    if depth is None:
        depth = _exclusion_depth(k, t)
    members = state.family_x
    for size in range(min(depth, len(members)) + 1):
        for left_out in combinations(range(len(members)), size):
            skipped = set(left_out)
            z = frozenset().union(*(m for i, m in enumerate(members) if i not in skipped))
            if not z:
                continue
            for separator in enumerate_important_separators(graph, z, state.u, t):
                reach_u = reachable(graph, state.u, separator.members)
                if len(reach_u) + separator.size > k + t:
                    continue
                logger.debug(
                    "anchor %d: separator %s from Z of %d vertices",
                    state.u,
                    sorted(separator.members),
                    len(z),
                )
                if len(reach_u) <= k:
                    return Certificate.build(graph, reach_u, Variant.VERTEX)
                return trim(graph, reach_u, separator, k, anchor=state.u, t=t)
    return None


def solve_by_t(
    graph: Graph,
    k: int,
    t: int,
    max_workers: int = 1,
    inspect: Callable[[AnchorState], None] | None = None,
) -> Verdict:
    """Decide Cutting at Most k Vertices exactly in 4^t * poly(n) time.

    Args:
        graph: The graph.
        k: Size bound (at least 1).
        t: Separator budget (at least 0).
        max_workers: Anchors may be processed by this many threads; the
            certificate of the smallest successful anchor is returned.
        inspect: Called with every AnchorState that gets built.

    Returns:
        Verdict: Exact answer; YES carries a certificate.
    """
    if k < 1 or t < 0:
        raise InvalidInstanceError(f"need k >= 1 and t >= 0, got k={k}, t={t}")
    n = graph.n
    if n == 0:
        return Verdict.no(ALGORITHM)

    if k >= n - t:
        chosen = range(min(k, n))
        return Verdict.yes(Certificate.build(graph, chosen, Variant.VERTEX), "trivial")

    if 4 * k <= 3 * t:
        try:
            return solve_colorcoding(Instance(graph, Variant.VERTEX, k, t), max_workers=max_workers)
        except UniversalFamilyTooLarge as exc:
            logger.info(
                "color coding unavailable (%s); anchor search leaving out up to %d members",
                exc,
                _exclusion_depth(k, t),
            )

    def attempt(u: int) -> Certificate | None:
        state = build_anchor_state(graph, u, t)
        if inspect is not None:
            inspect(state)
        return search_with_anchor(graph, state, k, t)

    hit = first_hit(range(n), attempt, max_workers=max_workers)
    if hit is None:
        return Verdict.no(ALGORITHM)
    anchor, certificate = hit
    return Verdict.yes(certificate, ALGORITHM, anchor=anchor)
