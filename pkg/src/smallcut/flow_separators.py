"""Minimum and important vertex separators via unit-capacity flow.

An (X, Y)-separator is a vertex set S, disjoint from X and Y, such that no
path joins X and Y in G - S. A separator is *important* when it is minimal
and no other separator T with |T| <= |S| reaches strictly more from X.

All separator computations go through one flow network: every vertex ``v``
is split into ``v_in -> v_out`` with capacity 1 (unbounded for X and Y, which
may not be deleted), each edge ``uv`` becomes ``u_out -> v_in`` and
``v_out -> u_in`` with unbounded capacity. Augmenting paths are found
breadth-first and the search stops as soon as the flow exceeds the caller's
budget.

Example:
    >>> from smallcut.graph import Graph
    >>> from smallcut.flow_separators import unique_min_important_separator
    >>> path = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    >>> sep = unique_min_important_separator(path, 0, 3)
    >>> sorted(sep.members), sorted(sep.source_side)
    ([2], [0, 1])
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass

from smallcut.graph import Graph, VertexSet, reachable, vertex_set

logger = logging.getLogger(__name__)


class NotASeparatorError(ValueError):
    """Raised when a set handed to :func:`is_important` does not separate X from Y."""


@dataclass(frozen=True)
class Separator:
    """A vertex separator with its cached source side R(X, S)."""

    members: VertexSet
    source_side: VertexSet

    @property
    def size(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return len(self.members), tuple(sorted(self.members))


class _FlowNetwork:
    """Residual network of the vertex-split flow problem between X and Y.

    Node ``2v`` is ``v_in`` and ``2v + 1`` is ``v_out``; the super source and
    super sink come last. Arcs are stored in flat lists and arc ``a ^ 1`` is
    the reverse of arc ``a``. The flow value always equals the number of
    vertex-disjoint X-Y paths found so far.
    """

    def __init__(self, graph: Graph, sources: VertexSet, sinks: VertexSet, removed: VertexSet):
        n = graph.n
        self.source = 2 * n
        self.sink = 2 * n + 1
        self.head: list[int] = []
        self.capacity: list[int] = []
        self.arcs: list[list[int]] = [[] for _ in range(2 * n + 2)]
        self.flow = 0

        unbounded = n + 1
        terminals = sources | sinks
        for v in range(n):
            if v in removed:
                continue
            self._add_arc(2 * v, 2 * v + 1, unbounded if v in terminals else 1)
            for w in graph.adjacency[v]:
                if w not in removed:
                    self._add_arc(2 * v + 1, 2 * w, unbounded)
        for x in sources:
            self._add_arc(self.source, 2 * x, unbounded)
        for y in sinks:
            self._add_arc(2 * y + 1, self.sink, unbounded)

    def _add_arc(self, tail: int, head: int, capacity: int) -> None:
        self.arcs[tail].append(len(self.head))
        self.head.append(head)
        self.capacity.append(capacity)
        self.arcs[head].append(len(self.head))
        self.head.append(tail)
        self.capacity.append(0)

    def augment(self) -> bool:
        """Push flow along one shortest augmenting path; False if none exists."""
        parent_arc = [-1] * len(self.arcs)
        visited = [False] * len(self.arcs)
        visited[self.source] = True
        queue = deque([self.source])
        while queue and not visited[self.sink]:
            node = queue.popleft()
            for arc in self.arcs[node]:
                nxt = self.head[arc]
                if not visited[nxt] and self.capacity[arc] > 0:
                    visited[nxt] = True
                    parent_arc[nxt] = arc
                    queue.append(nxt)
        if not visited[self.sink]:
            return False

        bottleneck = None
        node = self.sink
        while node != self.source:
            arc = parent_arc[node]
            bottleneck = self.capacity[arc] if bottleneck is None else min(bottleneck, self.capacity[arc])
            node = self.head[arc ^ 1]
        node = self.sink
        while node != self.source:
            arc = parent_arc[node]
            self.capacity[arc] -= bottleneck
            self.capacity[arc ^ 1] += bottleneck
            node = self.head[arc ^ 1]
        self.flow += bottleneck
        return True

    def run(self, limit: int | None) -> int:
        while (limit is None or self.flow <= limit) and self.augment():
            pass
        return self.flow

    def sink_side(self) -> set[int]:
        """Nodes that can still reach the sink in the residual network."""
        seen = {self.sink}
        queue = deque([self.sink])
        while queue:
            node = queue.popleft()
            for arc in self.arcs[node]:
                prev = self.head[arc]
                # arc ^ 1 runs prev -> node
                if prev not in seen and self.capacity[arc ^ 1] > 0:
                    seen.add(prev)
                    queue.append(prev)
        return seen

    def closest_cut(self, n: int) -> VertexSet:
        """Vertices whose split arc crosses from the source side into the sink side."""
        near_sink = self.sink_side()
        return frozenset(v for v in range(n) if 2 * v not in near_sink and 2 * v + 1 in near_sink)


def _terminals(graph: Graph, sources, sinks) -> tuple[VertexSet, VertexSet]:
    x = vertex_set(graph, sources)
    y = vertex_set(graph, sinks)
    if not x or not y:
        raise ValueError("both terminal sets must be non-empty")
    if x & y:
        raise ValueError(f"terminal sets overlap on {sorted(x & y)}")
    return x, y


def _adjacent(graph: Graph, x: VertexSet, y: VertexSet) -> bool:
    return any(w in y for v in x for w in graph.adjacency[v])


def _closest_min_cut(
    graph: Graph,
    sources: VertexSet,
    sinks: VertexSet,
    removed: VertexSet = frozenset(),
    limit: int | None = None,
) -> VertexSet | None:
    """Minimum (X, Y)-separator of G - removed that lies nearest to Y.

    Returns None when X and Y are adjacent or the minimum exceeds ``limit``.
    """
    if _adjacent(graph, sources, sinks):
        return None
    network = _FlowNetwork(graph, sources, sinks, removed)
    value = network.run(limit)
    if limit is not None and value > limit:
        return None
    cut = network.closest_cut(graph.n)
    assert len(cut) == value, "cut size disagrees with flow value"
    return cut


def min_separator_size(graph: Graph, sources: int | Iterable[int], sinks: int | Iterable[int]) -> int | None:
    """Size of a minimum (X, Y)-separator, or None if X and Y are adjacent.

    By Menger's theorem this equals the maximum number of internally
    vertex-disjoint X-Y paths.

    Raises:
        ValueError: If X or Y is empty or they overlap.
    """
    x, y = _terminals(graph, sources, sinks)
    if _adjacent(graph, x, y):
        return None
    return _FlowNetwork(graph, x, y, frozenset()).run(None)


def unique_min_important_separator(
    graph: Graph,
    sources: int | Iterable[int],
    sinks: int | Iterable[int],
    limit: int | None = None,
) -> Separator | None:
    """The unique important (X, Y)-separator of minimum size.

    Among all minimum separators this is the one maximizing R(X, S), i.e. the
    minimum cut pushed as far towards Y as possible.

    Args:
        graph: The graph.
        sources: X (a vertex or an iterable of vertices).
        sinks: Y (a vertex or an iterable of vertices).
        limit: Optional budget; when the minimum exceeds it, None is
            returned without finishing the flow computation.

    Returns:
        Separator | None: None if X and Y are adjacent (no separator exists)
        or the minimum separator is larger than ``limit``.
    """
    x, y = _terminals(graph, sources, sinks)
    cut = _closest_min_cut(graph, x, y, limit=limit)
    if cut is None:
        return None
    return Separator(cut, reachable(graph, x, cut))


def is_important(
    graph: Graph,
    sources: int | Iterable[int],
    sinks: int | Iterable[int],
    separator: Iterable[int],
) -> bool:
    """Decide whether S is an important (X, Y)-separator.

    S is important exactly when it is the unique minimum important separator
    between R(X, S) and Y.

    Raises:
        NotASeparatorError: If S meets X or Y, or leaves a path from X to Y.
    """
    x, y = _terminals(graph, sources, sinks)
    members = vertex_set(graph, separator)
    if members & (x | y):
        raise NotASeparatorError("separator intersects a terminal set")
    source_side = reachable(graph, x, members)
    if source_side & y:
        raise NotASeparatorError(f"{sorted(members)} does not separate the terminal sets")
    return _closest_min_cut(graph, source_side, y, limit=len(members)) == members


def enumerate_important_separators(
    graph: Graph,
    sources: int | Iterable[int],
    sinks: int | Iterable[int],
    t: int,
) -> list[Separator]:
    """List every important (X, Y)-separator of size at most t.

    Branching follows the current unique minimum important separator S of
    the reduced problem: its lowest vertex v is either part of the output
    (delete v, budget t - 1) or lies on the source side (add v to X). Both
    branches strictly decrease ``2 * budget - mincut``. Every branch node
    contributes one candidate, and candidates are filtered through
    :func:`is_important`, so there are at most 4^t results.

    Returns:
        list[Separator]: Duplicate-free, ordered by size then by members.
        Empty when X and Y are adjacent or the minimum cut exceeds t.
    """
    x, y = _terminals(graph, sources, sinks)
    if t < 0:
        return []

    candidates: set[VertexSet] = set()
    branch_nodes = 0
    stack: list[tuple[VertexSet, VertexSet, int]] = [(x, frozenset(), t)]
    while stack:
        current, deleted, budget = stack.pop()
        branch_nodes += 1
        cut = _closest_min_cut(graph, current, y, removed=deleted, limit=budget)
        if cut is None:
            continue
        candidates.add(deleted | cut)
        if not cut:
            continue
        v = min(cut)
        stack.append((current | {v}, deleted, budget))
        if budget > 0:
            stack.append((current, deleted | {v}, budget - 1))

    result = [
        Separator(members, reachable(graph, x, members))
        for members in candidates
        if is_important(graph, x, y, members)
    ]
    result.sort(key=Separator.sort_key)
    logger.debug(
        "important separators: %d branch nodes, %d candidates, %d important (t=%d)",
        branch_nodes,
        len(candidates),
        len(result),
        t,
    )
    return result
