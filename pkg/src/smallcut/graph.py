"""Graph representation, neighborhoods, boundaries and reachability.

Graphs are simple and undirected with dense 0-based vertex ids. A graph is
immutable after construction, so it can be shared freely between worker
threads. Vertex sets are ``frozenset[int]`` (structural hashing and equality);
functions that print or serialize sets always sort them first.

Two text formats are understood by :func:`parse_graph`:

* edge list: a header line ``n m`` followed by ``m`` lines ``u v`` (0-based),
* DIMACS-like: ``p edge n m`` followed by ``e u v`` lines (1-based).

Lines starting with ``#`` (and ``c`` in DIMACS files) are comments.

Example:
    >>> from smallcut.graph import parse_graph, neighborhood
    >>> g = parse_graph("4 3\\n0 1\\n1 2\\n2 3")
    >>> sorted(neighborhood(g, {1, 2}))
    [0, 3]
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

VertexSet = frozenset[int]
Edge = tuple[int, int]
EdgeSet = frozenset[Edge]


class GraphFormatError(ValueError):
    """Raised when graph text cannot be parsed.

    Attributes:
        line: 1-based line number of the offending line (0 when the problem
            concerns the file as a whole).
    """

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph on vertices ``0 .. n-1``.

    Attributes:
        n: Number of vertices.
        adjacency: Per-vertex sorted tuple of neighbor ids.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> Graph:
        """Build a graph, rejecting self-loops, duplicates and bad ids."""
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        neighbors: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has a vertex id outside [0, {n})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if v in neighbors[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            neighbors[u].add(v)
            neighbors[v].add(u)
        return cls(n, tuple(tuple(sorted(adj)) for adj in neighbors))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> Graph:
        """Convert a networkx graph, relabelling its nodes to ``0 .. n-1`` in sorted order."""
        nodes = sorted(graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in graph.edges()))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph

    @cached_property
    def m(self) -> int:
        return sum(len(adj) for adj in self.adjacency) // 2

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        """All edges as ``(min, max)`` pairs in lexicographic order."""
        return tuple((u, v) for u in range(self.n) for v in self.adjacency[u] if u < v)

    @cached_property
    def _neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(adj) for adj in self.adjacency)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    def regular_degree(self) -> int | None:
        """Return d if every vertex has degree d, else None."""
        degrees = {len(adj) for adj in self.adjacency}
        if len(degrees) > 1:
            return None
        return degrees.pop() if degrees else 0

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def vertex_set(graph: Graph, vertices: int | Iterable[int]) -> VertexSet:
    """Normalize a vertex or an iterable of vertices into a checked VertexSet.

    A single vertex ``x`` stands for ``{x}``.

    Raises:
        ValueError: If some id lies outside ``[0, n)``.
    """
    members = frozenset((vertices,)) if isinstance(vertices, int) else frozenset(vertices)
    for v in members:
        if not 0 <= v < graph.n:
            raise ValueError(f"vertex id {v} outside [0, {graph.n})")
    return members


def neighborhood(graph: Graph, vertices: int | Iterable[int]) -> VertexSet:
    """Open neighborhood N(U): neighbors of U that are not in U."""
    members = vertex_set(graph, vertices)
    result: set[int] = set()
    for v in members:
        result.update(graph.adjacency[v])
    return frozenset(result - members)


def edge_boundary(graph: Graph, vertices: int | Iterable[int]) -> EdgeSet:
    """Edges with exactly one endpoint in U, each as a ``(min, max)`` pair."""
    members = vertex_set(graph, vertices)
    return frozenset(
        (min(u, v), max(u, v))
        for u in members
        for v in graph.adjacency[u]
        if v not in members
    )


def reachable(
    graph: Graph,
    sources: int | Iterable[int],
    blocked: int | Iterable[int] = (),
) -> VertexSet:
    """R(X, S): vertices reachable from X in G - S (breadth-first).

    Raises:
        ValueError: If X and S overlap.
    """
    start = vertex_set(graph, sources)
    removed = vertex_set(graph, blocked)
    if start & removed:
        raise ValueError(f"sources and blocked set overlap on {sorted(start & removed)}")
    seen = set(start)
    queue = deque(start)
    while queue:
        v = queue.popleft()
        for w in graph.adjacency[v]:
            if w not in seen and w not in removed:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def components(graph: Graph, within: Iterable[int] | None = None) -> list[VertexSet]:
    """Connected components of G (or of G[within]) ordered by smallest vertex."""
    allowed = set(range(graph.n)) if within is None else set(within)
    result = []
    for v in sorted(allowed):
        if v not in allowed:
            continue
        component = {v}
        queue = deque([v])
        allowed.discard(v)
        while queue:
            x = queue.popleft()
            for w in graph.adjacency[x]:
                if w in allowed:
                    allowed.discard(w)
                    component.add(w)
                    queue.append(w)
        result.append(frozenset(component))
    return result


def is_connected_set(graph: Graph, vertices: Iterable[int]) -> bool:
    members = frozenset(vertices)
    if not members:
        return False
    return len(components(graph, members)) == 1


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"expected an integer, got {token!r}", lineno) from None


def parse_graph(text: str) -> Graph:
    """Parse the edge-list or DIMACS-like text format into a Graph.

    Raises:
        GraphFormatError: On a malformed header, an id out of range, a
            duplicate edge, a self-loop or an edge count that disagrees with
            the header.
    """
    header: tuple[int, int] | None = None
    one_based = False
    edges: list[Edge] = []
    seen: set[Edge] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "c" and (one_based or header is None):
            continue
        if header is None:
            if tokens[0] == "p":
                if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                    raise GraphFormatError("expected 'p edge n m'", lineno)
                header = (_parse_int(tokens[2], lineno), _parse_int(tokens[3], lineno))
                one_based = True
            else:
                if len(tokens) != 2:
                    raise GraphFormatError("expected header 'n m'", lineno)
                header = (_parse_int(tokens[0], lineno), _parse_int(tokens[1], lineno))
            if header[0] < 0 or header[1] < 0:
                raise GraphFormatError("negative vertex or edge count in header", lineno)
            continue

        if one_based:
            if tokens[0] != "e" or len(tokens) != 3:
                raise GraphFormatError("expected 'e u v'", lineno)
            u, v = (_parse_int(tok, lineno) - 1 for tok in tokens[1:])
        else:
            if len(tokens) != 2:
                raise GraphFormatError("expected an edge 'u v'", lineno)
            u, v = (_parse_int(tok, lineno) for tok in tokens)

        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex id out of range for n={n}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        edge = (min(u, v), max(u, v))
        if edge in seen:
            raise GraphFormatError(f"duplicate edge {edge}", lineno)
        seen.add(edge)
        edges.append(edge)

    if header is None:
        raise GraphFormatError("missing header")
    if len(edges) != header[1]:
        raise GraphFormatError(f"header announces {header[1]} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges)


def format_graph(graph: Graph, comments: Iterable[str] = ()) -> str:
    """Serialize to the 0-based edge-list format; canonical input round-trips."""
    lines = [f"# {comment}" for comment in comments]
    lines.append(f"{graph.n} {graph.m}")
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"
