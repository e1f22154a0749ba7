"""Clique reductions producing hard cutting instances.

Each reduction maps a Clique instance (G, k) to a cutting instance that is
a YES instance exactly when G has a clique on k vertices:

* :func:`reduce_thm2` to Cutting at Most k Vertices (W[1]-hardness in k),
* :func:`reduce_thm2_terminal` to the terminal variant (same argument),
* :func:`reduce_thm4` to the terminal variant with t = k (W[1]-hardness in t),
* :func:`reduce_thm5` to the edge-cut terminal variant on regular graphs
  (NP-hardness).

Every output vertex is labelled in ``vertex_map`` with its gadget role so
instances can be inspected after serialization.

Example:
    >>> import networkx as nx
    >>> from smallcut.graph import Graph
    >>> from smallcut.reductions import CliqueInstance, reduce_thm4
    >>> reduced = reduce_thm4(CliqueInstance(Graph.from_networkx(nx.complete_graph(3)), 2))
    >>> reduced.instance.k, reduced.instance.t
    (4, 2)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import networkx as nx

from smallcut.graph import Graph
from smallcut.problems import Instance, Variant
from smallcut.utils import format_instance


class ReductionError(ValueError):
    """Raised when a Clique instance is outside a reduction's domain."""


@dataclass(frozen=True)
class CliqueInstance:
    """Does ``graph`` contain a clique on ``k`` vertices?"""

    graph: Graph
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ReductionError(f"clique size must be at least 2, got {self.k}")
        if self.k > self.graph.n:
            raise ReductionError(f"clique size {self.k} exceeds n={self.graph.n}")


class GadgetVertex(NamedTuple):
    """Role of one output vertex and the source object it stands for."""

    role: str
    source: int | tuple[int, int] | None = None

    def describe(self) -> str:
        if self.source is None:
            return self.role
        if isinstance(self.source, tuple):
            return f"{self.role} {self.source[0]}-{self.source[1]}"
        return f"{self.role} {self.source}"


@dataclass(frozen=True)
class ReducedInstance:
    """Output of a reduction.

    Attributes:
        instance: The cutting instance.
        vertex_map: ``vertex_map[v]`` labels output vertex v.
        reduction: Which reduction produced it (``"thm2"``, ``"thm2t"``,
            ``"thm4"``, ``"thm5"``).
        scaled: True when H_V was given a caller-chosen size instead of n^3.
    """

    instance: Instance
    vertex_map: tuple[GadgetVertex, ...]
    reduction: str
    scaled: bool = False

    def role_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for gadget in self.vertex_map:
            counts[gadget.role] = counts.get(gadget.role, 0) + 1
        return counts

    def to_text(self) -> str:
        comments = [f"reduction={self.reduction}{' (scaled)' if self.scaled else ''}"]
        comments += [f"map {v} {gadget.describe()}" for v, gadget in enumerate(self.vertex_map)]
        return format_instance(self.instance, comments)


def _clique_edges(size: int, offset: int) -> list[tuple[int, int]]:
    return [(offset + i, offset + j) for i in range(size) for j in range(i + 1, size)]


def _thm2_graph(src: CliqueInstance, scale: int | None, terminal: bool):
    g, k = src.graph, src.k
    n, m = g.n, g.m
    if m == 0:
        raise ReductionError("source graph has no edges")
    pairs = math.comb(k, 2)
    k_prime = pairs + (1 if terminal else 0)
    t_prime = k + m - pairs
    if t_prime < 0:
        raise ReductionError(f"t' = k + m - C(k,2) = {t_prime} is negative")

    h_v = n**3
    if scale is not None:
        if scale < max(n, k_prime + t_prime + 1):
            raise ReductionError(
                f"scaled H_V size {scale} must be at least max(n, k'+t'+1) = {max(n, k_prime + t_prime + 1)}"
            )
        h_v = scale

    vertex_map = [GadgetVertex("H_V", v) for v in range(n)]
    vertex_map += [GadgetVertex("H_V", None)] * (h_v - n)
    vertex_map += [GadgetVertex("H_E", e) for e in g.edges]
    edges = _clique_edges(h_v, 0) + _clique_edges(m, h_v)
    for index, (a, b) in enumerate(g.edges):
        edges += [(a, h_v + index), (b, h_v + index)]
    s = None
    if terminal:
        s = h_v + m
        vertex_map.append(GadgetVertex("terminal"))
        edges += [(h_v + index, s) for index in range(m)]
    graph = Graph.from_edges(len(vertex_map), edges)
    return graph, vertex_map, k_prime, t_prime, s, scale is not None


def reduce_thm2(src: CliqueInstance, scale: int | None = None) -> ReducedInstance:
    """Clique to Cutting at Most k Vertices.

    H_V is a clique on n^3 vertices whose first n vertices stand for V(G);
    H_E is a clique on the m edges of G; each edge vertex is joined to its
    two endpoint vertices. Parameters: k' = C(k,2), t' = k + m - C(k,2).

    Args:
        src: The Clique instance (k >= 2, at least one edge).
        scale: Optional H_V size replacing n^3 (at least k' + t' + 1). Any size
            above k' + t' keeps X out of H_V, so scaled outputs stay equivalent
            to the source; they are flagged nonetheless.

    Raises:
        ReductionError: If G has no edges, t' would be negative, or the
            scaled size is too small.
    """
    graph, vertex_map, k_prime, t_prime, _, scaled = _thm2_graph(src, scale, terminal=False)
    instance = Instance(graph, Variant.VERTEX, k_prime, t_prime)
    return ReducedInstance(instance, tuple(vertex_map), "thm2", scaled)


def reduce_thm2_terminal(src: CliqueInstance, scale: int | None = None) -> ReducedInstance:
    """Clique to the terminal variant: as :func:`reduce_thm2` with s inside H_E.

    The terminal joins the H_E clique and k' = C(k,2) + 1; t' is unchanged.
    For k <= 3 the terminal alone has |N(s)| = m <= t', so the output is a
    YES instance whatever G is; equivalence with the source needs k >= 4.
    """
    graph, vertex_map, k_prime, t_prime, s, scaled = _thm2_graph(src, scale, terminal=True)
    instance = Instance(graph, Variant.VERTEX_TERMINAL, k_prime, t_prime, s)
    return ReducedInstance(instance, tuple(vertex_map), "thm2t", scaled)


def reduce_thm4(src: CliqueInstance) -> ReducedInstance:
    """Clique to the terminal variant with separator budget t = k.

    Vertex 0 is the terminal s, followed by one vertex per vertex of G (each
    adjacent to s) and one vertex per edge of G (adjacent to its endpoints).
    Parameters: k' = n - k + m - C(k,2) + 1, t' = k.

    Raises:
        ReductionError: If k' would be smaller than 1.
    """
    g, k = src.graph, src.k
    n, m = g.n, g.m
    k_prime = n - k + m - math.comb(k, 2) + 1
    if k_prime < 1:
        raise ReductionError(f"k' = n - k + m - C(k,2) + 1 = {k_prime} is below 1")
    vertex_map = [GadgetVertex("terminal")]
    vertex_map += [GadgetVertex("vertex-copy", v) for v in range(n)]
    vertex_map += [GadgetVertex("edge-copy", e) for e in g.edges]
    edges = [(0, 1 + v) for v in range(n)]
    for index, (a, b) in enumerate(g.edges):
        edge_vertex = 1 + n + index
        edges += [(1 + a, edge_vertex), (1 + b, edge_vertex)]
    instance = Instance(Graph.from_edges(len(vertex_map), edges), Variant.VERTEX_TERMINAL, k_prime, k, 0)
    return ReducedInstance(instance, tuple(vertex_map), "thm4")


def reduce_thm5(src: CliqueInstance) -> ReducedInstance:
    """Clique on a d-regular graph to the edge-cut terminal variant.

    A base clique of d*n vertices holds the terminal s (vertex 0) and d
    distinguished vertices (1..d). Each vertex of G gets a copy adjacent to
    all distinguished vertices; each edge of G gets a copy adjacent to its
    two endpoint copies. Parameters: k' = dn + k + C(k,2),
    t' = dn - 2 C(k,2).

    Raises:
        ReductionError: If G is not regular, is edgeless, or t' would be
            negative.
    """
    g, k = src.graph, src.k
    d = g.regular_degree()
    if d is None:
        raise ReductionError("source graph is not regular")
    if d == 0:
        raise ReductionError("source graph is edgeless")
    n = g.n
    base = d * n
    pairs = math.comb(k, 2)
    k_prime = base + k + pairs
    t_prime = base - 2 * pairs
    if t_prime < 0:
        raise ReductionError(f"t' = dn - 2 C(k,2) = {t_prime} is negative")

    vertex_map = [GadgetVertex("terminal")]
    vertex_map += [GadgetVertex("base-distinguished", i) for i in range(d)]
    vertex_map += [GadgetVertex("base-clique")] * (base - d - 1)
    vertex_map += [GadgetVertex("vertex-copy", v) for v in range(n)]
    vertex_map += [GadgetVertex("edge-copy", e) for e in g.edges]
    edges = _clique_edges(base, 0)
    for v in range(n):
        edges += [(1 + i, base + v) for i in range(d)]
    for index, (a, b) in enumerate(g.edges):
        edge_vertex = base + n + index
        edges += [(base + a, edge_vertex), (base + b, edge_vertex)]
    instance = Instance(Graph.from_edges(len(vertex_map), edges), Variant.EDGE_TERMINAL, k_prime, t_prime, 0)
    return ReducedInstance(instance, tuple(vertex_map), "thm5")


REDUCTIONS = {
    "2": reduce_thm2,
    "2t": reduce_thm2_terminal,
    "4": reduce_thm4,
    "5": reduce_thm5,
}


def has_clique(graph: Graph, k: int) -> bool:
    """Exhaustive clique check through networkx's maximal-clique enumeration."""
    if k <= 1:
        return graph.n >= k
    return any(len(clique) >= k for clique in nx.find_cliques(graph.to_networkx()))


def generate_random_graph(n: int, p: float, seed: int | None = None) -> Graph:
    """Erdős–Rényi G(n, p) sample, deterministic for a given seed."""
    if not 0 <= p <= 1:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def generate_regular_graph(d: int, n: int, seed: int | None = None) -> Graph:
    """Uniform random d-regular graph on n vertices (n * d must be even)."""
    return Graph.from_networkx(nx.random_regular_graph(d, n, seed=seed))
