"""Brute-force ground truth for the four problem variants.

Every other solver is checked against this module. Sets are handled as
integer bitmasks (bit v set means vertex v is in the set) so that the
exhaustive searches stay usable on graphs of a few dozen vertices.

For the three "at most k" variants a solution may be assumed connected (a
connected component of G[X] has its neighborhood inside N(X)), so the
default search enumerates connected sets only. ``exact-k`` needs every
k-subset.

Vertices that cannot belong to any solution are pruned first: if
``deg(x) - (k - 1) > t`` then every X containing x has more than t boundary
vertices (and more than t boundary edges).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import combinations

from smallcut.graph import Graph, VertexSet, vertex_set
from smallcut.problems import Certificate, Instance, Variant, Verdict

logger = logging.getLogger(__name__)

ALGORITHM = "bruteforce"

MAX_SEARCH_SPACE = 2**22
MAX_CONNECTED_K = 8


class SearchSpaceTooLarge(ValueError):
    """Raised when brute force would examine more than the allowed number of sets."""


def _masks(graph: Graph) -> list[int]:
    return [sum(1 << w for w in adj) for adj in graph.adjacency]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _neighborhood_mask(adj: list[int], members: int) -> int:
    result = 0
    for v in _bits(members):
        result |= adj[v]
    return result & ~members


def _edge_boundary_size(adj: list[int], members: int) -> int:
    return sum((adj[v] & ~members).bit_count() for v in _bits(members))


def _reach_mask(adj: list[int], sources: int, blocked: int) -> int:
    seen = sources & ~blocked
    frontier = seen
    while frontier:
        grown = 0
        for v in _bits(frontier):
            grown |= adj[v]
        frontier = grown & ~seen & ~blocked
        seen |= frontier
    return seen


def _is_connected_mask(adj: list[int], members: int) -> bool:
    if not members:
        return False
    start = members & -members
    return _reach_mask(adj, start, ~members) == members


def _boundary_size(adj: list[int], members: int, edge_cut: bool) -> int:
    if edge_cut:
        return _edge_boundary_size(adj, members)
    return _neighborhood_mask(adj, members).bit_count()


def enumerate_connected_sets(
    graph: Graph,
    max_size: int,
    root: int | None = None,
    allowed: Iterable[int] | None = None,
) -> Iterator[VertexSet]:
    """Yield every connected vertex set of size at most ``max_size`` exactly once.

    Sets are grown from their smallest vertex by frontier extension: a
    vertex joins the extension set only if it is new to the closed
    neighborhood of the current set. With ``root`` given, only sets
    containing the root are produced.
    """
    adj = _masks(graph)
    allowed_mask = _to_mask(range(graph.n) if allowed is None else allowed)
    for members in _connected_masks(adj, graph.n, max_size, allowed_mask, root):
        yield frozenset(_bits(members))


def _connected_masks(
    adj: list[int],
    n: int,
    max_size: int,
    allowed: int,
    root: int | None,
) -> Iterator[int]:
    roots = [root] if root is not None else list(_bits(allowed))

    def grow(members: int, extension: int, closed: int, size: int, above: int) -> Iterator[int]:
        yield members
        if size == max_size:
            return
        while extension:
            low = extension & -extension
            extension ^= low
            w = low.bit_length() - 1
            fresh = adj[w] & above & ~closed
            yield from grow(members | low, extension | fresh, closed | adj[w] | low, size + 1, above)

    for r in roots:
        if max_size < 1 or not allowed >> r & 1:
            continue
        if root is None:
            above = allowed & ~((1 << (r + 1)) - 1)
        else:
            above = allowed & ~(1 << r)
        start = 1 << r
        yield from grow(start, adj[r] & above, start | adj[r], 1, above)


def _light_vertices(graph: Graph, k: int, t: int) -> int:
    return _to_mask(v for v in range(graph.n) if graph.degree(v) - (k - 1) <= t)


def _connected_estimate(graph: Graph, light: int, k: int, rooted: bool) -> int:
    degrees = [graph.degree(v) for v in _bits(light)]
    if not degrees:
        return 0
    branching = max(1, max(degrees))
    return (1 if rooted else len(degrees)) * branching ** (k - 1)


def _subset_count(pool: int, k: int, exact: bool) -> int:
    if exact:
        return math.comb(pool, k)
    return sum(math.comb(pool, size) for size in range(0, k + 1))


def _witness(instance: Instance, mask: int) -> Verdict:
    certificate = Certificate.build(instance.graph, _bits(mask), instance.variant)
    return Verdict.yes(certificate, ALGORITHM)


def brute_force_solve(
    instance: Instance,
    strategy: str = "auto",
    max_space: int = MAX_SEARCH_SPACE,
) -> Verdict:
    """Exact verdict by exhaustive search.

    Args:
        instance: Any of the four variants.
        strategy: ``"connected"`` (connected sets only, at-most-k variants),
            ``"subsets"`` (all vertex subsets) or ``"auto"`` (cheaper of the
            two; ``exact-k`` always uses subsets).
        max_space: Largest number of candidate sets the search may examine.

    Returns:
        Verdict: YES with the lexicographically smallest connected solution
        (at-most-k variants) or the lexicographically smallest k-subset
        (``exact-k``); NO otherwise.

    Raises:
        SearchSpaceTooLarge: If the chosen strategy would exceed ``max_space``.
        ValueError: For an unknown strategy or ``connected`` with ``exact-k``.
    """
    graph, k, t, variant = instance.graph, instance.k, instance.t, instance.variant
    adj = _masks(graph)
    light = _light_vertices(graph, k, t)
    edge_cut = variant.uses_edge_cut

    if variant.has_terminal and not light >> instance.terminal & 1:
        return Verdict.no(ALGORITHM)

    if variant is Variant.EXACT_K:
        if strategy == "connected":
            raise ValueError("exact-k solutions need not be connected; use subsets")
        pool = light.bit_count()
        if math.comb(pool, k) > max_space:
            raise SearchSpaceTooLarge(f"C({pool}, {k}) subsets exceed {max_space}")
        for combo in combinations(_bits(light), k):
            members = _to_mask(combo)
            if _neighborhood_mask(adj, members).bit_count() <= t:
                return _witness(instance, members)
        return Verdict.no(ALGORITHM)

    rooted = variant.has_terminal
    pool = light.bit_count() - (1 if rooted else 0)
    subset_cost = _subset_count(pool, k - 1 if rooted else k, exact=False)
    connected_cost = _connected_estimate(graph, light, k, rooted)
    if strategy == "auto":
        connected_ok = k <= MAX_CONNECTED_K and connected_cost <= max_space
        if connected_ok and connected_cost <= subset_cost:
            strategy = "connected"
        elif subset_cost <= max_space:
            strategy = "subsets"
        elif connected_ok:
            strategy = "connected"
        else:
            raise SearchSpaceTooLarge(
                f"neither ~{connected_cost} connected sets nor {subset_cost} subsets fit in {max_space}"
            )
    elif strategy == "subsets":
        if subset_cost > max_space:
            raise SearchSpaceTooLarge(f"{subset_cost} subsets exceed {max_space}")
    elif strategy != "connected":
        raise ValueError(f"unknown strategy {strategy!r}")
    logger.debug("brute force on %s with strategy %s", instance.describe(), strategy)

    def fits(members: int) -> bool:
        return _boundary_size(adj, members, edge_cut) <= t

    if strategy == "connected":
        root = instance.terminal if rooted else None
        best = None
        current_root = None
        for members in _connected_masks(adj, graph.n, k, light, root):
            low = (members & -members).bit_length() - 1
            if best is not None and low != current_root and not rooted:
                break
            if fits(members):
                key = sorted(_bits(members))
                if best is None or key < best[0]:
                    best = (key, members)
                    current_root = low
        return _witness(instance, best[1]) if best else Verdict.no(ALGORITHM)

    best = None
    if rooted:
        others = [v for v in _bits(light) if v != instance.terminal]
        base = 1 << instance.terminal
        sizes = range(0, k)
    else:
        others = list(_bits(light))
        base = 0
        sizes = range(1, k + 1)
    for size in sizes:
        for combo in combinations(others, size):
            members = base | _to_mask(combo)
            if fits(members) and _is_connected_mask(adj, members):
                key = sorted(_bits(members))
                if best is None or key < best[0]:
                    best = (key, members)
    return _witness(instance, best[1]) if best else Verdict.no(ALGORITHM)


def naive_important_separators(
    graph: Graph,
    sources: int | Iterable[int],
    sinks: int | Iterable[int],
    t: int,
    max_space: int = MAX_SEARCH_SPACE,
) -> list[VertexSet]:
    """All important (X, Y)-separators of size <= t, straight from the definition.

    Every candidate S of size at most t is tested for separation and
    minimality (no S - {v} separates), then for domination by another
    separator T with |T| <= |S| and R(X, S) ⊊ R(X, T).

    Raises:
        SearchSpaceTooLarge: If 2^n exceeds ``max_space``.
    """
    if 2**graph.n > max_space:
        raise SearchSpaceTooLarge(f"2^{graph.n} subsets exceed {max_space}")
    x = _to_mask(vertex_set(graph, sources))
    y = _to_mask(vertex_set(graph, sinks))
    adj = _masks(graph)
    pool = [v for v in range(graph.n) if not (x | y) >> v & 1]

    def separates(members: int) -> bool:
        return not _reach_mask(adj, x, members) & y

    separators = []
    for size in range(0, min(t, len(pool)) + 1):
        for combo in combinations(pool, size):
            members = _to_mask(combo)
            if separates(members):
                separators.append((size, members, _reach_mask(adj, x, members)))

    important = []
    for size, members, reach in separators:
        if any(separates(members & ~(1 << v)) for v in _bits(members)):
            continue
        dominated = any(
            other_size <= size and reach & other_reach == reach and other_reach != reach
            for other_size, _, other_reach in separators
        )
        if not dominated:
            important.append(frozenset(_bits(members)))
    return sorted(important, key=lambda s: (len(s), sorted(s)))


@dataclass(frozen=True)
class CertificateCheck:
    """Outcome of :func:`verify_certificate`; truthy when the certificate is valid."""

    valid: bool
    reason: str = "ok"

    def __bool__(self) -> bool:
        return self.valid


def verify_certificate(instance: Instance, members: Iterable[int] | Certificate) -> CertificateCheck:
    """Independently check a proposed solution against the instance.

    The boundary is recomputed from the graph; a boundary stored in a
    Certificate must agree with it.
    """
    graph = instance.graph
    stored_boundary = None
    if isinstance(members, Certificate):
        stored_boundary = members.boundary
        members = members.members
    listed = list(members)
    if not listed:
        return CertificateCheck(False, "empty set")
    if len(set(listed)) != len(listed):
        return CertificateCheck(False, "duplicate vertex ids")
    if any(not isinstance(v, int) or not 0 <= v < graph.n for v in listed):
        return CertificateCheck(False, "vertex id out of range")
    chosen = frozenset(listed)

    if instance.variant is Variant.EXACT_K:
        if len(chosen) != instance.k:
            return CertificateCheck(False, f"set size {len(chosen)} differs from k={instance.k}")
    elif len(chosen) > instance.k:
        return CertificateCheck(False, f"set too large: {len(chosen)} > k={instance.k}")

    if instance.variant.has_terminal and instance.terminal not in chosen:
        return CertificateCheck(False, f"terminal {instance.terminal} missing from set")

    recomputed = Certificate.build(graph, chosen, instance.variant)
    if stored_boundary is not None and stored_boundary != recomputed.boundary:
        return CertificateCheck(False, "stored boundary does not match the graph")
    if recomputed.boundary_size > instance.t:
        return CertificateCheck(
            False, f"boundary too large: {recomputed.boundary_size} > t={instance.t}"
        )
    return CertificateCheck(True)
