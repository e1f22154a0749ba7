"""Color coding for the three "at most k" problems, parameterized by k + t.

Given a red/blue coloring, a solution X can be read off the maximal
connected red sets: if X is connected, colored red and N(X) is colored blue,
then X is itself a red component. A uniformly random coloring achieves this
with probability at least 2^-(k+t); trying every coloring of an
(n, k+t)-universal family makes the search deterministic.

Example:
    >>> from smallcut.graph import Graph
    >>> from smallcut.problems import Instance
    >>> from smallcut.colorcoding import solve_colorcoding
    >>> star = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    >>> solve_colorcoding(Instance(star, "vertex", k=1, t=1)).label
    'YES'
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from smallcut.graph import Graph, components, edge_boundary, neighborhood
from smallcut.problems import Certificate, Instance, Variant, Verdict
from smallcut.utils import first_hit

logger = logging.getLogger(__name__)

RED = True
BLUE = False

DEFAULT_DELTA = 0.01
MAX_VERIFICATION_WORK = 10**7

# A coloring is a length-n boolean vector, True meaning red. It need not be a
# proper coloring.
Coloring = np.ndarray


class UniversalFamilyTooLarge(ValueError):
    """Raised when C(n, ell) * 2^ell exceeds the exhaustive-verification bound."""


@dataclass(frozen=True, eq=False)
class UniversalFamily:
    """An (n, ell)-universal family of red/blue colorings.

    Attributes:
        colorings: Boolean matrix of shape ``(size, n)``; row i is coloring i.
        n: Length of each coloring.
        ell: Strength: every ell positions see all 2^ell patterns.
    """

    colorings: np.ndarray
    n: int
    ell: int

    @property
    def size(self) -> int:
        return int(self.colorings.shape[0])

    def __iter__(self) -> Iterator[Coloring]:
        return iter(self.colorings)

    def __len__(self) -> int:
        return self.size


def _pattern_codes(colorings: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    """Pattern index of every (coloring, subset) pair as an integer in [0, 2^ell)."""
    weights = 1 << np.arange(subsets.shape[1], dtype=np.int64)
    return (colorings[:, subsets].astype(np.int64) * weights).sum(axis=-1)


def is_universal(colorings: np.ndarray, ell: int) -> bool:
    """Exhaustively check that every ell positions see all 2^ell patterns."""
    colorings = np.atleast_2d(np.asarray(colorings, dtype=bool))
    n = colorings.shape[1]
    if ell > n:
        return False
    subsets = np.array(list(combinations(range(n), ell)), dtype=np.int64).reshape(-1, ell)
    codes = _pattern_codes(colorings, subsets)
    seen = np.zeros((subsets.shape[0], 1 << ell), dtype=bool)
    seen[np.arange(subsets.shape[0])[None, :], codes] = True
    return bool(seen.all())


@lru_cache(maxsize=64)
def build_universal_family(
    n: int,
    ell: int,
    seed: int = 0,
    max_work: int = MAX_VERIFICATION_WORK,
) -> UniversalFamily:
    """Build an (n, ell)-universal family by randomized greedy covering.

    Every (subset, pattern) pair is tracked explicitly. Each round draws a
    random coloring, forces the first uncovered pair onto it and keeps it,
    so each round covers at least one new pair and the result is verified
    universal by construction. The size is typically a small multiple of
    2^ell * ell * log(n); the asymptotic bound of splitter-based constructions
    is not promised.

    Raises:
        ValueError: If ell is not in [1, n].
        UniversalFamilyTooLarge: If C(n, ell) * 2^ell exceeds ``max_work``.
    """
    if ell < 1:
        raise ValueError(f"strength must be at least 1, got {ell}")
    if ell > n:
        raise ValueError(f"strength {ell} exceeds length {n}")
    work = math.comb(n, ell) << ell
    if work > max_work:
        raise UniversalFamilyTooLarge(
            f"(n={n}, ell={ell}) needs {work} coverage checks, above the bound {max_work}"
        )

    rng = np.random.default_rng(seed)
    subsets = np.array(list(combinations(range(n), ell)), dtype=np.int64).reshape(-1, ell)
    rows = np.arange(subsets.shape[0])
    covered = np.zeros((subsets.shape[0], 1 << ell), dtype=bool)
    bits = np.arange(ell)
    kept: list[np.ndarray] = []

    while True:
        flat = int(np.argmin(covered))
        if covered.flat[flat]:
            break
        subset_index, pattern = divmod(flat, 1 << ell)
        coloring = rng.random(n) < 0.5
        coloring[subsets[subset_index]] = ((pattern >> bits) & 1).astype(bool)
        covered[rows, _pattern_codes(coloring[None, :], subsets)[0]] = True
        kept.append(coloring)

    logger.debug("universal family (n=%d, ell=%d): %d colorings", n, ell, len(kept))
    return UniversalFamily(np.array(kept, dtype=bool), n, ell)


def solve_two_colored(
    graph: Graph,
    coloring: Coloring,
    k: int,
    t: int,
    variant: Variant | str,
    terminal: int | None = None,
) -> Certificate | None:
    """Find a red component X with |X| <= k whose boundary has size <= t.

    A maximal connected red set has an all-blue neighborhood by maximality,
    so only the sizes need checking. The terminal variants look at the red
    component of s alone; ``edge-terminal`` bounds |∂(X)| instead of |N(X)|.

    Raises:
        ValueError: For ``exact-k``, or a terminal variant without terminal.
    """
    variant = Variant.parse(variant)
    if variant is Variant.EXACT_K:
        raise ValueError("color coding does not handle the exact-k variant")
    red = [v for v in range(graph.n) if coloring[v]]

    if variant.has_terminal:
        if terminal is None:
            raise ValueError(f"variant {variant.value} needs a terminal")
        if not coloring[terminal]:
            return None
        candidates = [c for c in components(graph, red) if terminal in c]
    else:
        candidates = components(graph, red)

    for component in candidates:
        if len(component) > k:
            continue
        if variant.uses_edge_cut:
            boundary = edge_boundary(graph, component)
        else:
            boundary = neighborhood(graph, component)
        if len(boundary) <= t:
            return Certificate(component, boundary, variant)
    return None


def default_trials(k: int, t: int, delta: float = DEFAULT_DELTA) -> int:
    """Random colorings needed to miss an existing solution with probability <= delta."""
    return math.ceil(math.log(1 / delta) * 2 ** (k + t))


def _random_colorings(n: int, trials: int, seed: int) -> Iterator[Coloring]:
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        yield rng.random(n) < 0.5


def solve_colorcoding(
    instance: Instance,
    mode: str = "derandomized",
    seed: int = 0,
    trials: int | None = None,
    max_workers: int = 1,
) -> Verdict:
    """Solve a vertex, vertex-terminal or edge-terminal instance by color coding.

    Args:
        instance: The instance; ``exact-k`` is rejected.
        mode: ``"derandomized"`` tries every coloring of an
            (n, k+t)-universal family and is exact. ``"randomized"`` tries
            ``trials`` uniformly random colorings; a YES is always correct and
            a NO is wrong with probability at most ``error_bound``.
        seed: Seed for the family construction or the random colorings;
            identical seeds reproduce identical verdicts.
        trials: Number of random colorings (randomized mode). Defaults to
            ``ceil(ln(1/0.01) * 2^(k+t))``.
        max_workers: Colorings may be checked by this many threads; the
            certificate of the lowest-index successful coloring is returned.

    Raises:
        ValueError: For ``exact-k`` or an unknown mode.
        UniversalFamilyTooLarge: In derandomized mode when the family cannot
            be verified within the work bound; callers fall back to
            randomized mode.
    """
    if instance.variant is Variant.EXACT_K:
        raise ValueError("color coding does not handle the exact-k variant")
    graph, k, t = instance.graph, instance.k, instance.t
    if graph.n == 0:
        return Verdict.no(f"colorcoding-{mode}")
    ell = min(k + t, graph.n)

    if mode == "derandomized":
        family = build_universal_family(graph.n, ell, seed)
        colorings: Iterator[Coloring] = iter(family)
        count = family.size
        algorithm = "colorcoding-derandomized"
    elif mode == "randomized":
        count = trials if trials is not None else default_trials(k, t)
        colorings = _random_colorings(graph.n, count, seed)
        algorithm = "colorcoding-randomized"
    else:
        raise ValueError(f"unknown color coding mode {mode!r}")

    def attempt(coloring: Coloring) -> Certificate | None:
        return solve_two_colored(graph, coloring, k, t, instance.variant, instance.terminal)

    hit = first_hit(colorings, attempt, max_workers=max_workers)
    if hit is not None:
        index, certificate = hit
        return Verdict.yes(certificate, algorithm, colorings=count, coloring_index=index)
    error_bound = None
    if mode == "randomized":
        error_bound = (1 - 2.0 ** -(k + t)) ** count
    return Verdict.no(algorithm, error_bound, colorings=count)
