"""Problem variants, instances, certificates and verdicts.

The four problems share one instance shape ``(G, k, t, s)``:

* ``vertex``: is there a non-empty X with |X| <= k and |N(X)| <= t?
* ``vertex-terminal``: as above with the terminal s in X.
* ``edge-terminal``: s in X, |X| <= k and |∂(X)| <= t.
* ``exact-k``: |X| = k and |N(X)| <= t.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from smallcut.graph import Graph, edge_boundary, neighborhood, vertex_set


class Variant(str, Enum):
    VERTEX = "vertex"
    VERTEX_TERMINAL = "vertex-terminal"
    EDGE_TERMINAL = "edge-terminal"
    EXACT_K = "exact-k"

    @property
    def has_terminal(self) -> bool:
        return self in (Variant.VERTEX_TERMINAL, Variant.EDGE_TERMINAL)

    @property
    def uses_edge_cut(self) -> bool:
        return self is Variant.EDGE_TERMINAL

    @classmethod
    def parse(cls, name: str | Variant) -> Variant:
        """Accept a Variant, its value, or the long alias ``exact-k-vertex``."""
        if isinstance(name, Variant):
            return name
        if name == "exact-k-vertex":
            return cls.EXACT_K
        try:
            return cls(name)
        except ValueError:
            choices = ", ".join(v.value for v in cls)
            raise InvalidInstanceError(f"unknown variant {name!r} (choose from {choices})") from None


class InvalidInstanceError(ValueError):
    """Raised for instance parameters that break the problem definition."""


@dataclass(frozen=True)
class Instance:
    """One problem instance.

    Attributes:
        graph: The input graph.
        variant: Which of the four problems is asked.
        k: Size bound on X (exact size for ``exact-k``), at least 1.
        t: Bound on |N(X)| (or |∂(X)| for ``edge-terminal``), at least 0.
        terminal: The vertex s, present exactly for the terminal variants.
    """

    graph: Graph
    variant: Variant
    k: int
    t: int
    terminal: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.parse(self.variant))
        if self.k < 1:
            raise InvalidInstanceError(f"k must be at least 1, got {self.k}")
        if self.t < 0:
            raise InvalidInstanceError(f"t must be non-negative, got {self.t}")
        if self.variant.has_terminal:
            if self.terminal is None:
                raise InvalidInstanceError(f"variant {self.variant.value} needs a terminal")
            if not 0 <= self.terminal < self.graph.n:
                raise InvalidInstanceError(
                    f"terminal {self.terminal} outside [0, {self.graph.n})"
                )
        elif self.terminal is not None:
            raise InvalidInstanceError(f"variant {self.variant.value} takes no terminal")

    def describe(self) -> str:
        text = f"variant={self.variant.value} n={self.graph.n} m={self.graph.m} k={self.k} t={self.t}"
        if self.terminal is not None:
            text += f" terminal={self.terminal}"
        return text


@dataclass(frozen=True)
class Certificate:
    """A solution set X together with its computed boundary.

    ``boundary`` holds N(X) for the vertex-cut variants and ∂(X) (edges as
    ``(min, max)`` pairs) for ``edge-terminal``.
    """

    members: frozenset[int]
    boundary: frozenset
    variant: Variant

    @classmethod
    def build(cls, graph: Graph, members: Iterable[int], variant: Variant | str) -> Certificate:
        variant = Variant.parse(variant)
        chosen = vertex_set(graph, members)
        if variant.uses_edge_cut:
            boundary = edge_boundary(graph, chosen)
        else:
            boundary = neighborhood(graph, chosen)
        return cls(chosen, boundary, variant)

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def boundary_size(self) -> int:
        return len(self.boundary)

    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def sorted_boundary(self) -> list:
        return sorted(self.boundary)


@dataclass(frozen=True)
class Verdict:
    """A YES/NO answer; YES always ships a certificate.

    Attributes:
        answer: True for YES.
        certificate: Witness for YES answers, None otherwise.
        algorithm: Name of the procedure that produced the answer.
        error_bound: For one-sided randomized NO answers, an upper bound on
            the probability that the answer is wrong; None when exact.
        details: Free-form diagnostics (family sizes, trial counts, ...).
    """

    answer: bool
    certificate: Certificate | None = None
    algorithm: str = ""
    error_bound: float | None = None
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.answer and self.certificate is None:
            raise ValueError("a YES verdict needs a certificate")
        if not self.answer and self.certificate is not None:
            raise ValueError("a NO verdict carries no certificate")

    @classmethod
    def yes(cls, certificate: Certificate, algorithm: str, **details) -> Verdict:
        return cls(True, certificate, algorithm, details=details)

    @classmethod
    def no(cls, algorithm: str, error_bound: float | None = None, **details) -> Verdict:
        return cls(False, None, algorithm, error_bound, details=details)

    @property
    def label(self) -> str:
        return "YES" if self.answer else "NO"
