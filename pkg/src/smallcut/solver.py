"""Algorithm dispatch and run reports.

``solve`` picks a solver for an instance and wraps its verdict in a
:class:`RunReport` that the CLI prints. With ``algorithm="auto"``:

* ``vertex`` goes to the important-separator solver (4^t * poly(n)),
* the terminal variants go to derandomized color coding, falling back to
  randomized color coding when the universal family cannot be built,
* ``exact-k`` goes to brute force.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from smallcut.colorcoding import UniversalFamilyTooLarge, default_trials, solve_colorcoding
from smallcut.fpt_t_solver import solve_by_t
from smallcut.oracle import brute_force_solve
from smallcut.problems import Certificate, Instance, Variant, Verdict

logger = logging.getLogger(__name__)

ALGORITHMS = ("auto", "important-separators", "colorcoding", "bruteforce")


class UnsupportedAlgorithmError(ValueError):
    """Raised for an unknown algorithm or one that cannot handle the variant."""


@dataclass(frozen=True)
class RunReport:
    """Outcome of one :func:`solve` call.

    Attributes:
        instance: The solved instance.
        verdict: The answer; ``verdict.certificate`` is set exactly for YES.
        requested: The algorithm the caller asked for.
        elapsed: Wall time in seconds.
        fallback: Why a different procedure than the preferred one ran, if so.
    """

    instance: Instance
    verdict: Verdict
    requested: str
    elapsed: float = 0.0
    fallback: str | None = None
    params: dict = field(default_factory=dict)

    @property
    def certificate(self) -> Certificate | None:
        return self.verdict.certificate

    @property
    def algorithm(self) -> str:
        return self.verdict.algorithm

    def summary_line(self, show_time: bool = False) -> str:
        """The single machine-readable ``RESULT key=value ...`` line."""
        instance = self.instance
        fields = [
            f"verdict={self.verdict.label}",
            f"variant={instance.variant.value}",
            f"n={instance.graph.n}",
            f"m={instance.graph.m}",
            f"k={instance.k}",
            f"t={instance.t}",
        ]
        if instance.terminal is not None:
            fields.append(f"terminal={instance.terminal}")
        fields.append(f"algorithm={self.algorithm}")
        for key in sorted(self.params):
            fields.append(f"{key}={self.params[key]}")
        if self.certificate is not None:
            fields.append(f"size={self.certificate.size}")
            fields.append(f"boundary={self.certificate.boundary_size}")
            fields.append("certificate=" + ",".join(map(str, self.certificate.sorted_members())))
        if self.verdict.error_bound is not None:
            fields.append(f"error_bound={self.verdict.error_bound:.3g}")
        if self.fallback is not None:
            fields.append("fallback=yes")
        if show_time:
            fields.append(f"time={self.elapsed:.3f}")
        return "RESULT " + " ".join(fields)

    def to_text(self, show_time: bool = False) -> str:
        """Human-readable report followed by the summary line."""
        instance = self.instance
        mark = "✓" if self.verdict.answer else "✗"
        lines = [f"{mark} {self.verdict.label}: {instance.describe()}"]
        lines.append(f"  algorithm: {self.algorithm}")
        if self.fallback is not None:
            lines.append(f"  fallback: {self.fallback}")
        if self.certificate is not None:
            cert = self.certificate
            lines.append(f"  X ({cert.size}): {' '.join(map(str, cert.sorted_members()))}")
            if instance.variant.uses_edge_cut:
                boundary = " ".join(f"{a}-{b}" for a, b in cert.sorted_boundary())
                lines.append(f"  ∂(X) ({cert.boundary_size}): {boundary}")
            else:
                boundary = " ".join(map(str, cert.sorted_boundary()))
                lines.append(f"  N(X) ({cert.boundary_size}): {boundary}")
        if self.verdict.error_bound is not None:
            lines.append(f"  one-sided NO, error probability <= {self.verdict.error_bound:.3g}")
        if show_time:
            lines.append(f"  time: {self.elapsed:.3f}s")
        lines.append(self.summary_line(show_time))
        return "\n".join(lines)


def _check_supported(variant: Variant, algorithm: str) -> None:
    if algorithm not in ALGORITHMS:
        raise UnsupportedAlgorithmError(
            f"unknown algorithm {algorithm!r} (choose from {', '.join(ALGORITHMS)})"
        )
    if algorithm == "important-separators" and variant is not Variant.VERTEX:
        raise UnsupportedAlgorithmError(
            f"important-separators solves the vertex variant only, not {variant.value}"
        )
    if algorithm == "colorcoding" and variant is Variant.EXACT_K:
        raise UnsupportedAlgorithmError("colorcoding cannot solve exact-k; use bruteforce")


def _colorcoding(
    instance: Instance,
    seed: int,
    trials: int | None,
    max_workers: int,
) -> tuple[Verdict, str | None, dict]:
    if trials is not None:
        verdict = solve_colorcoding(instance, "randomized", seed, trials, max_workers)
        return verdict, None, {"trials": trials}
    try:
        verdict = solve_colorcoding(instance, "derandomized", seed, max_workers=max_workers)
        return verdict, None, {"colorings": verdict.details.get("colorings", 0)}
    except UniversalFamilyTooLarge as exc:
        count = default_trials(instance.k, instance.t)
        note = f"derandomization infeasible ({exc}); ran {count} random colorings"
        logger.info(note)
        verdict = solve_colorcoding(instance, "randomized", seed, count, max_workers)
        return verdict, note, {"trials": count}


def solve(
    instance: Instance,
    algorithm: str = "auto",
    seed: int = 0,
    trials: int | None = None,
    max_workers: int = 1,
) -> RunReport:
    """Solve an instance with the requested or automatically chosen algorithm.

    Args:
        instance: The instance.
        algorithm: One of ``auto``, ``important-separators``,
            ``colorcoding`` or ``bruteforce``.
        seed: Seed for color coding; equal seeds give equal reports.
        trials: Force randomized color coding with this many colorings.
        max_workers: Thread cap handed to the solver.

    Returns:
        RunReport: Verdict plus bookkeeping.

    Raises:
        UnsupportedAlgorithmError: For unknown or mismatched algorithms.
        SearchSpaceTooLarge: If brute force is requested and refused.

    Example:
        >>> from smallcut.graph import Graph
        >>> path = Graph.from_edges(10, [(i, i + 1) for i in range(9)])
        >>> solve(Instance(path, "vertex", 3, 1)).verdict.label
        'YES'
    """
    variant = instance.variant
    _check_supported(variant, algorithm)
    chosen = algorithm
    if chosen == "auto":
        if variant is Variant.VERTEX:
            chosen = "important-separators"
        elif variant is Variant.EXACT_K:
            chosen = "bruteforce"
        else:
            chosen = "colorcoding"
    logger.debug("solving %s with %s", instance.describe(), chosen)

    fallback = None
    params: dict = {}
    start = time.perf_counter()
    if chosen == "important-separators":
        verdict = solve_by_t(instance.graph, instance.k, instance.t, max_workers=max_workers)
    elif chosen == "colorcoding":
        verdict, fallback, params = _colorcoding(instance, seed, trials, max_workers)
    else:
        verdict = brute_force_solve(instance)
    elapsed = time.perf_counter() - start
    return RunReport(instance, verdict, algorithm, elapsed, fallback, params)
