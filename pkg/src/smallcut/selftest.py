"""Cross-solver equivalence sweep.

Random instances are solved by the fast solvers and compared against the
brute-force oracle. Each case is drawn from its own seeded generator, so a
sweep is reproducible regardless of the number of worker threads. Checks:

* ``fpt-t``: solve_by_t versus the oracle, with every AnchorState inspected
  for R-containment and family disjointness;
* ``colorcoding-<variant>``: derandomized color coding versus the oracle;
* ``separators``: flow-based enumeration of important separators versus the
  definition, the 4^t bound and uniqueness of the minimum important one;
* ``submodularity``: |N(A)| + |N(B)| >= |N(A ∩ B)| + |N(A ∪ B)| and the same
  for edge boundaries;
* ``reduction-thm2``, ``reduction-thm2t``, ``reduction-thm4``,
  ``reduction-thm5``: clique existence versus the verdict on the full-size
  reduced instance, with (G, k) redrawn until it lies in the reduction's
  domain.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass

import numpy as np
import pandas as pd
from tqdm import tqdm

from smallcut.colorcoding import solve_colorcoding
from smallcut.flow_separators import (
    enumerate_important_separators,
    min_separator_size,
    unique_min_important_separator,
)
from smallcut.fpt_t_solver import anchor_state_violations, solve_by_t
from smallcut.graph import Graph, edge_boundary, neighborhood
from smallcut.oracle import SearchSpaceTooLarge, brute_force_solve, naive_important_separators, verify_certificate
from smallcut.problems import Instance, Variant
from smallcut.reductions import (
    CliqueInstance,
    ReductionError,
    generate_random_graph,
    generate_regular_graph,
    has_clique,
    reduce_thm2,
    reduce_thm2_terminal,
    reduce_thm4,
    reduce_thm5,
)

logger = logging.getLogger(__name__)

DEFAULT_N_MAX = 11
DEFAULT_SEED = 0
EDGE_PROBABILITIES = (0.2, 0.5, 0.8)

# Oracle budget for reduced instances; larger ones are counted as skipped.
REDUCTION_SEARCH_SPACE = 2**18

# Source draws per reduction case before it is recorded as skipped.
MAX_SOURCE_DRAWS = 200

# Connected regular graphs small enough for the edge-cut reduction to stay in
# oracle reach, as (degree, order) pairs.
REGULAR_SOURCES = ((1, 2), (1, 4), (1, 6), (2, 3), (2, 4))

DEFAULT_CASES = {
    "fpt-t": 500,
    "colorcoding-vertex": 300,
    "colorcoding-vertex-terminal": 300,
    "colorcoding-edge-terminal": 300,
    "separators": 200,
    "submodularity": 200,
    "reduction-thm2": 100,
    "reduction-thm2t": 100,
    "reduction-thm4": 100,
    "reduction-thm5": 100,
}


@dataclass(frozen=True)
class CaseResult:
    """Outcome of one sweep case."""

    ok: bool
    n: int
    detail: str = ""
    skipped: bool = False


def _random_graph(rng: np.random.Generator, n: int) -> Graph:
    p = float(rng.choice(EDGE_PROBABILITIES))
    return generate_random_graph(n, p, seed=int(rng.integers(2**31)))


def _random_subset(rng: np.random.Generator, n: int) -> frozenset[int]:
    return frozenset(int(v) for v in np.flatnonzero(rng.random(n) < 0.5))


def check_fpt_t(rng: np.random.Generator, n_max: int) -> CaseResult:
    n = int(rng.integers(1, min(n_max, 11) + 1))
    graph = _random_graph(rng, n)
    k = int(rng.integers(1, 7))
    t = int(rng.integers(0, 5))
    violations: list[str] = []
    verdict = solve_by_t(graph, k, t, inspect=lambda state: violations.extend(anchor_state_violations(state)))
    instance = Instance(graph, Variant.VERTEX, k, t)
    expected = brute_force_solve(instance)
    if violations:
        return CaseResult(False, n, violations[0])
    if verdict.answer != expected.answer:
        return CaseResult(False, n, f"k={k} t={t}: got {verdict.label}, oracle says {expected.label}")
    if verdict.answer:
        check = verify_certificate(instance, verdict.certificate)
        if not check:
            return CaseResult(False, n, f"k={k} t={t}: bad certificate ({check.reason})")
    return CaseResult(True, n)


def _colorcoding_check(variant: Variant) -> Callable[[np.random.Generator, int], CaseResult]:
    def check(rng: np.random.Generator, n_max: int) -> CaseResult:
        n = int(rng.integers(1, min(n_max, 10) + 1))
        graph = _random_graph(rng, n)
        k = int(rng.integers(1, 6))
        t = int(rng.integers(0, 7 - k))
        terminal = int(rng.integers(n)) if variant.has_terminal else None
        instance = Instance(graph, variant, k, t, terminal)
        verdict = solve_colorcoding(instance, "derandomized")
        expected = brute_force_solve(instance)
        if verdict.answer != expected.answer:
            return CaseResult(False, n, f"{instance.describe()}: got {verdict.label}, oracle says {expected.label}")
        if verdict.answer and not verify_certificate(instance, verdict.certificate):
            return CaseResult(False, n, f"{instance.describe()}: bad certificate")
        return CaseResult(True, n)

    return check


def check_separators(rng: np.random.Generator, n_max: int) -> CaseResult:
    n = int(rng.integers(2, min(n_max, 10) + 1))
    graph = _random_graph(rng, n)
    order = [int(v) for v in rng.permutation(n)]
    x_size = int(rng.integers(1, min(2, n - 1) + 1))
    y_size = int(rng.integers(1, min(2, n - x_size) + 1))
    x, y = order[:x_size], order[x_size:x_size + y_size]
    t = int(rng.integers(0, 6))

    found = enumerate_important_separators(graph, x, y, t)
    naive = naive_important_separators(graph, x, y, t)
    where = f"X={sorted(x)} Y={sorted(y)} t={t}"
    if {s.members for s in found} != set(naive):
        return CaseResult(False, n, f"{where}: enumeration differs from the definition")
    if len(found) > 4**t:
        return CaseResult(False, n, f"{where}: {len(found)} separators exceed 4^t")
    smallest = min_separator_size(graph, x, y)
    if smallest is not None and smallest <= t:
        minimum = [s for s in found if s.size == smallest]
        unique = unique_min_important_separator(graph, x, y)
        if len(minimum) != 1 or unique is None or minimum[0].members != unique.members:
            return CaseResult(False, n, f"{where}: minimum important separator is not unique")
    return CaseResult(True, n)


def check_submodularity(rng: np.random.Generator, n_max: int) -> CaseResult:
    n = int(rng.integers(1, n_max + 1))
    graph = _random_graph(rng, n)
    a, b = _random_subset(rng, n), _random_subset(rng, n)
    for measure in (neighborhood, edge_boundary):
        lhs = len(measure(graph, a)) + len(measure(graph, b))
        rhs = len(measure(graph, a & b)) + len(measure(graph, a | b))
        if lhs < rhs:
            return CaseResult(False, n, f"{measure.__name__}: A={sorted(a)} B={sorted(b)} {lhs} < {rhs}")
    return CaseResult(True, n)


def _reduction_check(
    reduce: Callable,
    regular: bool = False,
    n_cap: int = 6,
    k_range: tuple[int, int] = (2, 3),
):
    def draw_source(rng: np.random.Generator, n_max: int) -> tuple[Graph, int]:
        k = int(rng.integers(k_range[0], k_range[1] + 1))
        if regular:
            d, order = REGULAR_SOURCES[int(rng.integers(len(REGULAR_SOURCES)))]
            return generate_regular_graph(d, order, seed=int(rng.integers(2**31))), k
        cap = min(n_max, n_cap)
        order = int(rng.integers(min(max(2, k), cap), cap + 1))
        return _random_graph(rng, order), k

    def check(rng: np.random.Generator, n_max: int) -> CaseResult:
        # redraw until (G, k) is in the reduction's domain
        for _ in range(MAX_SOURCE_DRAWS):
            source, k = draw_source(rng, n_max)
            try:
                reduced = reduce(CliqueInstance(source, k))
                break
            except ReductionError as exc:
                reason = str(exc)
        else:
            return CaseResult(True, source.n, f"skipped: {reason}", skipped=True)
        try:
            verdict = brute_force_solve(reduced.instance, max_space=REDUCTION_SEARCH_SPACE)
        except SearchSpaceTooLarge as exc:
            return CaseResult(True, source.n, f"skipped: {exc}", skipped=True)
        expected = has_clique(source, k)
        if verdict.answer != expected:
            return CaseResult(
                False,
                source.n,
                f"n={source.n} m={source.m} k={k}: clique={expected}, reduced verdict {verdict.label}",
            )
        return CaseResult(True, source.n)

    return check


CHECKS: dict[str, Callable[[np.random.Generator, int], CaseResult]] = {
    "fpt-t": check_fpt_t,
    "colorcoding-vertex": _colorcoding_check(Variant.VERTEX),
    "colorcoding-vertex-terminal": _colorcoding_check(Variant.VERTEX_TERMINAL),
    "colorcoding-edge-terminal": _colorcoding_check(Variant.EDGE_TERMINAL),
    "separators": check_separators,
    "submodularity": check_submodularity,
    "reduction-thm2": _reduction_check(reduce_thm2),
    "reduction-thm2t": _reduction_check(reduce_thm2_terminal, k_range=(4, 5)),
    "reduction-thm4": _reduction_check(reduce_thm4, n_cap=5),
    "reduction-thm5": _reduction_check(reduce_thm5, regular=True),
}


@dataclass(frozen=True)
class SelftestReport:
    """Per-case results plus a per-check summary.

    Attributes:
        cases: One row per case: ``check``, ``case``, ``n``, ``ok``,
            ``skipped``, ``detail``.
        seed: Seed of the sweep.
    """

    cases: pd.DataFrame
    seed: int

    @property
    def passed(self) -> bool:
        return bool(self.cases["ok"].all())

    @property
    def failures(self) -> pd.DataFrame:
        return self.cases[~self.cases["ok"]]

    def summary(self) -> pd.DataFrame:
        grouped = self.cases.groupby("check", sort=False)
        return pd.DataFrame(
            {
                "cases": grouped.size(),
                "passed": grouped["ok"].sum() - grouped["skipped"].sum(),
                "skipped": grouped["skipped"].sum(),
                "failed": (~self.cases["ok"]).groupby(self.cases["check"], sort=False).sum(),
            }
        )

    def to_text(self) -> str:
        lines = [f"selftest seed={self.seed}", self.summary().to_string()]
        for row in self.failures.itertuples():
            lines.append(f"✗ {row.check} case {row.case}: {row.detail}")
        total = len(self.cases)
        failed = len(self.failures)
        skipped = int(self.cases["skipped"].sum())
        mark = "✓" if self.passed else "✗"
        lines.append(f"{mark} {total - failed - skipped} passed, {skipped} skipped, {failed} failed")
        lines.append(
            f"RESULT selftest={'PASS' if self.passed else 'FAIL'} seed={self.seed} "
            f"cases={total} failed={failed} skipped={skipped}"
        )
        return "\n".join(lines)


def _run_case(name: str, check_index: int, case: int, seed: int, n_max: int) -> CaseResult:
    rng = np.random.default_rng([seed, check_index, case])
    try:
        return CHECKS[name](rng, n_max)
    except Exception as exc:  # reported as a failing case
        logger.debug("case %s/%d raised", name, case, exc_info=True)
        return CaseResult(False, 0, f"raised {type(exc).__name__}: {exc}")


def run_selftest(
    n_max: int = DEFAULT_N_MAX,
    instances: int | None = None,
    seed: int = DEFAULT_SEED,
    max_workers: int = 1,
    checks: list[str] | None = None,
    progress: bool = True,
) -> SelftestReport:
    """Run the sweep and collect one row per case.

    Args:
        n_max: Largest number of vertices of a random graph (each check
            applies its own, smaller cap as well).
        instances: Cases per check; defaults to :data:`DEFAULT_CASES`.
        seed: Sweep seed; equal seeds give identical reports.
        max_workers: Cases may run on this many threads.
        checks: Subset of :data:`CHECKS` to run; all by default.
        progress: Show a tqdm progress bar.

    Returns:
        SelftestReport: Rows ordered by check then case.

    Raises:
        ValueError: For an unknown check name or n_max below 2.
    """
    if n_max < 2:
        raise ValueError(f"n_max must be at least 2, got {n_max}")
    names = list(CHECKS) if checks is None else checks
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")

    jobs = []
    for name in names:
        count = instances if instances is not None else DEFAULT_CASES[name]
        jobs += [(name, list(CHECKS).index(name), case) for case in range(count)]

    results: list[CaseResult | None] = [None] * len(jobs)
    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as executor:
        future_to_index = {
            executor.submit(_run_case, name, check_index, case, seed, n_max): idx
            for idx, (name, check_index, case) in enumerate(jobs)
        }
        for future in tqdm(
            as_completed(future_to_index),
            total=len(jobs),
            desc="Self-test",
            disable=not progress,
        ):
            results[future_to_index[future]] = future.result()

    frame = pd.DataFrame(
        {
            "check": [name for name, _, _ in jobs],
            "case": [case for _, _, case in jobs],
            "n": [r.n for r in results],
            "ok": [r.ok for r in results],
            "skipped": [r.skipped for r in results],
            "detail": [r.detail for r in results],
        }
    )
    logger.info("selftest: %d cases, %d failed", len(frame), int((~frame["ok"]).sum()))
    return SelftestReport(frame, seed)
