"""Utility functions for instance files, certificates and worker pools.

Instance files are ordinary graph files (see :mod:`smallcut.graph`) whose
parameter block lives in comment lines, so every instance file is also a
valid graph file::

    # variant=vertex-terminal
    # k=4
    # t=2
    # terminal=0
    # map 0 terminal
    7 9
    0 1
    ...

Certificates list one vertex id per line.
"""

from __future__ import annotations

import os
import re
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from itertools import islice
from pathlib import Path
from typing import TypeVar

from smallcut.graph import Graph, GraphFormatError, format_graph, parse_graph
from smallcut.problems import Instance

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "SMALLCUT_THREADS"

_PARAMETER = re.compile(r"^\s*#\s*(variant|k|t|terminal)\s*=\s*(\S+)\s*$")


def worker_count(default: int = 1) -> int:
    """Worker threads allowed by ``SMALLCUT_THREADS`` (at least 1)."""
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def first_hit(
    items: Iterable[T],
    attempt: Callable[[T], R | None],
    max_workers: int = 1,
) -> tuple[int, R] | None:
    """Return ``(index, result)`` for the lowest-index item whose attempt is not None.

    With one worker the items are tried in order and the scan stops at the
    first hit. With more workers the items are submitted in chunks of
    ``4 * max_workers``; a chunk is fully evaluated before the lowest hit in
    it is returned, so the answer never depends on thread timing.
    """
    if max_workers <= 1:
        for index, item in enumerate(items):
            result = attempt(item)
            if result is not None:
                return index, result
        return None

    iterator = iter(items)
    offset = 0
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        while True:
            chunk = list(islice(iterator, 4 * max_workers))
            if not chunk:
                return None
            futures = [executor.submit(attempt, item) for item in chunk]
            for position, future in enumerate(futures):
                result = future.result()
                if result is not None:
                    for pending in futures[position + 1:]:
                        pending.cancel()
                    return offset + position, result
            offset += len(chunk)


def parse_parameters(text: str) -> dict[str, str]:
    """Collect the ``# key=value`` parameter lines of an instance file."""
    params = {}
    for line in text.splitlines():
        match = _PARAMETER.match(line)
        if match:
            params[match.group(1)] = match.group(2)
    return params


def parse_instance_text(text: str, **overrides) -> Instance:
    """Parse an instance file; keyword overrides win over the parameter block.

    Args:
        text: Instance file contents.
        **overrides: ``variant``, ``k``, ``t``, ``terminal``; None values are
            ignored.

    Returns:
        Instance: The parsed instance.

    Raises:
        GraphFormatError: If the graph part is malformed or a required
            parameter is missing or not an integer.
        InvalidInstanceError: If the parameters violate the problem definition.
    """
    params: dict[str, object] = dict(parse_parameters(text))
    params.update({key: value for key, value in overrides.items() if value is not None})
    for key in ("variant", "k", "t"):
        if key not in params:
            raise GraphFormatError(f"missing parameter {key!r}")
    try:
        k = int(params["k"])
        t = int(params["t"])
        terminal = int(params["terminal"]) if params.get("terminal") is not None else None
    except ValueError as exc:
        raise GraphFormatError(f"bad parameter value: {exc}") from None
    return Instance(parse_graph(text), str(params["variant"]), k, t, terminal)


def format_instance(instance: Instance, comments: Iterable[str] = ()) -> str:
    """Serialize an instance as graph text with a leading parameter block."""
    block = [f"variant={instance.variant.value}", f"k={instance.k}", f"t={instance.t}"]
    if instance.terminal is not None:
        block.append(f"terminal={instance.terminal}")
    return format_graph(instance.graph, [*block, *comments])


def load_graph(path: str | Path) -> Graph:
    """Read a graph file.

    Raises:
        FileNotFoundError: If the file doesn't exist.
        GraphFormatError: If the contents are malformed.
    """
    return parse_graph(Path(path).read_text())


def load_instance(path: str | Path, **overrides) -> Instance:
    """Read an instance file; see :func:`parse_instance_text`."""
    return parse_instance_text(Path(path).read_text(), **overrides)


def parse_certificate(text: str) -> list[int]:
    """Vertex ids of a certificate file, in file order (duplicates kept for the verifier)."""
    members = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            members.append(int(line))
        except ValueError:
            raise GraphFormatError(f"expected a vertex id, got {line!r}", lineno) from None
    return members


def format_certificate(members: Iterable[int]) -> str:
    return "".join(f"{v}\n" for v in sorted(members))


def load_certificate(path: str | Path) -> list[int]:
    return parse_certificate(Path(path).read_text())
