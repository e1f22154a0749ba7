"""smallcut: small vertex sets with small boundaries.

A Python package for deciding whether a graph has a small vertex set X
(|X| <= k) that can be cut off by few vertices (|N(X)| <= t) or, with a
terminal, by few edges (|∂(X)| <= t). It ships an important-separator
solver running in 4^t * poly(n) time, color coding parameterized by k + t,
a brute-force oracle and generators for hard instances from Clique.

Basic Usage:
    >>> from smallcut import Graph, Instance, solve
    >>>
    >>> path = Graph.from_edges(10, [(i, i + 1) for i in range(9)])
    >>> report = solve(Instance(path, "vertex", k=3, t=1))
    >>> report.verdict.label
    'YES'
    >>> sorted(report.certificate.members)
    [9]

CLI Usage:
    $ smallcut solve path.txt --variant vertex --k 3 --t 1
    $ smallcut verify instance.txt certificate.txt
    $ smallcut reduce k3.txt --thm 4 --k 2 -o reduced.txt
    $ smallcut selftest --n-max 8 --instances 100

Key Features:
    - Exact 4^t * poly(n) solver for the terminal-free vertex problem
    - Randomized and derandomized color coding for the three at-most-k variants
    - Important separator enumeration via unit-capacity max flow
    - Brute-force oracle and certificate verifier
    - Clique reductions as hard instance generators
"""

from .fpt_t_solver import solve_by_t
from .graph import Graph, parse_graph
from .oracle import brute_force_solve, verify_certificate
from .problems import Certificate, Instance, Variant, Verdict
from .solver import RunReport, solve

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "parse_graph",
    "Instance",
    "Variant",
    "Certificate",
    "Verdict",
    "RunReport",
    "solve",
    "solve_by_t",
    "brute_force_solve",
    "verify_certificate",
]
