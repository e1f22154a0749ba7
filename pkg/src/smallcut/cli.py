"""Command-line interface for the smallcut package.

This module provides four commands:
- solve: Decide an instance and print a report (certificate on YES)
- verify: Check a certificate file against an instance
- reduce: Turn a Clique instance into a hard cutting instance
- selftest: Run the cross-solver equivalence sweep

The CLI is installed as 'smallcut' when the package is installed.

Usage:
    smallcut solve <instance> [--variant V] [--k K] [--t T] [--terminal S]
                   [--algorithm A] [--seed N] [--trials N] [--out FILE] [--time]
    smallcut verify <instance> <certificate>
    smallcut reduce <graph> --thm {2,2t,4,5} --k K [--scale N] [--out FILE]
    smallcut selftest [--n-max N] [--instances N] [--seed N]

Exit status is 0 for YES / valid / pass, 1 for NO / invalid / fail and 2
for unreadable input or unsupported parameters.
"""

import argparse
import logging
import sys
from pathlib import Path

from smallcut.oracle import verify_certificate
from smallcut.problems import Variant
from smallcut.reductions import REDUCTIONS, CliqueInstance
from smallcut.selftest import DEFAULT_N_MAX, DEFAULT_SEED, run_selftest
from smallcut.solver import ALGORITHMS, solve
from smallcut.utils import format_certificate, load_certificate, load_graph, load_instance, worker_count


def _fail(message, code=2):
    print(f"✗ {message}")
    sys.exit(code)


def _instance_from_args(args):
    return load_instance(
        args.instance,
        variant=args.variant,
        k=args.k,
        t=args.t,
        terminal=args.terminal,
    )


def cli_solve(args):
    """CLI handler for the 'solve' command.

    Reads the instance file (flags override its parameter block), solves it
    and prints the report. Exits 0 for YES and 1 for NO, which makes the
    command usable in shell conditionals.

    Args:
        args: Argument namespace from argparse containing instance, variant,
            k, t, terminal, algorithm, seed, trials, out and time.
    """
    try:
        instance = _instance_from_args(args)
        report = solve(
            instance,
            algorithm=args.algorithm,
            seed=args.seed,
            trials=args.trials,
            max_workers=worker_count(),
        )
    except (OSError, ValueError) as exc:
        _fail(exc)

    print(report.to_text(show_time=args.time))
    if args.out and report.certificate is not None:
        Path(args.out).write_text(format_certificate(report.certificate.members))
        print(f"✓ Certificate saved to {args.out}")
    sys.exit(0 if report.verdict.answer else 1)


def cli_verify(args):
    """CLI handler for the 'verify' command.

    Args:
        args: Argument namespace from argparse containing instance,
            certificate and the optional parameter overrides.
    """
    try:
        instance = _instance_from_args(args)
        members = load_certificate(args.certificate)
    except (OSError, ValueError) as exc:
        _fail(exc)

    check = verify_certificate(instance, members)
    if check:
        print(f"✓ certificate is valid for {instance.describe()}")
        sys.exit(0)
    print(f"✗ certificate rejected: {check.reason}")
    sys.exit(1)


def cli_reduce(args):
    """CLI handler for the 'reduce' command.

    Writes the reduced instance (with one ``# map`` comment per vertex) to
    ``--out`` or prints it.

    Args:
        args: Argument namespace from argparse containing graph, thm, k,
            scale and out.
    """
    reduce = REDUCTIONS[args.thm]
    try:
        source = CliqueInstance(load_graph(args.graph), args.k)
        if args.scale is not None and args.thm in ("2", "2t"):
            reduced = reduce(source, scale=args.scale)
        elif args.scale is not None:
            _fail(f"--scale applies to --thm 2 and 2t only, not {args.thm}")
        else:
            reduced = reduce(source)
    except (OSError, ValueError) as exc:
        _fail(exc)

    text = reduced.to_text()
    instance = reduced.instance
    if args.out:
        Path(args.out).write_text(text)
        print(f"✓ Reduced instance saved to {args.out}")
        print(f"  {instance.describe()}")
        if reduced.scaled:
            print("  note: H_V size set by --scale")
    else:
        print(text, end="")


def cli_selftest(args):
    """CLI handler for the 'selftest' command.

    Args:
        args: Argument namespace from argparse containing n_max, instances
            and seed.
    """
    try:
        report = run_selftest(
            n_max=args.n_max,
            instances=args.instances,
            seed=args.seed,
            max_workers=worker_count(),
        )
    except ValueError as exc:
        _fail(exc)
    print(report.to_text())
    sys.exit(0 if report.passed else 1)


def main():
    """Main entry point for the smallcut command-line interface.

    Parses command-line arguments and dispatches to the handler functions.
    Called automatically when the package is run as 'smallcut'.

    Commands:
        solve: Decide an instance (exit code 0 for YES, 1 for NO)
        verify: Check a certificate (exit code 0 for valid, 1 for invalid)
        reduce: Generate a reduced instance from a Clique instance
        selftest: Cross-check every solver against brute force
    """
    parser = argparse.ArgumentParser(
        prog="smallcut",
        description="Solvers for cutting a small vertex set off a graph by few vertices or edges",
    )
    parser.add_argument(
        "-v", "--verbose",
        action="store_true",
        help="Log solver decisions at DEBUG level",
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    instance_flags = argparse.ArgumentParser(add_help=False)
    instance_flags.add_argument("instance", help="Instance file (graph plus '# key=value' parameters)")
    instance_flags.add_argument(
        "--variant",
        choices=[v.value for v in Variant] + ["exact-k-vertex"],
        help="Problem variant (overrides the file)",
    )
    instance_flags.add_argument("--k", type=int, help="Size bound on X (overrides the file)")
    instance_flags.add_argument("--t", type=int, help="Boundary bound (overrides the file)")
    instance_flags.add_argument("--terminal", type=int, help="Terminal vertex s (overrides the file)")

    # Solve command
    solve_parser = subparsers.add_parser(
        "solve",
        parents=[instance_flags],
        help="Solve an instance",
    )
    solve_parser.add_argument(
        "--algorithm",
        choices=ALGORITHMS,
        default="auto",
        help="Solver to use (default: auto)",
    )
    solve_parser.add_argument("--seed", type=int, default=0, help="Seed for color coding (default: 0)")
    solve_parser.add_argument(
        "--trials",
        type=int,
        help="Run randomized color coding with this many colorings",
    )
    solve_parser.add_argument("-o", "--out", help="Write the certificate to this file on YES")
    solve_parser.add_argument(
        "--time",
        action="store_true",
        help="Report wall time (output is then no longer byte-identical across runs)",
    )
    solve_parser.set_defaults(func=cli_solve)

    # Verify command
    verify_parser = subparsers.add_parser(
        "verify",
        parents=[instance_flags],
        help="Verify a certificate against an instance",
    )
    verify_parser.add_argument("certificate", help="Certificate file (one vertex id per line)")
    verify_parser.set_defaults(func=cli_verify)

    # Reduce command
    reduce_parser = subparsers.add_parser(
        "reduce",
        help="Reduce a Clique instance to a cutting instance",
    )
    reduce_parser.add_argument("graph", help="Source graph file")
    reduce_parser.add_argument("--thm", choices=sorted(REDUCTIONS), required=True, help="Which reduction")
    reduce_parser.add_argument("--k", type=int, required=True, help="Clique size")
    reduce_parser.add_argument(
        "--scale",
        type=int,
        help="Size of H_V instead of n^3 (--thm 2 and 2t only)",
    )
    reduce_parser.add_argument("-o", "--out", help="Output file path. If not specified, prints the instance")
    reduce_parser.set_defaults(func=cli_reduce)

    # Selftest command
    selftest_parser = subparsers.add_parser(
        "selftest",
        help="Cross-check every solver against brute force",
    )
    selftest_parser.add_argument(
        "--n-max",
        type=int,
        default=DEFAULT_N_MAX,
        help=f"Largest random graph order (default: {DEFAULT_N_MAX})",
    )
    selftest_parser.add_argument("--instances", type=int, help="Cases per check (default: per-check sizes)")
    selftest_parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Sweep seed (default: 0)")
    selftest_parser.set_defaults(func=cli_selftest)

    # Parse arguments
    args = parser.parse_args()

    if not args.command:
        parser.print_help()
        sys.exit(2)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    # Execute the appropriate function
    args.func(args)


if __name__ == "__main__":
    main()
