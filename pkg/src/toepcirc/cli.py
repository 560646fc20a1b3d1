"""Command-line interface: ``toepcirc {approximate,eigvals,residual,sweep,verify}``.

Data goes to stdout, diagnostics to stderr. Exit codes: 0 success, 1 failed
verification, 2 invalid arguments, 3 domain error, 4 output not writable.
"""

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import approximation as approx
from . import serialization as ser
from .approximation import ApproximationMethod
from .circulant_eigen import circulant_eigenvalues, symmetric_circulant_eigenvalues
from .errors import DomainError, PreconditionError
from .toeplitz_core import Circulant, SymmetricToeplitz, exponential, is_symmetric_circulant
from .toeplitz_core import materialize_circulant
from .verify import run_suites

EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_OUTPUT = 4

DEFAULT_RHOS = (0.1, 0.5, 0.9, 0.99)
DEFAULT_M_MIN = 3
DEFAULT_M_MAX = 400
SWEEP_METHODS = (ApproximationMethod.NEAREST, ApproximationMethod.GS)


class UsageError(Exception):
    pass


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rho", type=float, help="decay parameter of the exponential Toeplitz matrix")
    p.add_argument("--m", type=int, help="matrix order M")
    p.add_argument("--row-file", type=Path, help="first row as CSV or JSON array")


def _add_format_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toepcirc",
        description="Circulant approximations of symmetric Toeplitz matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approximate", help="first row of a circulant approximation")
    _add_input_args(p)
    p.add_argument("--method", choices=("nearest", "gs", "common"), default="nearest")
    p.add_argument("--dense", action="store_true", help="print the full M x M matrix")
    _add_format_arg(p)

    p = sub.add_parser("eigvals", help="eigenvalues indexed by k = 0..M-1")
    _add_input_args(p)
    p.add_argument(
        "--method",
        choices=("nearest", "gs", "common"),
        help="approximate first (a row file is then read as a Toeplitz row)",
    )
    _add_format_arg(p)

    p = sub.add_parser("residual", help="scaled residual norm report for one (rho, M)")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--method", choices=("nearest", "gs", "common"), default="nearest")
    _add_format_arg(p)

    p = sub.add_parser("sweep", help="residual reports over a (rho, M) grid as CSV")
    p.add_argument("--rhos", default=",".join(str(r) for r in DEFAULT_RHOS))
    p.add_argument("--m-min", type=int, default=DEFAULT_M_MIN)
    p.add_argument("--m-max", type=int, default=DEFAULT_M_MAX)
    p.add_argument(
        "--method",
        action="append",
        choices=("nearest", "gs"),
        help="repeatable; default is both methods",
    )
    p.add_argument("--out", type=Path, help="output file (default: stdout)")

    p = sub.add_parser("verify", help="run the oracle and property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    return parser


# ---------------------------------------------------------------------------
# input handling
# ---------------------------------------------------------------------------


def _exponential_args(args) -> tuple[float, int]:
    if args.rho is None or args.m is None:
        raise UsageError("give either --rho and --m, or --row-file")
    if args.m < 1:
        raise UsageError("--m must be a positive integer")
    return args.rho, args.m


def _read_row(path: Path) -> np.ndarray:
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return ser.parse_row(text)


def _check_single_input(args) -> None:
    if args.row_file is not None and (args.rho is not None or args.m is not None):
        raise UsageError("--row-file cannot be combined with --rho/--m")


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_approximate(args) -> int:
    _check_single_input(args)
    method = ApproximationMethod.parse(args.method)
    if args.row_file is not None:
        if method is not ApproximationMethod.NEAREST:
            raise DomainError(f"method {method.value!r} needs exponential input (--rho, --m)")
        c = approx.nearest_circulant(SymmetricToeplitz(_read_row(args.row_file)))
    else:
        rho, M = _exponential_args(args)
        c = approx.circulant_for(method, rho, M)

    if args.dense:
        dense = materialize_circulant(c)
        _emit(ser.dumps(dense) if args.format == "json" else ser.format_dense_csv(dense))
    else:
        _emit(ser.dumps(c.row) if args.format == "json" else ser.format_row_csv(c.row))
    return 0


def _eigenvalues(args) -> np.ndarray:
    _check_single_input(args)
    if args.row_file is not None:
        row = _read_row(args.row_file)
        if args.method is None:
            c = Circulant(row)
            if is_symmetric_circulant(c):
                return symmetric_circulant_eigenvalues(c)
            return circulant_eigenvalues(c).values
        if ApproximationMethod.parse(args.method) is not ApproximationMethod.NEAREST:
            raise DomainError(f"method {args.method!r} needs exponential input (--rho, --m)")
        return approx.nearest_eigenvalues(SymmetricToeplitz(row))

    rho, M = _exponential_args(args)
    method = ApproximationMethod.parse(args.method or "nearest")
    if method is ApproximationMethod.NEAREST:
        return approx.nearest_eigenvalues(exponential(rho, M))
    return symmetric_circulant_eigenvalues(approx.circulant_for(method, rho, M))


def cmd_eigvals(args) -> int:
    values = _eigenvalues(args)
    _emit(ser.eigenvalues_json(values) if args.format == "json" else ser.eigenvalues_csv(values))
    return 0


def cmd_residual(args) -> int:
    if args.m < 1:
        raise UsageError("--m must be a positive integer")
    if not 0.0 <= args.rho <= 1.0:
        raise DomainError(f"rho must lie in [0, 1], got {args.rho!r}")
    report = approx.residual_report(ApproximationMethod.parse(args.method), args.rho, args.m)
    if args.format == "json":
        _emit(ser.report_json(report))
    else:
        _emit(ser.report_csv_header())
        _emit(ser.report_csv_line(report))
    return 0


def sweep_reports(
    rhos: Sequence[float],
    m_min: int = DEFAULT_M_MIN,
    m_max: int = DEFAULT_M_MAX,
    methods: Sequence[ApproximationMethod] = SWEEP_METHODS,
) -> list[approx.ResidualReport]:
    """Reports ordered by method, then rho ascending, then M ascending."""
    return [
        approx.residual_report(method, rho, M)
        for method in methods
        for rho in sorted(rhos)
        for M in range(m_min, m_max + 1)
    ]


def _parse_rhos(text: str) -> list[float]:
    try:
        rhos = [float(f) for f in text.split(",") if f.strip()]
    except ValueError:
        raise UsageError(f"--rhos must be a comma-separated list of numbers, got {text!r}") from None
    if not rhos:
        raise UsageError("--rhos must not be empty")
    bad = [r for r in rhos if not 0.0 <= r < 1.0]
    if bad:
        raise UsageError(f"sweep values of rho must lie in [0, 1), got {bad}")
    return rhos


def cmd_sweep(args) -> int:
    rhos = _parse_rhos(args.rhos)
    if args.m_min < 2:
        raise UsageError("--m-min must be at least 2")
    if args.m_max < args.m_min:
        raise UsageError("--m-max must not be below --m-min")
    if args.method:
        chosen = {ApproximationMethod.parse(m) for m in args.method}
        methods = [m for m in SWEEP_METHODS if m in chosen]
    else:
        methods = list(SWEEP_METHODS)

    reports = sweep_reports(rhos, args.m_min, args.m_max, methods)
    text = "\n".join([ser.report_csv_header()] + [ser.report_csv_line(r) for r in reports]) + "\n"
    if args.out is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"toepcirc: error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_OUTPUT
    return 0


def cmd_verify(args) -> int:
    results = run_suites(seed=args.seed, level=args.level)
    _emit(f"verify level={args.level} seed={args.seed}")
    for r in results:
        _emit(r.line())
    failed = [r for r in results if not r.passed]
    if failed:
        names = ", ".join(f"{r.number} ({r.name})" for r in failed)
        _emit(f"FAILED suites: {names}")
        print(f"toepcirc: verification failed: suites {names}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    _emit(f"all {len(results)} suites passed")
    return 0


COMMANDS = {
    "approximate": cmd_approximate,
    "eigvals": cmd_eigvals,
    "residual": cmd_residual,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"toepcirc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, PreconditionError) as exc:
        print(f"toepcirc: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
