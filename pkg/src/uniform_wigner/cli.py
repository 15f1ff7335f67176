"""Command-line driver: ``uniform-wigner {eval,sweep-theta,sweep-j,sweep-integral}``.

Exit status: 0 on success, 2 on a domain error, 3 on an I/O error, and 1
when a numerical method gives up (for example the extended-precision series
running out of digits).
"""

import argparse
from fractions import Fraction
import sys

from .angular_core import make_index
from .errors import DomainError
from .harness import (
    ERROR_COLUMNS,
    INTEGRAL_COLUMNS,
    SweepConfig,
    evaluate,
    format_number,
    sweep_integral,
    sweep_j,
    sweep_theta,
    write_records,
)

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_DOMAIN = 2
EXIT_IO = 3


def doubled(text):
    """Parse a j value such as ``2000.5`` or ``5/2`` into 2j."""
    try:
        value = Fraction(text) * 2
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if value.denominator != 1:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer or half-integer")
    return int(value)


def _index_args(p, need_j=True):
    if need_j:
        p.add_argument("--two-j", type=int, required=True, help="2j")
    p.add_argument("--two-m1", type=int, required=True, help="2 m1")
    p.add_argument("--two-m2", type=int, required=True, help="2 m2")


def _output_args(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-", help="output path (default: standard output)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="uniform-wigner",
        description="Wigner d-matrix elements, their uniform Bessel approximation, and error sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="print one matrix element")
    _index_args(p)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--method", choices=("exact", "approx", "series"), default="exact")

    p = sub.add_parser("sweep-theta", help="error table over a log-spaced theta grid")
    _index_args(p)
    p.add_argument("--theta-start", type=float, default=1e-4)
    p.add_argument("--theta-stop", type=float, default=1.0)
    p.add_argument("--theta-points", type=int, default=200)
    _output_args(p)

    p = sub.add_parser("sweep-j", help="error table over j at fixed theta")
    _index_args(p, need_j=False)
    p.add_argument("--j-start", type=doubled, required=True, help="first j (integer or half-integer)")
    p.add_argument("--j-stop", type=doubled, required=True, help="last j")
    p.add_argument("--theta", type=float, default=1e-3)
    _output_args(p)

    p = sub.add_parser("sweep-integral", help="relative error of the closed-form overlap integral")
    p.add_argument("--l-start", type=int, default=0)
    p.add_argument("--l-stop", type=int, required=True)
    p.add_argument("--l-step", type=int, default=1)
    p.add_argument("--rho", type=float, default=1.0)
    p.add_argument("--epsilon", type=float, default=1e-3)
    _output_args(p)
    return parser


def _config(args):
    if args.command == "sweep-theta":
        return SweepConfig(
            kind="theta",
            two_j=args.two_j,
            two_m1=args.two_m1,
            two_m2=args.two_m2,
            theta_start=args.theta_start,
            theta_stop=args.theta_stop,
            theta_points=args.theta_points,
            fmt=args.format,
        )
    if args.command == "sweep-j":
        return SweepConfig(
            kind="j",
            two_m1=args.two_m1,
            two_m2=args.two_m2,
            theta=args.theta,
            two_j_start=args.j_start,
            two_j_stop=args.j_stop,
            fmt=args.format,
        )
    return SweepConfig(
        kind="integral",
        l_start=args.l_start,
        l_stop=args.l_stop,
        l_step=args.l_step,
        rho=args.rho,
        epsilon=args.epsilon,
        fmt=args.format,
    )


def _emit(records, columns, args):
    if args.out == "-":
        write_records(records, columns, sys.stdout, args.format)
        return
    with open(args.out, "w", newline="") as fh:
        write_records(records, columns, fh, args.format)


def main(argv=None):
    args = build_parser().parse_args(argv)

    def warn(msg):
        print(msg, file=sys.stderr)

    try:
        if args.command == "eval":
            idx = make_index(args.two_j, args.two_m1, args.two_m2)
            print(format_number(evaluate(idx, args.theta, args.method)))
            return EXIT_OK
        config = _config(args)
        if config.kind == "theta":
            records, columns = sweep_theta(config), ERROR_COLUMNS
        elif config.kind == "j":
            records, columns = sweep_j(config), ERROR_COLUMNS
        else:
            records, columns = sweep_integral(config, warn=warn), INTEGRAL_COLUMNS
        _emit(records, columns, args)
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ArithmeticError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
