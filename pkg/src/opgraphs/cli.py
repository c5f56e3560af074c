"""Command-line entry point.

Exit codes: 0 all checks passed, 1 verification failure, 2 usage error,
3 I/O error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report as R
from .numerics import ToleranceConfig

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
MIN_DIM, MAX_DIM = 2, 32


def _tol_args(p: argparse.ArgumentParser):
    p.add_argument("--rank-eps", type=float, default=ToleranceConfig.rank_rel_eps,
                   help="relative Gram eigenvalue cutoff")
    p.add_argument("--residual-eps", type=float, default=ToleranceConfig.residual_abs_eps,
                   help="absolute Frobenius residual cutoff")
    p.add_argument("--out", type=Path, help="write JSON here")
    p.add_argument("--quiet", action="store_true", help="suppress the summary table")
    p.add_argument("--timing", action="store_true",
                   help="record wall_time_ms (makes reports non-reproducible)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opgraphs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("circle", help="circle-group graphs V_j")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--j", type=int, default=None, help="restrict to one orbit")
    _tol_args(c)

    h = sub.add_parser("hw", help="Heisenberg-Weyl graph")
    h.add_argument("--dim", type=int, required=True)
    _tol_args(h)

    s = sub.add_parser("sweep", help="run a suite over a range of d")
    s.add_argument("instance", choices=["circle", "hw", "all"])
    s.add_argument("--dim-min", type=int, required=True)
    s.add_argument("--dim-max", type=int, required=True)
    _tol_args(s)

    dp = sub.add_parser("dump", help="write constructed matrices as JSON")
    dp.add_argument("instance", choices=["circle", "hw"])
    dp.add_argument("object", help=", ".join(R.CIRCLE_OBJECTS + R.HW_OBJECTS))
    dp.add_argument("--dim", type=int, required=True)
    dp.add_argument("--out", type=Path)
    return parser


def _check_dim(parser, d, flag="--dim"):
    if not MIN_DIM <= d <= MAX_DIM:
        parser.error(f"{flag} must lie in {MIN_DIM}..{MAX_DIM}, got {d}")


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.write_text(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "dump":
        _check_dim(parser, args.dim)
        try:
            payload = R.dump_objects(args.instance, args.dim, args.object)
        except ValueError as exc:
            parser.error(str(exc))
        try:
            _emit(R.dumps(payload), args.out)
        except OSError as exc:
            print(f"opgraphs: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
        return EXIT_OK

    try:
        tol = ToleranceConfig(args.rank_eps, args.residual_eps)
    except ValueError as exc:
        parser.error(str(exc))

    if args.command == "circle":
        _check_dim(parser, args.dim)
        if args.j is not None and not 0 <= args.j < args.dim:
            parser.error(f"--j must lie in 0..{args.dim - 1}")
        reports = [R.run_circle(args.dim, args.j, tol, timing=args.timing)]
        payload = reports[0]
    elif args.command == "hw":
        _check_dim(parser, args.dim)
        reports = [R.run_hw(args.dim, tol, timing=args.timing)]
        payload = reports[0]
    else:
        _check_dim(parser, args.dim_min, "--dim-min")
        _check_dim(parser, args.dim_max, "--dim-max")
        if args.dim_min > args.dim_max:
            parser.error("--dim-min must not exceed --dim-max")
        reports = R.run_sweep(args.instance, args.dim_min, args.dim_max, tol, timing=args.timing)
        payload = reports

    if args.out is not None:
        try:
            args.out.write_text(R.dumps(payload))
        except OSError as exc:
            print(f"opgraphs: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    if not args.quiet:
        if args.command == "sweep":
            print(R.summary_table(reports))
        else:
            print(R.checks_table(reports[0]))
        if args.timing:
            total = sum(r.wall_time_ms or 0 for r in reports)
            print(f"wall time: {total} ms")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
