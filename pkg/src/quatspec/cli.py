"""Command-line front end.

Exit codes: 0 success, 1 verification failures, 2 bad input, 3 numerical
failure, 4 internal consistency conflict.
"""

import argparse
import json
import sys

import numpy as np

from .errors import ConflictError, DimensionError, ExprError, NumericalError, QuatSpecError
from .essential import is_fredholm_at
from .fredholm import DELTA, fredholm_data
from .parser import load_env, parse_expr
from .serialize import dumps, matrix_from_json, scan_csv
from .spectrum import scan, spectrum_report
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAILURES, EXIT_INPUT, EXIT_NUMERICAL, EXIT_CONFLICT = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def render_spectrum(a, tol=None):
    return dumps(spectrum_report(a, tol).to_dict())


def render_scan(a, re_range, rad_range, grid):
    return scan_csv(*scan(a, re_range, rad_range, grid))


def render_fredholm(expr, env=None, q=None, delta=DELTA):
    op = parse_expr(expr, env)
    if q is None:
        return dumps({"expr": str(op), **fredholm_data(op, delta=delta).to_dict()})
    return dumps({"expr": str(op), **is_fredholm_at(op, q, delta=delta).to_dict()})


def _positive(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x > 0:
        raise argparse.ArgumentTypeError("tolerances must be positive")
    return x


def _grid(text):
    parts = text.lower().split("x")
    try:
        dims = tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be N or NxM, got {text!r}") from None
    if len(dims) == 1:
        dims = dims * 2
    if len(dims) != 2:
        raise argparse.ArgumentTypeError(f"grid must be N or NxM, got {text!r}")
    return dims


def _quat(text):
    try:
        vals = [float(x) for x in text.replace("[", "").replace("]", "").split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"quaternion must be q0,q1,q2,q3, got {text!r}") from None
    if len(vals) != 4:
        raise argparse.ArgumentTypeError(f"quaternion must have 4 components, got {len(vals)}")
    return tuple(vals)


def build_parser():
    p = argparse.ArgumentParser(prog="quatspec", description="Quaternionic S-spectra and Fredholm data.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the report here instead of stdout")

    sp = sub.add_parser("spectrum", help="point S-spectrum of a quaternion matrix")
    sp.add_argument("matrix", help="matrix JSON file")
    sp.add_argument("--tol", type=_positive, help="classification tolerance")
    common(sp)

    sp = sub.add_parser("scan", help="mu(A, re + rad i) on a grid, as CSV")
    sp.add_argument("matrix", help="matrix JSON file")
    sp.add_argument("--re-min", type=float, required=True)
    sp.add_argument("--re-max", type=float, required=True)
    sp.add_argument("--rad-max", type=float, required=True)
    sp.add_argument("--grid", type=_grid, default=(21, 11), help="N or NxM points (default 21x11)")
    common(sp)

    sp = sub.add_parser("fredholm", help="Fredholm data of an operator expression")
    sp.add_argument("expr", help="expression such as \"S^3\" or \"S * (I + F(p))\"")
    sp.add_argument("--env", help="environment JSON with named diagonals and patches")
    sp.add_argument("--q", type=_quat, help="classify q for R_q(T) instead (q0,q1,q2,q3)")
    sp.add_argument("--tol", type=_positive, help="oracle threshold delta (default 1e-6)")
    common(sp)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", help="one of: " + ", ".join(SUITES))
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    return p


def _read_matrix(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return matrix_from_json(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None
    except DimensionError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _read_env(path):
    if path is None:
        return None
    try:
        with open(path) as fh:
            return load_env(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def run(args):
    """Execute parsed ``args``; returns ``(text, exit_code)``."""
    if args.command == "spectrum":
        return render_spectrum(_read_matrix(args.matrix), args.tol), EXIT_OK
    if args.command == "scan":
        a = _read_matrix(args.matrix)
        if args.grid[0] < 2 or args.grid[1] < 2:
            raise UsageError("grid needs at least 2 points per axis")
        if args.re_max < args.re_min or args.rad_max < 0:
            raise UsageError("invalid scan range")
        return render_scan(a, (args.re_min, args.re_max), (0.0, args.rad_max), args.grid), EXIT_OK
    if args.command == "fredholm":
        env = _read_env(args.env)
        return render_fredholm(args.expr, env, args.q, args.tol or DELTA), EXIT_OK
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    report = run_suite(args.suite, args.seed)
    return dumps(report), EXIT_OK if not report["failures"] else EXIT_FAILURES


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = run(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ExprError as exc:
        print(f"error: {exc.caret()}", file=sys.stderr)
        return EXIT_INPUT
    except ConflictError as exc:
        print(f"conflict: {exc}", file=sys.stderr)
        return EXIT_CONFLICT
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (QuatSpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
