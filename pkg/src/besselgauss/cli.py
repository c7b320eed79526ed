"""Command-line front end: single evaluations, table sweeps, verification.

Three subcommands:

  eval    one parameter point, one record (JSON line or CSV)
  table   CSV sweep over a parameter grid
  verify  cross-check all three evaluation paths over a grid

Values are printed with 17 significant digits so printed output re-parses
to the exact binary double.  Sweeps run sequentially in lexicographic
(m, n, beta, q) order, making repeated runs byte-identical.  Environment
variables: BESSELGAUSS_TOL (default comparison/quadrature tolerance,
1e-9) and BESSELGAUSS_MAX_SUBDIV (adaptive quadrature panel budget).

Exit codes: 0 success, 1 verification failure, 2 invalid arguments,
3 evaluation or infrastructure error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .closed_form import (
    EvalParams,
    EvaluationError,
    OverflowGuardError,
    ParameterError,
    eval_closed,
)
from .oracle import (
    ConvergenceError,
    compare,
    eval_quadrature_direct,
    eval_quadrature_hermite,
)

_SINGLE_METHODS = ("closed", "quad-direct", "quad-hermite")


class _OneLineParser(argparse.ArgumentParser):
    # Argument failures emit a single diagnostic line and exit 2, not
    # argparse's usage dump.
    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _fmt(v: float) -> str:
    # 17 significant digits round-trips any double; +0.0 folds -0.0 away.
    return "%.17g" % (0.0 + float(v))


def _default_tol() -> float:
    raw = os.environ.get("BESSELGAUSS_TOL", "")
    try:
        return float(raw) if raw else 1e-9
    except ValueError:
        return 1e-9


def _parse_int_range(text: str, flag: str):
    parts = text.split("..")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{flag} expects an integer or lo..hi range, got {text!r}"
        ) from None
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"{flag} range {text!r} is empty or negative")
    return list(range(lo, hi + 1))


def _parse_float_list(text: str, flag: str):
    try:
        values = [float(p) for p in text.split(",") if p.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{flag} expects comma-separated numbers, got {text!r}"
        ) from None
    if not values:
        raise argparse.ArgumentTypeError(f"{flag} list is empty")
    return sorted(set(values))


def _err_code(exc: Exception) -> str:
    if isinstance(exc, ParameterError):
        return "param"
    if isinstance(exc, OverflowGuardError):
        return "overflow"
    if isinstance(exc, ConvergenceError):
        return "noconv"
    return "error"


def _evaluate(method: str, params: EvalParams, tol: float) -> complex:
    if method == "closed":
        return eval_closed(params)
    if method == "quad-direct":
        return eval_quadrature_direct(params, tol).value
    return eval_quadrature_hermite(params, tol).value


def _add_grid_flags(p: argparse.ArgumentParser):
    p.add_argument("--m", default="0..8", metavar="LO..HI",
                   type=lambda t: _parse_int_range(t, "--m"),
                   help="m values, single integer or inclusive range (default 0..8)")
    p.add_argument("--n", default="0..8", metavar="LO..HI",
                   type=lambda t: _parse_int_range(t, "--n"),
                   help="n values, single integer or inclusive range (default 0..8)")
    p.add_argument("--beta", default="0.5,1,2", metavar="LIST",
                   type=lambda t: _parse_float_list(t, "--beta"),
                   help="comma-separated beta values (default 0.5,1,2)")
    p.add_argument("--q", default="0,0.5,1,3", metavar="LIST",
                   type=lambda t: _parse_float_list(t, "--q"),
                   help="comma-separated q values (default 0,0.5,1,3)")
    p.add_argument("--max-sum", type=int, default=8, metavar="S",
                   help="keep only grid points with m+n <= S; negative disables "
                        "the filter (default 8)")
    p.add_argument("--tol", type=float, default=None, metavar="TOL",
                   help="tolerance (default BESSELGAUSS_TOL or 1e-9)")


def _grid(args):
    for m in args.m:
        for n in args.n:
            if args.max_sum >= 0 and m + n > args.max_sum:
                continue
            for beta in args.beta:
                for q in args.q:
                    yield m, n, beta, q


def _resolve_tol(args) -> float:
    tol = args.tol if args.tol is not None else _default_tol()
    if not tol > 0.0:
        print(f"error: --tol must be > 0, got {tol}", file=sys.stderr)
        raise SystemExit(2)
    return tol


def cmd_eval(args) -> int:
    tol = _resolve_tol(args)
    try:
        params = EvalParams(args.m, args.n, args.beta, args.q)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        value = _evaluate(args.method, params, tol)
    except EvaluationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    fields = (
        ("m", str(params.m)),
        ("n", str(params.n)),
        ("beta", _fmt(params.beta)),
        ("q", _fmt(params.q)),
        ("method", args.method),
        ("re", _fmt(value.real)),
        ("im", _fmt(value.imag)),
    )
    if args.format == "json":
        body = ", ".join(
            f'"{k}": "{v}"' if k == "method" else f'"{k}": {v}' for k, v in fields
        )
        print("{" + body + "}")
    else:
        print(",".join(k for k, _ in fields))
        print(",".join(v for _, v in fields))
    return 0


def cmd_table(args) -> int:
    tol = _resolve_tol(args)
    if args.method == "all":
        value_cols = [
            "closed_re", "closed_im",
            "quad_direct_re", "quad_direct_im",
            "quad_hermite_re", "quad_hermite_im",
        ]
        methods = list(_SINGLE_METHODS)
    else:
        value_cols = ["re", "im"]
        methods = [args.method]
    print(",".join(["m", "n", "beta", "q"] + value_cols))
    for m, n, beta, q in _grid(args):
        cells = [str(m), str(n), _fmt(beta), _fmt(q)]
        try:
            params = EvalParams(m, n, beta, q)
        except EvaluationError as exc:
            cells += [f"ERR:{_err_code(exc)}"] * (2 * len(methods))
            print(",".join(cells))
            continue
        for method in methods:
            try:
                value = _evaluate(method, params, tol)
            except EvaluationError as exc:
                cells += [f"ERR:{_err_code(exc)}"] * 2
            else:
                cells += [_fmt(value.real), _fmt(value.imag)]
        print(",".join(cells))
    return 0


def cmd_verify(args) -> int:
    tol = _resolve_tol(args)
    points = passed = failed = errors = 0
    worst = -1.0
    worst_at = None
    for m, n, beta, q in _grid(args):
        points += 1
        tag = f"m={m} n={n} beta={_fmt(beta)} q={_fmt(q)}"
        try:
            report = compare(EvalParams(m, n, beta, q), tol)
        except EvaluationError as exc:
            errors += 1
            print(f"ERR  {tag} {_err_code(exc)}: {exc}")
            continue
        d = report.max_rel_disagreement
        if d > worst:
            worst, worst_at = d, tag
        if report.passed:
            passed += 1
            print(f"PASS {tag} disagreement={d:.3e}")
        else:
            failed += 1
            print(f"FAIL {tag} disagreement={d:.3e} tol={tol:.3e}")
    print(f"points={points} passed={passed} failed={failed} errors={errors}")
    if worst_at is not None:
        print(f"max_disagreement={worst:.3e} at {worst_at}")
    return 0 if points > 0 and failed == 0 and errors == 0 else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = _OneLineParser(
        prog="besselgauss",
        description="Gaussian-windowed Bessel transform: closed form and "
                    "numerical cross-checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_OneLineParser)

    p_eval = sub.add_parser("eval", help="evaluate one parameter point")
    p_eval.add_argument("--m", type=int, required=True)
    p_eval.add_argument("--n", type=int, required=True)
    p_eval.add_argument("--beta", type=float, required=True)
    p_eval.add_argument("--q", type=float, required=True)
    p_eval.add_argument("--method", choices=_SINGLE_METHODS, default="closed")
    p_eval.add_argument("--format", choices=("json", "csv"), default="json")
    p_eval.add_argument("--tol", type=float, default=None,
                        help="quadrature tolerance (default BESSELGAUSS_TOL or 1e-9)")
    p_eval.set_defaults(func=cmd_eval)

    p_table = sub.add_parser("table", help="CSV sweep over a parameter grid")
    _add_grid_flags(p_table)
    p_table.add_argument("--method", choices=_SINGLE_METHODS + ("all",),
                         default="closed")
    p_table.set_defaults(func=cmd_table)

    p_verify = sub.add_parser("verify",
                              help="cross-check all evaluation paths on a grid")
    _add_grid_flags(p_verify)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except BrokenPipeError:
        return 0
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
