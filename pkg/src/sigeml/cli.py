"""Command-line interface.

Exit codes: 0 success, 1 a verification defect at or above tolerance,
2 usage or input error.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .bernoulli import bernoulli_number
from .eml import classical_eml, generalized_eml, preliminary_eml
from .formats import (
    FormatError,
    dumps,
    read_ensemble_json,
    read_path_csv,
    read_polynomial_json,
    read_tensor_json,
    tensor_to_json,
)
from .optimal import optimal_tensor, optimal_tensor_lambda
from .paths import PathEnsemble
from .polynomial import PolynomialMap
from .sampling import random_path, spawn
from .sawtooth import sawtooth
from .signature import flip_signature, signature
from .tensor import unit
from .verify import SUITES, TOLERANCE_ENV, run_suite


class UsageError(Exception):
    pass


def _emit(obj, args) -> None:
    text = dumps(obj) + "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_sig(args) -> int:
    X = read_path_csv(args.csv)
    s, t = args.interval if args.interval else (X.start, X.end)
    fn = flip_signature if args.command == "flipsig" else signature
    _emit(tensor_to_json(fn(X, s, t, args.depth)), args)
    return 0


def _datum(choice: str, X, direction: str, depth: int):
    if choice == "unit":
        return unit(X.dim, depth)
    if choice == "optimal":
        return optimal_tensor(PathEnsemble.single(X), direction, depth)
    return read_tensor_json(choice)


def cmd_sawtooth(args) -> int:
    X = read_path_csv(args.csv)
    b = _datum(args.b, X, args.direction, args.depth)
    Z = sawtooth(X, b, args.direction, args.depth)
    times = args.at if args.at else [float(k) for k in range(int(X.end) + 1)]
    _emit(
        {
            "direction": args.direction,
            "datum": tensor_to_json(Z.datum),
            "samples": [{"t": t, "value": tensor_to_json(Z(t))} for t in times],
        },
        args,
    )
    return 0


def _exp_derivatives(m: int):
    return [math.exp] * (m + 1)


def cmd_eml(args) -> int:
    if args.classical is not None:
        if args.horizon is None:
            raise UsageError("--classical needs --horizon N")
        f = _exp_derivatives(args.order) if args.classical == "exp" else PolynomialMap.power(int(args.classical))
        report = classical_eml(f, args.horizon, args.order, args.direction)
        _emit(report.to_json(), args)
        return 0
    if args.csv is None or args.poly is None:
        raise UsageError("eml needs a path CSV and a polynomial JSON (or --classical)")
    X = read_path_csv(args.csv)
    f = read_polynomial_json(args.poly)
    if args.datum:
        report = preliminary_eml(f, None, X, read_tensor_json(args.datum), args.direction, args.order)
    else:
        if args.ensemble:
            ensemble = read_ensemble_json(args.ensemble)
        elif args.seed is not None:
            extra = [random_path(rng, X.horizon(), X.dim) for rng in spawn(args.seed, args.paths)]
            ensemble = PathEnsemble.uniform([X] + extra)
        else:
            ensemble = None
        report = generalized_eml(f, None, X, args.direction, args.order, ensemble)
    _emit(report.to_json(), args)
    return 0


def cmd_bernoulli(args) -> int:
    m = args.count
    if args.moments:
        moments = [float(v) for v in np.atleast_1d(np.loadtxt(args.moments, delimiter=",", ndmin=1))]
        source = {"moments": moments}
    else:
        moments = [args.lam**j for j in range(1, m + 2)]
        source = {"lambda": args.lam}
    b = optimal_tensor_lambda(moments, args.direction, m, args.horizon)
    variant = "-" if args.direction == "forward" else "+"
    rows = [
        {
            "level": l,
            "value": float(b.levels[l][0]),
            "bernoulli": float(bernoulli_number(l, variant)),
            "bernoulli_over_factorial": float(bernoulli_number(l, variant)) / math.factorial(l),
        }
        for l in range(m + 1)
    ]
    _emit({"direction": args.direction, "horizon": args.horizon, **source, "table": rows}, args)
    return 0


def cmd_verify(args) -> int:
    series = read_path_csv(args.csv).sample_integers() if args.csv else None
    report = run_suite(args.suite, args.seed, args.trials, args.tolerance, series)
    _emit(report, args)
    return 0 if report["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sigeml", description="Signatures, sawtooth signatures and EML expansions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", "-o", help="write JSON here instead of stdout")
        return p

    def direction(p):
        p.add_argument("--direction", choices=["forward", "backward"], default="forward")

    for name in ("sig", "flipsig"):
        p = common(sub.add_parser(name, help=f"{'flip ' if name == 'flipsig' else ''}signature of a CSV path"))
        p.add_argument("csv")
        p.add_argument("--depth", type=int, default=3)
        p.add_argument("--interval", type=float, nargs=2, metavar=("S", "T"))
        p.set_defaults(func=cmd_sig)

    p = common(sub.add_parser("sawtooth", help="sample a sawtooth signature"))
    p.add_argument("csv")
    direction(p)
    p.add_argument("--b", default="unit", help="unit, optimal, or a tensor JSON file")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--at", type=float, nargs="+", help="sample times (default: the integers)")
    p.set_defaults(func=cmd_sawtooth)

    p = common(sub.add_parser("eml", help="Euler-Maclaurin expansion of a Riemann-Stieltjes sum"))
    p.add_argument("csv", nargs="?")
    p.add_argument("poly", nargs="?", help="polynomial map JSON")
    direction(p)
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--datum", help="tensor JSON: expand around this b instead of the optimal one")
    p.add_argument("--ensemble", help='JSON list of {"csv": file, "weight": w}')
    p.add_argument("--seed", type=int, help="add --paths random paths to the ensemble")
    p.add_argument("--paths", type=int, default=8)
    p.add_argument("--classical", metavar="Q|exp", help="1-d line case for f(x)=x^Q or f=exp")
    p.add_argument("--horizon", type=int, help="N for --classical")
    p.set_defaults(func=cmd_eml)

    p = common(sub.add_parser("bernoulli", help="optimal constants of X_t = αt"))
    p.add_argument("--count", type=int, default=8)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--lambda", dest="lam", type=float)
    src.add_argument("--moments", help="comma separated file of E[α], E[α²], ...")
    direction(p)
    p.add_argument("--horizon", type=int, default=1)
    p.set_defaults(func=cmd_bernoulli)

    p = common(sub.add_parser("verify", help="randomised identity checks"))
    p.add_argument("--suite", choices=list(SUITES), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--tolerance", type=float, help=f"default per suite, or ${TOLERANCE_ENV}")
    p.add_argument("--csv", help="pin the series for series-based suites")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormatError, ValueError, OSError) as exc:
        print(f"sigeml {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
