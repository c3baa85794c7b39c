"""Randomised verification suites producing JSON-ready defect reports.

Each suite draws ``trials`` independent inputs from ``seed`` and records one
defect per trial. A suite passes when every defect is strictly below the
tolerance.
"""
from __future__ import annotations

import os
from typing import Callable

from .discrete import discrete_signature_expansion_check, hoffman_identity_check, sawtooth_recursion_check
from .eml import preliminary_eml
from .optimal import optimality_margins
from .paths import PathEnsemble, TimeSeries, interpolate_linear
from .sampling import random_group_tensor, random_path, random_polynomial, random_series, spawn
from .signature import flip_signature, signature
from .tensor import max_abs_diff, tensor_mul

DEFAULT_TOLERANCES = {
    "chen": 1e-12,
    "hoffman": 1e-9,
    "sawtooth-recursion": 1e-10,
    "discrete-expansion": 1e-10,
    "eml": 1e-10,
    "optimality": 1e-12,
}
TOLERANCE_ENV = "SIGEML_TOL"


def default_tolerance(suite: str) -> float:
    override = os.environ.get(TOLERANCE_ENV)
    return float(override) if override else DEFAULT_TOLERANCES[suite]


def _chen(rng, series):
    d = int(rng.integers(1, 4))
    X = random_path(rng, int(rng.integers(2, 5)), d, refine=int(rng.integers(1, 3)))
    depth = int(rng.integers(1, 5))
    u = float(rng.uniform(X.start, X.end))
    S = signature(X, X.start, X.end, depth)
    chen = max_abs_diff(tensor_mul(signature(X, X.start, u, depth), signature(X, u, X.end, depth)), S)
    Sf = flip_signature(X, X.start, X.end, depth)
    flip = max_abs_diff(tensor_mul(flip_signature(X, u, X.end, depth), flip_signature(X, X.start, u, depth)), Sf)
    return max(chen, flip), {"dim": d, "depth": depth, "split": u}


def _hoffman(rng, series):
    x = series or random_series(rng, int(rng.integers(1, 7)), int(rng.integers(1, 4)), integer=True)
    return hoffman_identity_check(x, x.horizon, 4), {"dim": x.dim, "horizon": x.horizon}


def _recursion(rng, series):
    x = series or random_series(rng, int(rng.integers(1, 5)), int(rng.integers(1, 3)))
    return sawtooth_recursion_check(x, interpolate_linear(x), 5), {"dim": x.dim, "horizon": x.horizon}


def _expansion(rng, series):
    x = series or random_series(rng, int(rng.integers(1, 5)), int(rng.integers(1, 3)))
    return discrete_signature_expansion_check(x, interpolate_linear(x), 4), {"dim": x.dim, "horizon": x.horizon}


def _eml(rng, series):
    x = series or random_series(rng, int(rng.integers(1, 5)), int(rng.integers(1, 3)))
    X = interpolate_linear(x)
    f = random_polynomial(rng, x.dim, 1, int(rng.integers(0, 5)))
    m = int(rng.integers(1, 6))
    b = random_group_tensor(rng, x.dim, int(rng.integers(1, 6)))
    direction = "forward" if rng.integers(2) else "backward"
    report = preliminary_eml(f, x, X, b, direction, m)
    return report.residual, {"dim": x.dim, "horizon": x.horizon, "order": m, "direction": direction}


def _optimality(rng, series):
    d = int(rng.integers(1, 3))
    paths = [random_path(r, 2, d) for r in spawn(int(rng.integers(2**31)), 2)]
    margins = optimality_margins(PathEnsemble.uniform(paths), "forward", 3, 20, rng=rng)
    return max(0.0, -float(margins.min())), {"dim": d, "min_margin": float(margins.min())}


SUITES: dict[str, Callable] = {
    "chen": _chen,
    "hoffman": _hoffman,
    "sawtooth-recursion": _recursion,
    "discrete-expansion": _expansion,
    "eml": _eml,
    "optimality": _optimality,
}


def run_suite(suite: str, seed: int, trials: int, tolerance: float | None = None, series: TimeSeries | None = None) -> dict:
    """Run ``trials`` random instances; ``series`` pins the data for the series-based suites."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if trials < 1:
        raise ValueError("trials must be positive")
    tol = default_tolerance(suite) if tolerance is None else float(tolerance)
    defects = []
    for i, rng in enumerate(spawn(seed, trials)):
        value, params = SUITES[suite](rng, series)
        defects.append({"trial": i, "defect": float(value), **params})
    worst = max(d["defect"] for d in defects)
    return {
        "identity": suite,
        "parameters": {"seed": seed, "trials": trials, "tolerance": tol},
        "max_defect": worst,
        "pass": bool(all(d["defect"] < tol for d in defects)),
        "defects": defects,
    }
