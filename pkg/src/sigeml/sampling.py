"""Seeded generators of random series, paths, tensors and polynomial maps.

Every generator takes a ``numpy.random.Generator``; :func:`spawn` splits a
seed into independent streams so each trial or path is reproducible on its own.
"""
from __future__ import annotations

import numpy as np

from .paths import PathEnsemble, PiecewiseLinearPath, TimeSeries, interpolate_linear
from .polynomial import PolynomialMap
from .tensor import TruncatedTensor, from_levels


def spawn(seed: int, n: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(n)]


def random_series(rng: np.random.Generator, horizon: int, dim: int, integer: bool = False) -> TimeSeries:
    """Starts at 0; increments uniform in ``[-1, 1]^d`` (or integers in ``[-3, 3]``)."""
    if integer:
        steps = rng.integers(-3, 4, (horizon, dim)).astype(float)
    else:
        steps = rng.uniform(-1.0, 1.0, (horizon, dim))
    return TimeSeries(np.vstack([np.zeros((1, dim)), np.cumsum(steps, axis=0)]))


def random_path(rng: np.random.Generator, horizon: int, dim: int, refine: int = 1) -> PiecewiseLinearPath:
    """Linear interpolation of a random series, with ``refine`` extra pieces per unit cell when > 1."""
    if refine <= 1:
        return interpolate_linear(random_series(rng, horizon, dim))
    n = horizon * refine
    steps = rng.uniform(-1.0, 1.0, (n, dim)) / refine
    times = np.arange(n + 1, dtype=float) / refine
    return PiecewiseLinearPath(times, np.vstack([np.zeros((1, dim)), np.cumsum(steps, axis=0)]))


def random_ensemble(seed: int, n_paths: int, horizon: int, dim: int) -> PathEnsemble:
    return PathEnsemble.uniform([random_path(rng, horizon, dim) for rng in spawn(seed, n_paths)])


def random_group_tensor(rng: np.random.Generator, dim: int, depth: int) -> TruncatedTensor:
    """Unit scalar level, standard normal entries above."""
    return from_levels(dim, [np.ones(1)] + [rng.standard_normal(dim**k) for k in range(1, depth + 1)])


def random_polynomial(rng: np.random.Generator, in_dim: int, out_dim: int, degree: int, terms: int = 6) -> PolynomialMap:
    exps = []
    while len(exps) < terms:
        e = rng.integers(0, degree + 1, in_dim)
        if e.sum() <= degree:
            exps.append(e)
    coefs = rng.standard_normal((terms, out_dim, in_dim))
    return PolynomialMap(in_dim, out_dim, np.array(exps), coefs)
