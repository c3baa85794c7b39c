"""Variance-optimal initial data for sawtooth signatures.

Level by level, ``π_l(b)`` is the value minimising
``E ∫ ‖π_l(Z_t(X, b^{<l} + v))‖² |dX_t|``; since level ``l`` of ``Z`` is
``v`` plus terms not depending on ``v``, the minimiser is minus the
``|dX|``-weighted mean of ``π_l(Z(X, b^{<l}))``.
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .bernoulli import bernoulli_number
from .paths import PathEnsemble
from .polynomial import poly_integral
from .sawtooth import Direction, as_direction, sawtooth
from .tensor import TruncatedTensor, from_levels, unit


def _speeds(X) -> np.ndarray:
    return np.linalg.norm(X.velocities, axis=1)


def _weighted_level_mean(ensemble: PathEnsemble, b: TruncatedTensor, direction: Direction, level: int):
    num = np.zeros(ensemble.dim**level)
    den = 0.0
    for X, w in ensemble:
        Z = sawtooth(X, b, direction, level)
        speeds = _speeds(X)
        for j in range(X.n_segments):
            if speeds[j] == 0.0:
                continue
            num += w * speeds[j] * poly_integral(Z.coeffs[level - 1][j], Z.segment_length(j))
            den += w * speeds[j] * Z.segment_length(j)
    return num, den


def optimal_tensor(ensemble: PathEnsemble, direction, m: int) -> TruncatedTensor:
    """``b^±`` up to level ``m`` for a weighted path ensemble."""
    direction = as_direction(direction)
    if m < 1:
        raise ValueError("depth must be at least 1")
    b = unit(ensemble.dim, m)
    for l in range(1, m + 1):
        num, den = _weighted_level_mean(ensemble, b, direction, l)
        if den <= 0.0:
            raise ValueError("ensemble has zero total variation")
        b = b.with_level(l, -num / den)
    return b


def optimal_tensor_lambda(moments: Sequence[float], direction, m: int, horizon: int = 1) -> TruncatedTensor:
    """``b^±`` for ``X_t = α t`` on ``[0, horizon]`` from the moments ``E[α^1], ..., E[α^{m+1}]``.

    Forward uses ``B^-``, backward uses ``B^+``:

        π_l(b) = (E[α^{l+1}] Σ_{j≤l} N^{l-j} B_j / ((l+1-j)! j!)
                  - Σ_{j<l} E[α^{l+1-j}] N^{l-j} π_j(b) / (l+1-j)!) / E[α]
    """
    direction = as_direction(direction)
    mom = [1.0] + [float(v) for v in moments]
    if len(mom) < m + 2:
        raise ValueError(f"need {m + 1} moments for depth {m}, got {len(mom) - 1}")
    if mom[1] <= 0:
        raise ValueError("first moment must be positive")
    if horizon < 1:
        raise ValueError("horizon must be a positive integer")
    variant = "-" if direction is Direction.FORWARD else "+"
    B = [float(bernoulli_number(j, variant)) for j in range(m + 1)]
    N = float(horizon)
    pi = [1.0]
    for l in range(1, m + 1):
        head = mom[l + 1] * sum(
            N ** (l - j) / math.factorial(l + 1 - j) * B[j] / math.factorial(j) for j in range(l + 1)
        )
        tail = sum(mom[l + 1 - j] * N ** (l - j) / math.factorial(l + 1 - j) * pi[j] for j in range(l))
        pi.append((head - tail) / mom[1])
    return from_levels(1, [np.array([p]) for p in pi])


def level_objective(ensemble: PathEnsemble, direction, b: TruncatedTensor, level: int) -> float:
    """``E ∫ ‖π_level(Z_t(X, b))‖² |dX_t|`` evaluated exactly."""
    direction = as_direction(direction)
    total = 0.0
    for X, w in ensemble:
        Z = sawtooth(X, b, direction, level)
        speeds = _speeds(X)
        for j in range(X.n_segments):
            c = Z.coeffs[level - 1][j]
            sq = np.zeros(2 * c.shape[0] - 1)
            for a in range(c.shape[0]):
                for e in range(c.shape[0]):
                    sq[a + e] += c[a] @ c[e]
            total += w * speeds[j] * float(poly_integral(sq, Z.segment_length(j)))
    return total


def optimality_margins(
    ensemble: PathEnsemble, direction, m: int, trials: int, eps: float = 0.1, rng=None
) -> np.ndarray:
    """Smallest ``J(v* + εu) - J(v*)`` per level over ``trials`` random unit directions ``u``."""
    rng = np.random.default_rng(0 if rng is None else rng)
    b = optimal_tensor(ensemble, direction, m)
    out = np.empty(m)
    for l in range(1, m + 1):
        best = b.truncate(l)
        base = level_objective(ensemble, direction, best, l)
        margin = np.inf
        for _ in range(trials):
            u = rng.standard_normal(ensemble.dim**l)
            u /= np.linalg.norm(u)
            moved = best.with_level(l, best.levels[l] + eps * u)
            margin = min(margin, level_objective(ensemble, direction, moved, l) - base)
        out[l - 1] = margin
    return out


def optimality_check(
    ensemble: PathEnsemble, direction, m: int, trials: int, eps: float = 0.1, rng=None, slack: float = 1e-12
) -> bool:
    """True when no sampled perturbation of any level beats the optimal value."""
    return bool(np.all(optimality_margins(ensemble, direction, m, trials, eps, rng) > -slack))
