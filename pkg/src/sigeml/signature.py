"""Signatures and flip signatures of piecewise-linear paths."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .paths import PiecewiseLinearPath
from .tensor import (
    TruncatedTensor,
    gamma_involution,
    tensor_exp,
    tensor_inverse,
    tensor_mul,
    unit,
)


def signature(X: PiecewiseLinearPath, s: float, t: float, depth: int) -> TruncatedTensor:
    """Truncated signature ``S_{s,t}(X)``.

    Each linear piece contributes ``exp(displacement)``; pieces are folded
    left to right with Chen's identity.
    """
    if s > t:
        raise ValueError(f"interval start {s} exceeds end {t}")
    result = unit(X.dim, depth)
    for j, a, b in X.pieces(s, t):
        result = tensor_mul(result, tensor_exp(X.velocities[j] * (b - a), depth))
    return result


def flip_signature(X: PiecewiseLinearPath, s: float, t: float, depth: int) -> TruncatedTensor:
    """Flip signature ``S^♭_{s,t}(X) = Γ(S_{s,t}(X)^{-1})``."""
    return gamma_involution(tensor_inverse(signature(X, s, t, depth)))


def time_reversal(X: PiecewiseLinearPath) -> PiecewiseLinearPath:
    """``u ↦ X_{a+b-u}`` on the same window ``[a, b]``."""
    a, b = X.start, X.end
    return PiecewiseLinearPath((a + b - X.times)[::-1], X.values[::-1])


def _gauss_nodes(depth: int):
    # levels of S^♭ are polynomials of degree <= depth inside a segment
    return np.polynomial.legendre.leggauss(depth // 2 + 2)


def flip_ode_residual(X: PiecewiseLinearPath, depth: int, grid: Sequence[float]) -> float:
    """Defect of ``dS^♭_{0,t} = dX_t ⊗ S^♭_{0,t}`` over the cells of ``grid``.

    For consecutive grid points ``t < t + h`` this returns the largest

        ‖S^♭_{0,t+h} - S^♭_{0,t} - ∫_t^{t+h} dX_u ⊗ S^♭_{0,u}‖ / h

    where the integral is evaluated exactly piece by piece with Gauss-Legendre
    nodes (the integrand is polynomial in ``u`` on every linear piece). The
    result is zero up to rounding. Test utility only.
    """
    grid = np.asarray(sorted(grid), dtype=float)
    if grid.size < 2:
        return 0.0
    origin = X.start
    nodes, weights = _gauss_nodes(depth)
    worst = 0.0
    for t0, t1 in zip(grid[:-1], grid[1:]):
        h = t1 - t0
        if h <= 0:
            continue
        integral = [np.zeros(X.dim**k) for k in range(depth + 1)]
        for j, a, b in X.pieces(t0, t1):
            v = X.velocities[j]
            for node, w in zip(nodes, weights):
                u = a + (b - a) * (node + 1) / 2
                S = flip_signature(X, origin, u, depth)
                for k in range(1, depth + 1):
                    integral[k] += w * (b - a) / 2 * np.outer(v, S.levels[k - 1]).reshape(-1)
        lhs = flip_signature(X, origin, t1, depth) - flip_signature(X, origin, t0, depth)
        defect = np.sqrt(sum(np.sum((lhs.levels[k] - integral[k]) ** 2) for k in range(depth + 1)))
        worst = max(worst, float(defect) / h)
    return worst
