"""Forward and backward sawtooth signatures ``Z^±(X, b)``.

Level 1 is the sawtooth ``X_t - X_[t] + b_1`` (forward) or
``X_t - X_[t+1] + b_1`` (backward); every higher level solves
``dπ_k(Z) = dX ⊗ π_{k-1}(Z)`` with ``π_k(Z_0) = b_k``. On a linear piece of
``X`` each level is a polynomial in local time, so the solution is stored
exactly as per-segment coefficient arrays.

Conventions at integer times: values are right-continuous, and at the
horizon ``t = N`` the path is frozen, so ``π_1(Z^±_N) = b_1`` in both
directions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bernoulli import bernoulli_number
from .paths import PiecewiseLinearPath
from .signature import flip_signature
from .tensor import TruncatedTensor, tensor_mul, vector


class Direction(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"

    @property
    def sign(self) -> int:
        return 1 if self is Direction.FORWARD else -1


def as_direction(d) -> Direction:
    if isinstance(d, Direction):
        return d
    key = str(d).lower()
    aliases = {"+": "forward", "-": "backward", "fwd": "forward", "bwd": "backward"}
    return Direction(aliases.get(key, key))


def _prepare_datum(b: TruncatedTensor, dim: int, depth: int) -> TruncatedTensor:
    if b.dim != dim:
        raise ValueError(f"initial datum has dimension {b.dim}, path has {dim}")
    if b.level0 != 1.0:
        raise ValueError(f"initial datum needs level0 == 1, got {b.level0}")
    return b.truncate(depth)


@dataclass(frozen=True, eq=False)
class TensorPolyPath:
    """Tensor path stored as per-segment polynomials in local time.

    ``coeffs[k - 1]`` has shape ``(M, k + 1, d**k)``: for segment ``j`` and
    local time ``u = t - times[j]``, level ``k`` equals
    ``sum_i coeffs[k-1][j, i] * u**i``.
    """

    dim: int
    depth: int
    direction: Direction
    times: np.ndarray
    velocities: np.ndarray
    coeffs: tuple[np.ndarray, ...]
    datum: TruncatedTensor

    @property
    def n_segments(self) -> int:
        return self.times.size - 1

    @property
    def horizon(self) -> float:
        return float(self.times[-1])

    def segment_length(self, j: int) -> float:
        return float(self.times[j + 1] - self.times[j])

    def level_poly(self, j: int, k: int) -> np.ndarray:
        """Coefficients ``(k + 1, d**k)`` of level ``k`` on segment ``j``."""
        if k == 0:
            return np.ones((1, 1))
        return self.coeffs[k - 1][j]

    def derivative_poly(self, j: int, k: int) -> np.ndarray:
        """Density of ``dπ_k(Z)`` w.r.t. ``du`` on segment ``j``: ``v ⊗ π_{k-1}(Z)``.

        Shape ``(k, d**k)``. Level-1 jumps at integers are not included.
        """
        prev = self.level_poly(j, k - 1)
        v = self.velocities[j]
        return np.einsum("a,ib->iab", v, prev).reshape(prev.shape[0], -1)

    def __call__(self, t: float) -> TruncatedTensor:
        if not self.times[0] <= t <= self.times[-1]:
            raise ValueError(f"t = {t} outside [{self.times[0]}, {self.times[-1]}]")
        j = min(int(np.searchsorted(self.times, t, side="right")) - 1, self.n_segments - 1)
        u = t - self.times[j]
        levels = [np.ones(1)]
        for k in range(1, self.depth + 1):
            c = self.coeffs[k - 1][j]
            levels.append(np.polynomial.polynomial.polyval(u, c))
        if t == self.times[-1] and self.depth >= 1:
            levels[1] = self.datum.levels[1].copy()
        return TruncatedTensor(self.dim, tuple(levels))

    def level_at(self, t: float, k: int) -> np.ndarray:
        return self(t).levels[k]

    def max_degree(self, k: int) -> int:
        """Largest index of a non-zero coefficient for level ``k`` over all segments."""
        c = self.coeffs[k - 1]
        nz = np.nonzero(np.any(c != 0, axis=2))[1]
        return int(nz.max()) if nz.size else 0


def sawtooth(X: PiecewiseLinearPath, b: TruncatedTensor, direction, depth: int) -> TensorPolyPath:
    """Build ``Z^±(X, b)`` truncated at ``depth`` by exact antidifferentiation.

    ``X`` must run over ``[0, N]`` with every integer a knot; ``b`` is
    truncated or zero-padded to ``depth``.
    """
    direction = as_direction(direction)
    if depth < 1:
        raise ValueError("sawtooth depth must be at least 1")
    X.horizon()  # validates integer knots
    b = _prepare_datum(b, X.dim, depth)
    d, M = X.dim, X.n_segments
    times = X.times
    coeffs = [np.zeros((M, k + 1, d**k)) for k in range(1, depth + 1)]
    lengths = np.diff(times)
    anchor_shift = 0 if direction is Direction.FORWARD else 1
    knot_of = {float(t): i for i, t in enumerate(times)}

    for j in range(M):
        v = X.velocities[j]
        cell = int(np.floor(times[j]))
        anchor = X.values[knot_of[float(cell + anchor_shift)]]
        coeffs[0][j, 0] = X.values[j] - anchor + b.levels[1]
        coeffs[0][j, 1] = v
        for k in range(2, depth + 1):
            prev = coeffs[k - 2][j]
            cur = coeffs[k - 1][j]
            if j == 0:
                cur[0] = b.levels[k]
            else:
                cur[0] = np.polynomial.polynomial.polyval(lengths[j - 1], coeffs[k - 1][j - 1])
            for i in range(prev.shape[0]):
                cur[i + 1] = np.outer(v, prev[i]).reshape(-1) / (i + 1)

    for c in coeffs:
        c.flags.writeable = False
    return TensorPolyPath(d, depth, direction, times, X.velocities, tuple(coeffs), b)


def sawtooth_closed_form(
    X: PiecewiseLinearPath, b: TruncatedTensor, direction, depth: int, t: float
) -> TruncatedTensor:
    """``Z^±_t(X, b)`` from flip signatures.

    forward:  S^♭_{0,t} ⊗ b - Σ_{k=0}^{[t]-1} S^♭_{k+1,t} ⊗ ΔX_k
    backward: S^♭_{0,t} ⊗ b - Σ_{k=0}^{[t]}   S^♭_{k,t}   ⊗ ΔX_k

    with ``ΔX_N = 0`` (the path is frozen after ``N``).
    """
    direction = as_direction(direction)
    N = X.horizon()
    if not 0 <= t <= N:
        raise ValueError(f"t = {t} outside [0, {N}]")
    b = _prepare_datum(b, X.dim, depth)
    knots = X.sample_integers().values
    floor_t = int(np.floor(t))
    result = tensor_mul(flip_signature(X, 0.0, t, depth), b)
    if direction is Direction.FORWARD:
        ks = range(floor_t)
        start = lambda k: k + 1  # noqa: E731
    else:
        ks = range(min(floor_t, N - 1) + 1)
        start = lambda k: k  # noqa: E731
    for k in ks:
        dx = vector(knots[k + 1] - knots[k], depth)
        result = result - tensor_mul(flip_signature(X, float(start(k)), t, depth), dx)
    return result


def sawtooth_lambda_1d(lam: float, b: TruncatedTensor, direction, depth: int, t: float) -> TruncatedTensor:
    """Sawtooth signature of the 1-d line ``X_t = lam * t`` on ``[0, ∞)``.

    At integer ``t`` the sum over unit cells is replaced by its Faulhaber
    closed form. The line is not frozen at ``t``, so at integer ``t`` the
    backward level 1 equals ``b_1 - lam`` (right-continuous value).
    """
    direction = as_direction(direction)
    if lam <= 0:
        raise ValueError(f"slope must be positive, got {lam}")
    if t < 0:
        raise ValueError("t must be non-negative")
    b = _prepare_datum(b, 1, depth)
    bj = [float(b.levels[j][0]) for j in range(depth + 1)]
    n = int(np.floor(t))
    integer = t == n
    levels = [np.ones(1)]
    for l in range(1, depth + 1):
        drift = sum((lam * t) ** (l - j) / math.factorial(l - j) * bj[j] for j in range(l + 1))
        if integer and n >= 1:
            if direction is Direction.FORWARD:
                corr = sum(
                    n ** (l - j) / math.factorial(l - j) * float(bernoulli_number(j, "-")) / math.factorial(j)
                    for j in range(l)
                )
            else:
                corr = sum(
                    n ** (l - j) / math.factorial(l - j) * float(bernoulli_number(j, "+")) / math.factorial(j)
                    for j in range(l)
                ) + (1.0 if l == 1 else 0.0)
        elif integer:  # t == 0
            corr = 0.0 if direction is Direction.FORWARD else (1.0 if l == 1 else 0.0)
        elif direction is Direction.FORWARD:
            corr = sum((t - k - 1) ** (l - 1) for k in range(n)) / math.factorial(l - 1)
        else:
            corr = sum((t - k) ** (l - 1) for k in range(n + 1)) / math.factorial(l - 1)
        levels.append(np.array([drift - lam**l * corr]))
    return TruncatedTensor(1, tuple(levels))
