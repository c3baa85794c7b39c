"""Riemann sums, exact Stieltjes integrals and Euler-Maclaurin type expansions.

For a polynomial integrand ``f`` along a piecewise-linear ``X`` every term of

    I^±_N = ∫_0^N f(X) dX - [f(X) π_1(b)]_0^N
            + Σ_{l=2}^m (-1)^l [D^{l-1}f(X) π_l(Z^±(X, b))]_0^N + R^m(b),
    R^m(b) = (-1)^{m+1} ∫_0^N D^m f(X_t) dπ_{m+1}(Z^±_t),

is a sum of exact per-segment polynomial integrals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .bernoulli import bernoulli_number, bernoulli_polynomial, bernoulli_polynomial_coeffs
from .optimal import optimal_tensor
from .paths import PathEnsemble, PiecewiseLinearPath, TimeSeries, interpolate_linear
from .polynomial import ControlledIntegrand, PolynomialMap, poly_integral, poly_matmul
from .sawtooth import Direction, TensorPolyPath, as_direction, sawtooth
from .tensor import TruncatedTensor


def _check_dims(f: PolynomialMap, dim: int) -> None:
    if f.in_dim != dim:
        raise ValueError(f"integrand expects dimension {f.in_dim}, data has dimension {dim}")


def riemann_sum(f: PolynomialMap, x: TimeSeries, direction) -> np.ndarray:
    """Backward ``Σ f(x_k) Δx_k`` or forward ``Σ f(x_{k+1}) Δx_k``."""
    direction = as_direction(direction)
    _check_dims(f, x.dim)
    dx = x.increments()
    shift = 1 if direction is Direction.FORWARD else 0
    total = np.zeros(f.out_dim)
    for k in range(x.horizon):
        total += f(x.values[k + shift]) @ dx[k]
    return total


def trapezoid_sum(f: PolynomialMap, x: TimeSeries) -> np.ndarray:
    return 0.5 * (riemann_sum(f, x, Direction.BACKWARD) + riemann_sum(f, x, Direction.FORWARD))


def stieltjes_integral(f: PolynomialMap, X: PiecewiseLinearPath, s: float, t: float) -> np.ndarray:
    """``∫_s^t f(X_u) dX_u``, exact segment by segment."""
    _check_dims(f, X.dim)
    if s > t:
        raise ValueError(f"interval start {s} exceeds end {t}")
    total = np.zeros(f.out_dim)
    for j, a, b in X.pieces(s, t):
        poly = f.jet_on_line(0, X.values[j], X.velocities[j]) @ X.velocities[j]
        t0 = X.times[j]
        total += poly_integral(poly, b - t0, a - t0)
    return total


def remainder_integral(f: PolynomialMap, X: PiecewiseLinearPath, Z: TensorPolyPath, m: int) -> np.ndarray:
    """``(-1)^{m+1} ∫ D^m f(X_t) dπ_{m+1}(Z_t)`` with ``dπ_{m+1}(Z) = dX ⊗ π_m(Z)``.

    Only level ``m`` of ``Z`` enters, so ``Z.depth >= m`` suffices.
    """
    _check_dims(f, X.dim)
    if m < 1:
        raise ValueError("remainder order must be at least 1")
    if Z.depth < m:
        raise ValueError(f"sawtooth depth {Z.depth} is below the remainder order {m}")
    if Z.times.shape != X.times.shape or not np.array_equal(Z.times, X.times):
        raise ValueError("sawtooth path was built on a different path")
    Y = ControlledIntegrand(f, X)
    total = np.zeros(f.out_dim)
    for j in range(X.n_segments):
        poly = poly_matmul(Y.segment_poly(m, j), Z.derivative_poly(j, m + 1))
        total += poly_integral(poly, Z.segment_length(j))
    return (-1) ** (m + 1) * total


@dataclass(frozen=True, eq=False)
class EmlReport:
    """Terms of one expansion; ``boundary[l-1]`` holds ``[Y^{l-1} π_l(Z)]_0^N``."""

    direction: Direction
    order: int
    lhs: np.ndarray
    integral: np.ndarray
    boundary: tuple[np.ndarray, ...]
    remainder: np.ndarray

    @property
    def rhs(self) -> np.ndarray:
        total = self.integral - self.boundary[0]
        for l in range(2, self.order + 1):
            total = total + (-1) ** l * self.boundary[l - 1]
        return total + self.remainder

    @property
    def residual(self) -> float:
        return float(np.max(np.abs(self.lhs - self.rhs)))

    def to_json(self) -> dict:
        vec = lambda a: [float(v) for v in np.atleast_1d(a)]  # noqa: E731
        return {
            "direction": self.direction.value,
            "order": self.order,
            "lhs": vec(self.lhs),
            "integral": vec(self.integral),
            "boundary": [vec(b) for b in self.boundary],
            "remainder": vec(self.remainder),
            "rhs": vec(self.rhs),
            "residual": self.residual,
        }


def _grid_data(X: PiecewiseLinearPath, x: TimeSeries | None) -> TimeSeries:
    if x is None:
        return X.sample_integers()
    if not X.interpolates(x):
        raise ValueError("path does not interpolate the time series at the integers")
    return x


def preliminary_eml(
    f: PolynomialMap,
    x: TimeSeries | None,
    X: PiecewiseLinearPath,
    b: TruncatedTensor,
    direction,
    m: int,
) -> EmlReport:
    """Expansion of ``I^±_N(f, x)`` around the sawtooth signature started at ``b``.

    The identity holds for every ``b`` with unit scalar level. ``m = 1``
    is accepted and gives the bare ``∫ - [f π_1(b)] + R^1`` form.
    """
    direction = as_direction(direction)
    if m < 1:
        raise ValueError("expansion order must be at least 1")
    _check_dims(f, X.dim)
    x = _grid_data(X, x)
    N = x.horizon
    Z = sawtooth(X, b, direction, m)
    Y = ControlledIntegrand(f, X)
    b1 = Z.datum.levels[1]
    boundary = [Y.apply(0, N, b1) - Y.apply(0, 0.0, b1)]
    end, start = Z(float(N)), Z(0.0)
    for l in range(2, m + 1):
        boundary.append(Y.apply(l - 1, N, end.levels[l]) - Y.apply(l - 1, 0.0, start.levels[l]))
    return EmlReport(
        direction=direction,
        order=m,
        lhs=riemann_sum(f, x, direction),
        integral=stieltjes_integral(f, X, 0.0, float(N)),
        boundary=tuple(boundary),
        remainder=remainder_integral(f, X, Z, m),
    )


def generalized_eml(
    f: PolynomialMap,
    x: TimeSeries | None,
    X: PiecewiseLinearPath,
    direction,
    m: int,
    ensemble: PathEnsemble | None = None,
) -> EmlReport:
    """Expansion around the variance-optimal datum of ``ensemble`` (``{X}`` by default)."""
    ensemble = PathEnsemble.single(X) if ensemble is None else ensemble
    b = optimal_tensor(ensemble, direction, m + 1)
    return preliminary_eml(f, x, X, b, direction, m)


def _as_derivatives(f, m: int) -> list[Callable[[float], float]]:
    if isinstance(f, PolynomialMap):
        if f.in_dim != 1 or f.out_dim != 1:
            raise ValueError("classical expansion needs a scalar function of one variable")
        return [lambda s, k=k: float(f.jet_at(k, [s]).reshape(-1)[0]) for k in range(m + 1)]
    derivs = list(f)
    if len(derivs) < m + 1:
        raise ValueError(f"need f and its first {m} derivatives, got {len(derivs)} callables")
    return derivs


def classical_remainder(f, N: int, m: int) -> float:
    """``((-1)^{m+1}/m!) ∫_0^N f^{(m)}(s) P_m(s - [s]) ds``.

    ``f`` is a scalar 1-d ``PolynomialMap`` (integrated exactly) or a
    sequence ``[f, f', ..., f^{(m)}]`` of callables (adaptive quadrature).
    """
    if m < 1:
        raise ValueError("remainder order must be at least 1")
    scale = (-1) ** (m + 1) / math.factorial(m)
    if isinstance(f, PolynomialMap):
        _as_derivatives(f, m)
        pm = np.array([float(c) for c in bernoulli_polynomial_coeffs(m)])
        total = 0.0
        for k in range(N):
            g = f.jet_on_line(m, [float(k)], [1.0])[:, 0, 0]
            total += float(poly_integral(np.polynomial.polynomial.polymul(g, pm), 1.0))
        return scale * total
    dm = _as_derivatives(f, m)[m]
    total = 0.0
    for k in range(N):
        val, _ = integrate.quad(lambda s: dm(s) * bernoulli_polynomial(m, s - k), k, k + 1, epsabs=1e-13, epsrel=1e-13)
        total += val
    return scale * total


def classical_eml(f, N: int, m: int, direction) -> EmlReport:
    """``Σ_{k ∈ [[0,N]]^±} f(k) = ∫_0^N f + Σ_l B^±_l/l! [f^{(l-1)}]_0^N + R_m``.

    Reported in the generalized layout: ``boundary[l-1]`` is
    ``[f^{(l-1)}]_0^N`` times the optimal constant ``B^∓_l/l!`` of the line
    ``X_t = t``. Accepts the same ``f`` as :func:`classical_remainder`.
    """
    direction = as_direction(direction)
    if m < 1 or N < 1:
        raise ValueError("need m >= 1 and N >= 1")
    derivs = _as_derivatives(f, m)
    ks = range(1, N + 1) if direction is Direction.FORWARD else range(N)
    lhs = math.fsum(derivs[0](float(k)) for k in ks)
    if isinstance(f, PolynomialMap):
        integral = float(stieltjes_integral(f, interpolate_linear(TimeSeries(np.arange(N + 1.0))), 0.0, float(N))[0])
    else:
        integral = math.fsum(
            integrate.quad(derivs[0], k, k + 1, epsabs=1e-13, epsrel=1e-13)[0] for k in range(N)
        )
    flip = "-" if direction is Direction.FORWARD else "+"
    boundary = []
    for l in range(1, m + 1):
        const = float(bernoulli_number(l, flip)) / math.factorial(l)
        boundary.append(np.array([const * (derivs[l - 1](float(N)) - derivs[l - 1](0.0))]))
    return EmlReport(
        direction=direction,
        order=m,
        lhs=np.array([lhs]),
        integral=np.array([integral]),
        boundary=tuple(boundary),
        remainder=np.array([classical_remainder(f, N, m)]),
    )


def classical_boundary_terms(derivatives: Sequence[Callable[[float], float]], N: int, m: int, direction) -> list[float]:
    """``B^±_l/l! [f^{(l-1)}]_0^N`` for ``l = 1..m`` in the classical sign convention."""
    direction = as_direction(direction)
    variant = "+" if direction is Direction.FORWARD else "-"
    return [
        float(bernoulli_number(l, variant)) / math.factorial(l) * (derivatives[l - 1](float(N)) - derivatives[l - 1](0.0))
        for l in range(1, m + 1)
    ]
