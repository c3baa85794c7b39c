"""Polynomial integrands ``f: R^d -> L(R^d, R^e)`` with exact derivatives.

``D^k f(x)`` is stored as an ``(e, d**(k+1))`` matrix acting on level-(k+1)
tensors, with slot order ``D^k f(x)[v_1, ..., v_k](v_{k+1})``: the ``k``
derivative directions come first (slowest) and the argument of ``f(x)``
last. With this order ``d(Y^{k-1}(z)) = Y^k(dX ⊗ z)`` along a path.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

import numpy as np
from numpy.polynomial import polynomial as P

from .paths import PiecewiseLinearPath


@dataclass(frozen=True, eq=False)
class PolynomialMap:
    """``e x d`` matrix of polynomials in ``d`` variables.

    ``exponents[n]`` is a monomial exponent vector and ``coefficients[n]``
    the ``(e, d)`` matrix multiplying it.
    """

    in_dim: int
    out_dim: int
    exponents: np.ndarray
    coefficients: np.ndarray
    _jets: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        exps = np.asarray(self.exponents, dtype=np.int64).reshape(-1, self.in_dim)
        coefs = np.asarray(self.coefficients, dtype=float).reshape(-1, self.out_dim, self.in_dim)
        if exps.shape[0] != coefs.shape[0]:
            raise ValueError("one coefficient matrix per monomial required")
        if np.any(exps < 0):
            raise ValueError("exponents must be non-negative")
        exps, coefs = _combine(exps, coefs)
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "coefficients", coefs)

    @classmethod
    def from_terms(cls, in_dim: int, out_dim: int, terms: Mapping) -> "PolynomialMap":
        """Build from ``{(row, col): {exponent_tuple: coef}}`` (0-based rows/cols)."""
        exps, coefs = [], []
        for (row, col), monomials in terms.items():
            if not (0 <= row < out_dim and 0 <= col < in_dim):
                raise ValueError(f"entry ({row}, {col}) outside {out_dim}x{in_dim}")
            for e, c in monomials.items():
                e = tuple(e) if np.ndim(e) else (e,)
                if len(e) != in_dim:
                    raise ValueError(f"exponent {e} does not have {in_dim} entries")
                block = np.zeros((out_dim, in_dim))
                block[row, col] = c
                exps.append(e)
                coefs.append(block)
        if not exps:
            exps, coefs = [(0,) * in_dim], [np.zeros((out_dim, in_dim))]
        return cls(in_dim, out_dim, np.array(exps), np.array(coefs))

    @classmethod
    def univariate(cls, coeffs) -> "PolynomialMap":
        """1-d map ``x ↦ Σ_i coeffs[i] x^i``."""
        return cls.from_terms(1, 1, {(0, 0): {(i,): float(c) for i, c in enumerate(coeffs) if c != 0}})

    @classmethod
    def power(cls, q: int, scale: float = 1.0) -> "PolynomialMap":
        return cls.from_terms(1, 1, {(0, 0): {(q,): scale}})

    @classmethod
    def gradient(cls, in_dim: int, potential: Mapping) -> "PolynomialMap":
        """Row form ``x ↦ ∇F(x)^T`` of a scalar polynomial ``F = {exponents: coef}``."""
        terms = {(0, i): {} for i in range(in_dim)}
        for e, c in potential.items():
            e = tuple(e)
            for i in range(in_dim):
                if e[i] > 0:
                    de = list(e)
                    de[i] -= 1
                    terms[(0, i)][tuple(de)] = terms[(0, i)].get(tuple(de), 0.0) + c * e[i]
        return cls.from_terms(in_dim, 1, terms)

    @property
    def degree(self) -> int:
        nz = np.any(self.coefficients != 0, axis=(1, 2))
        return int(self.exponents[nz].sum(axis=1).max()) if nz.any() else 0

    def __call__(self, x) -> np.ndarray:
        return self.jet_at(0, x)

    def jet(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        """Monomial form of ``D^k f``: exponents ``(n, d)`` and coefficients ``(n, e, d**(k+1))``."""
        if k not in self._jets:
            self._jets[k] = self._build_jet(k)
        return self._jets[k]

    def _build_jet(self, k: int):
        d, e = self.in_dim, self.out_dim
        acc: dict[tuple, np.ndarray] = {}
        for a, C in zip(self.exponents, self.coefficients):
            for slot, multi in enumerate(product(range(d), repeat=k)):
                counts = np.bincount(np.array(multi, dtype=int), minlength=d) if k else np.zeros(d, int)
                if np.any(counts > a):
                    continue
                factor = math.prod(math.perm(int(ai), int(ci)) for ai, ci in zip(a, counts))
                key = tuple(int(v) for v in a - counts)
                block = acc.setdefault(key, np.zeros((e, d ** (k + 1))))
                block[:, slot * d : (slot + 1) * d] += factor * C
        if not acc:
            return np.zeros((1, d), dtype=np.int64), np.zeros((1, e, d ** (k + 1)))
        keys = sorted(acc)
        return np.array(keys, dtype=np.int64), np.array([acc[key] for key in keys])

    def jet_at(self, k: int, x) -> np.ndarray:
        """``D^k f(x)`` as an ``(e, d**(k+1))`` matrix (``f(x)`` itself for ``k = 0``)."""
        x = np.asarray(x, dtype=float).reshape(-1)
        exps, coefs = self.jet(k)
        mon = np.prod(x[None, :] ** exps, axis=1)
        out = np.tensordot(mon, coefs, axes=(0, 0))
        return out.reshape(self.out_dim, self.in_dim) if k == 0 else out

    def jet_on_line(self, k: int, x0, v) -> np.ndarray:
        """Coefficients in ``u`` of ``D^k f(x0 + u v)``, shape ``(deg + 1, e, d**(k+1))``."""
        x0 = np.asarray(x0, dtype=float).reshape(-1)
        v = np.asarray(v, dtype=float).reshape(-1)
        exps, coefs = self.jet(k)
        deg = int(exps.sum(axis=1).max())
        out = np.zeros((deg + 1,) + coefs.shape[1:])
        for a, C in zip(exps, coefs):
            q = np.ones(1)
            for i, ai in enumerate(a):
                if ai:
                    q = P.polymul(q, P.polypow([x0[i], v[i]], int(ai)))
            out[: q.size] += q[:, None, None] * C[None]
        return out

    def to_json(self) -> dict:
        entries = {}
        for a, C in zip(self.exponents, self.coefficients):
            for (row, col), c in np.ndenumerate(C):
                if c != 0:
                    entries.setdefault((row, col), []).append({"exps": [int(t) for t in a], "coef": float(c)})
        return {
            "in_dim": self.in_dim,
            "out_dim": self.out_dim,
            "entries": [{"row": r, "col": c, "monomials": m} for (r, c), m in sorted(entries.items())],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PolynomialMap":
        d, e = int(obj["in_dim"]), int(obj["out_dim"])
        terms: dict = {}
        for entry in obj["entries"]:
            key = (int(entry["row"]), int(entry["col"]))
            bucket = terms.setdefault(key, {})
            for mono in entry["monomials"]:
                exps = tuple(int(t) for t in mono["exps"])
                bucket[exps] = bucket.get(exps, 0.0) + float(mono["coef"])
        return cls.from_terms(d, e, terms)


def _combine(exps: np.ndarray, coefs: np.ndarray):
    acc: dict[tuple, np.ndarray] = {}
    for a, C in zip(exps, coefs):
        key = tuple(int(t) for t in a)
        acc[key] = acc.get(key, 0.0) + C
    keys = sorted(acc)
    return np.array(keys, dtype=np.int64).reshape(len(keys), -1), np.array([acc[k] for k in keys])


@dataclass(frozen=True, eq=False)
class ControlledIntegrand:
    """``Y^k_t = D^k f(X_t)`` for a polynomial ``f`` along a piecewise-linear ``X``."""

    f: PolynomialMap
    X: PiecewiseLinearPath

    def __post_init__(self) -> None:
        if self.f.in_dim != self.X.dim:
            raise ValueError(f"integrand expects dimension {self.f.in_dim}, path has {self.X.dim}")

    def at(self, k: int, t: float) -> np.ndarray:
        return self.f.jet_at(k, self.X(t))

    def apply(self, k: int, t: float, z) -> np.ndarray:
        """``Y^k_t(z)`` for a level-(k+1) tensor ``z`` given as a flat array."""
        return self.at(k, t) @ np.asarray(z, dtype=float).reshape(-1)

    def segment_poly(self, k: int, j: int) -> np.ndarray:
        """``Y^k`` on segment ``j`` as a polynomial in local time."""
        return self.f.jet_on_line(k, self.X.values[j], self.X.velocities[j])


def poly_integral(coeffs: np.ndarray, length: float, start: float = 0.0) -> np.ndarray:
    """``∫_start^length Σ_i coeffs[i] u^i du`` along axis 0."""
    coeffs = np.asarray(coeffs, dtype=float)
    powers = np.arange(1, coeffs.shape[0] + 1)
    w = (length**powers - start**powers) / powers
    return np.tensordot(w, coeffs, axes=(0, 0))


def poly_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product of matrix polynomial ``A (na, e, D)`` with vector polynomial ``B (nb, D)``."""
    out = np.zeros((A.shape[0] + B.shape[0] - 1, A.shape[1]))
    for i in range(A.shape[0]):
        for j in range(B.shape[0]):
            out[i + j] += A[i] @ B[j]
    return out
