"""Bernoulli numbers, Bernoulli polynomials and Faulhaber sums.

Two sign variants are kept apart: ``B^-`` (``B_1 = -1/2``) and ``B^+``
(``B_1 = +1/2``); all other indices agree.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np


def _variant(variant) -> int:
    if variant in ("+", "plus", 1, "forward"):
        return 1
    if variant in ("-", "minus", -1, "backward"):
        return -1
    raise ValueError(f"unknown Bernoulli variant {variant!r}; use '+' or '-'")


@lru_cache(maxsize=None)
def bernoulli_polynomial_coeffs(m: int) -> tuple[Fraction, ...]:
    """Exact ascending coefficients of ``P_m``.

    Built from ``P_0 = 1``, ``P_m' = m P_{m-1}`` and ``∫_0^1 P_m = 0``.
    """
    if m < 0:
        raise ValueError("order must be non-negative")
    if m == 0:
        return (Fraction(1),)
    prev = bernoulli_polynomial_coeffs(m - 1)
    body = [Fraction(0)] + [m * c / (i + 1) for i, c in enumerate(prev)]
    mean = sum(c / (i + 1) for i, c in enumerate(body))
    body[0] = -mean
    return tuple(body)


def bernoulli_number(m: int, variant="-") -> Fraction:
    """``B^±_m`` as an exact fraction."""
    sign = _variant(variant)
    value = bernoulli_polynomial_coeffs(m)[0]
    if m == 1 and sign > 0:
        return -value
    return value


def bernoulli_polynomial(m: int, s) -> np.ndarray | float:
    """Evaluate ``P_m`` at ``s`` (scalar or array)."""
    c = np.array([float(x) for x in bernoulli_polynomial_coeffs(m)])
    out = np.polynomial.polynomial.polyval(s, c)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True, eq=False)
class BernoulliTable:
    variant: int
    numbers: np.ndarray
    polynomials: tuple[np.ndarray, ...]

    @property
    def order(self) -> int:
        return self.numbers.size - 1


def bernoulli_numbers(variant, m: int) -> BernoulliTable:
    """Table of ``B^±_0..B^±_m`` and coefficient arrays of ``P_0..P_m``."""
    sign = _variant(variant)
    if m < 0:
        raise ValueError("order must be non-negative")
    numbers = np.array([float(bernoulli_number(k, sign)) for k in range(m + 1)])
    polys = tuple(np.array([float(c) for c in bernoulli_polynomial_coeffs(k)]) for k in range(m + 1))
    return BernoulliTable(sign, numbers, polys)


def faulhaber_exact(p: int, N: int, variant="-") -> Fraction:
    """``(1/(p+1)) Σ_j C(p+1, j) N^{p+1-j} B^±_j``.

    The ``-`` variant equals ``Σ_{k=0}^{N-1} k^p`` and the ``+`` variant
    ``Σ_{k=1}^{N} k^p`` (with ``0^0 = 1``).
    """
    if p < 0 or N < 0:
        raise ValueError("p and N must be non-negative")
    total = sum(comb(p + 1, j) * Fraction(N) ** (p + 1 - j) * bernoulli_number(j, variant) for j in range(p + 1))
    return total / (p + 1)


def faulhaber(p: int, N: int, variant="-") -> float:
    return float(faulhaber_exact(p, N, variant))
