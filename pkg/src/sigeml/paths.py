"""Time series on the integer grid and piecewise-linear paths."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Values ``x_0, ..., x_N`` in R^d indexed by the integers 0..N."""

    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.values, dtype=float)
        if v.ndim == 1:
            v = v[:, None]
        if v.ndim != 2 or v.shape[0] == 0:
            raise ValueError("time series must be a non-empty (N+1, d) array")
        if v.shape[0] < 2:
            raise ValueError("time series needs N >= 1 (at least two values)")
        if not np.all(np.isfinite(v)):
            raise ValueError("time series values must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def horizon(self) -> int:
        return self.values.shape[0] - 1

    def __getitem__(self, k: int) -> np.ndarray:
        return self.values[k]

    def increments(self) -> np.ndarray:
        """All increments ``x_{k+1} - x_k`` as an (N, d) array."""
        return np.diff(self.values, axis=0)


def increment(x: TimeSeries, k: int) -> np.ndarray:
    if not 0 <= k <= x.horizon - 1:
        raise IndexError(f"increment index {k} outside 0..{x.horizon - 1}")
    return x.values[k + 1] - x.values[k]


@dataclass(frozen=True, eq=False)
class PiecewiseLinearPath:
    """Continuous piecewise-linear path through ``(times[j], values[j])``.

    Outside ``[times[0], times[-1]]`` the path is frozen at its end values.
    """

    times: np.ndarray
    values: np.ndarray
    velocities: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        t = np.array(self.times, dtype=float).reshape(-1)
        v = np.array(self.values, dtype=float)
        if v.ndim == 1:
            v = v[:, None]
        if t.size < 2 or v.shape[0] != t.size:
            raise ValueError("need at least two knots with one value per knot")
        if not np.all(np.diff(t) > 0):
            raise ValueError("knot times must be strictly increasing")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise ValueError("knots must be finite")
        vel = np.diff(v, axis=0) / np.diff(t)[:, None]
        for a in (t, v, vel):
            a.flags.writeable = False
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "velocities", vel)

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def n_segments(self) -> int:
        return self.times.size - 1

    @property
    def start(self) -> float:
        return float(self.times[0])

    @property
    def end(self) -> float:
        return float(self.times[-1])

    def segment_of(self, t: float) -> int:
        """Index ``j`` with ``times[j] <= t < times[j+1]``; the last segment owns the end point."""
        j = int(np.searchsorted(self.times, t, side="right")) - 1
        return min(max(j, 0), self.n_segments - 1)

    def __call__(self, t: float) -> np.ndarray:
        if t <= self.times[0]:
            return self.values[0].copy()
        if t >= self.times[-1]:
            return self.values[-1].copy()
        j = self.segment_of(t)
        return self.values[j] + (t - self.times[j]) * self.velocities[j]

    def pieces(self, s: float, t: float):
        """Yield ``(j, a, b)``: segment index and the sub-interval of ``[s, t]`` it covers.

        Parts of ``[s, t]`` outside the knot range carry no displacement and
        are skipped.
        """
        if s > t:
            raise ValueError(f"interval start {s} exceeds end {t}")
        lo, hi = max(s, self.start), min(t, self.end)
        if lo >= hi:
            return
        j = self.segment_of(lo)
        while j < self.n_segments and self.times[j] < hi:
            a = max(lo, float(self.times[j]))
            b = min(hi, float(self.times[j + 1]))
            if b > a:
                yield j, a, b
            j += 1

    def has_integer_knots(self) -> bool:
        """True when the path runs over ``[0, N]`` with every integer a knot."""
        if self.start != 0.0 or self.end != np.floor(self.end):
            return False
        return bool(np.all(np.isin(np.arange(int(self.end) + 1, dtype=float), self.times)))

    def horizon(self) -> int:
        if not self.has_integer_knots():
            raise ValueError("path must run over [0, N] with every integer 0..N among its knots")
        return int(self.end)

    def sample_integers(self) -> TimeSeries:
        return TimeSeries(np.array([self(float(k)) for k in range(self.horizon() + 1)]))

    def interpolates(self, x: TimeSeries) -> bool:
        if not self.has_integer_knots() or self.horizon() != x.horizon or self.dim != x.dim:
            return False
        idx = np.searchsorted(self.times, np.arange(x.horizon + 1, dtype=float))
        return bool(np.array_equal(self.values[idx], x.values))


def interpolate_linear(x: TimeSeries) -> PiecewiseLinearPath:
    """Linear interpolation of ``x`` with knots at 0..N."""
    return PiecewiseLinearPath(np.arange(x.horizon + 1, dtype=float), x.values)


def total_variation(X: PiecewiseLinearPath, s: float, t: float) -> float:
    """Length of ``X`` restricted to ``[s, t]``."""
    speeds = np.linalg.norm(X.velocities, axis=1)
    return float(sum(speeds[j] * (b - a) for j, a, b in X.pieces(s, t)))


def reparametrize_arclength(X: PiecewiseLinearPath) -> PiecewiseLinearPath:
    """Same trace over the same time window, run at constant speed.

    Zero-length segments collapse and are dropped.
    """
    lengths = np.linalg.norm(np.diff(X.values, axis=0), axis=1)
    total = float(lengths.sum())
    if total <= 0.0:
        raise ValueError("cannot reparametrize a path of zero total variation")
    times = X.start + (X.end - X.start) * np.concatenate([[0.0], np.cumsum(lengths)]) / total
    times[-1] = X.end
    # segments shorter than the time resolution collapse as well
    keep = [0]
    for i in range(1, times.size):
        if times[i] > times[keep[-1]]:
            keep.append(i)
        elif i == times.size - 1:
            keep[-1] = i
    return PiecewiseLinearPath(times[keep], X.values[keep])


@dataclass(frozen=True, eq=False)
class PathEnsemble:
    """Finite weighted family of paths standing in for an expectation."""

    paths: tuple[PiecewiseLinearPath, ...]
    weights: np.ndarray

    def __post_init__(self) -> None:
        paths = tuple(self.paths)
        w = np.array(self.weights, dtype=float).reshape(-1)
        if not paths or w.size != len(paths):
            raise ValueError("ensemble needs one weight per path and at least one path")
        if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("weights must be non-negative and sum to 1")
        dims = {p.dim for p in paths}
        ends = {(p.start, p.end) for p in paths}
        if len(dims) != 1 or len(ends) != 1:
            raise ValueError("ensemble paths must share dimension and time window")
        w.flags.writeable = False
        object.__setattr__(self, "paths", paths)
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, paths: Sequence[PiecewiseLinearPath]) -> "PathEnsemble":
        return cls(tuple(paths), np.full(len(paths), 1.0 / len(paths)))

    @classmethod
    def single(cls, path: PiecewiseLinearPath) -> "PathEnsemble":
        return cls((path,), np.ones(1))

    def __iter__(self):
        return iter(zip(self.paths, self.weights))

    def __len__(self) -> int:
        return len(self.paths)

    @property
    def dim(self) -> int:
        return self.paths[0].dim


def line_path(slope, horizon: int) -> PiecewiseLinearPath:
    """``X_t = slope * t`` on ``[0, horizon]`` with integer knots."""
    slope = np.atleast_1d(np.asarray(slope, dtype=float))
    times = np.arange(horizon + 1, dtype=float)
    return PiecewiseLinearPath(times, times[:, None] * slope[None, :])
