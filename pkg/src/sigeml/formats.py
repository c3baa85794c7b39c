"""CSV and JSON codecs for paths, tensors, polynomial maps and ensembles."""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .paths import PathEnsemble, PiecewiseLinearPath
from .polynomial import PolynomialMap
from .tensor import TruncatedTensor, tensor_from_json, tensor_to_json


class FormatError(ValueError):
    """Malformed input file."""


def parse_path_csv(text: str, source: str = "<csv>") -> PiecewiseLinearPath:
    """Read ``t,x1,...,xd`` rows into a path.

    Repeated times are allowed only when the values repeat too; the
    duplicate row is dropped.
    """
    rows = list(csv.reader(text.splitlines()))
    rows = [r for r in rows if r and any(c.strip() for c in r)]
    if not rows:
        raise FormatError(f"{source}: empty file")
    header = [c.strip() for c in rows[0]]
    d = len(header) - 1
    if d < 1 or header[0] != "t" or header[1:] != [f"x{i}" for i in range(1, d + 1)]:
        raise FormatError(f"{source}: header must be t,x1,...,xd; got {','.join(header)}")
    times, values = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != d + 1:
            raise FormatError(f"{source}: row {lineno} has {len(row)} fields, expected {d + 1}")
        try:
            nums = [float(c) for c in row]
        except ValueError:
            raise FormatError(f"{source}: row {lineno} has a non-numeric field: {','.join(row)}") from None
        if not np.all(np.isfinite(nums)):
            raise FormatError(f"{source}: row {lineno} has a non-finite value")
        t, v = nums[0], nums[1:]
        if times and t < times[-1]:
            raise FormatError(f"{source}: row {lineno} time {t} decreases")
        if times and t == times[-1]:
            if v != values[-1]:
                raise FormatError(f"{source}: row {lineno} repeats time {t} with a different value")
            continue
        times.append(t)
        values.append(v)
    if len(times) < 2:
        raise FormatError(f"{source}: need at least two distinct knot times")
    return PiecewiseLinearPath(np.array(times), np.array(values))


def read_path_csv(path: str | Path) -> PiecewiseLinearPath:
    return parse_path_csv(Path(path).read_text(), str(path))


def path_to_csv(X: PiecewiseLinearPath) -> str:
    lines = ["t," + ",".join(f"x{i}" for i in range(1, X.dim + 1))]
    for t, v in zip(X.times, X.values):
        lines.append(",".join(repr(float(a)) for a in (t, *v)))
    return "\n".join(lines) + "\n"


def _load_json(path: str | Path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def read_tensor_json(path: str | Path) -> TruncatedTensor:
    try:
        return tensor_from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{path}: not a tensor ({exc})") from None


def read_polynomial_json(path: str | Path) -> PolynomialMap:
    try:
        return PolynomialMap.from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{path}: not a polynomial map ({exc})") from None


def read_ensemble_json(path: str | Path) -> PathEnsemble:
    """``[{"csv": file, "weight": w}, ...]``; relative file names resolve next to the JSON file."""
    entries = _load_json(path)
    base = Path(path).parent
    if not isinstance(entries, list) or not entries:
        raise FormatError(f"{path}: ensemble must be a non-empty list")
    try:
        paths = [read_path_csv(base / item["csv"]) for item in entries]
        weights = [float(item["weight"]) for item in entries]
        return PathEnsemble(tuple(paths), np.array(weights))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{path}: bad ensemble entry ({exc})") from None


def dumps(obj) -> str:
    """Canonical JSON; floats use the shortest repr that round-trips exactly."""
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=False)


__all__ = [
    "FormatError",
    "dumps",
    "parse_path_csv",
    "path_to_csv",
    "read_ensemble_json",
    "read_path_csv",
    "read_polynomial_json",
    "read_tensor_json",
    "tensor_to_json",
]
