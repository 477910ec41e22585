"""Input validation helpers used by the estimators and value types."""

from __future__ import annotations

import math

import numpy as np
from sklearn.utils import check_array

from .exceptions import DomainError, ValidationError

WEIGHT_SUM_TOL = 1e-9


def check_unit(x, name="x"):
    """Return ``x`` as a float, raising DomainError unless it lies in [0, 1]."""
    try:
        value = float(x)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} must be a real number, got {x!r}") from exc
    if math.isnan(value) or value < 0.0 or value > 1.0:
        raise DomainError(f"{name}={value} outside [0, 1]")
    return value


def check_unit_array(X, name="X"):
    arr = np.asarray(X, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite values")
    if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
        raise DomainError(f"{name} has values outside [0, 1]")
    return arr


def check_matrix(X, name="X"):
    """2-D finite float matrix with at least one row and column."""
    try:
        return check_array(X, dtype=float, ensure_2d=True, ensure_all_finite=True,
                           input_name=name)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def check_weights(weights, n):
    w = np.asarray(weights, dtype=float).ravel()
    if w.shape != (n,):
        raise ValidationError(f"expected {n} weights, got {w.size}")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise ValidationError("weights must be finite and non-negative")
    if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise ValidationError(f"weights must sum to 1 (got {w.sum():.12g})")
    return w


def check_orientations(orientations, n):
    if orientations is None:
        return ("benefit",) * n
    if isinstance(orientations, str):
        orientations = [orientations] * n
    out = tuple(str(o).lower() for o in orientations)
    if len(out) != n:
        raise ValidationError(f"expected {n} orientations, got {len(out)}")
    bad = [o for o in out if o not in ("benefit", "cost")]
    if bad:
        raise ValidationError(f"orientation must be 'benefit' or 'cost', got {bad[0]!r}")
    return out


def check_likert(value, name="rating"):
    """Integer rating in 1..5; bools and non-integral floats are rejected."""
    if isinstance(value, bool):
        raise ValidationError(f"{name}: expected an integer 1..5, got {value!r}")
    if isinstance(value, float) and value.is_integer():
        value = int(value)
    if not isinstance(value, (int, np.integer)):
        raise ValidationError(f"{name}: expected an integer 1..5, got {value!r}")
    if not 1 <= value <= 5:
        raise ValidationError(f"{name}: rating {value} outside 1..5")
    return int(value)
