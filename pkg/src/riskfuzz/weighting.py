"""Criteria weights from expert Likert importance ratings via TOPSIS closeness."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, ValidationError
from .mcdm.matrix import DecisionMatrix
from .mcdm.methods import rank_topsis
from .validation import check_likert

WEIGHT_FLOOR = 0.005


@dataclass(frozen=True, eq=False)
class ExpertRatings:
    experts: tuple
    criteria: tuple
    ratings: np.ndarray  # experts x criteria, integers 1..5

    def __post_init__(self):
        experts = tuple(str(e) for e in self.experts)
        criteria = tuple(str(c) for c in self.criteria)
        arr = np.asarray(self.ratings)
        if not experts or not criteria:
            raise DomainError("ratings need at least one expert and one criterion")
        if arr.shape != (len(experts), len(criteria)):
            raise ValidationError(
                f"ratings shape {arr.shape} does not match {len(experts)} experts x {len(criteria)} criteria")
        clean = np.empty(arr.shape, dtype=int)
        for (i, j), v in np.ndenumerate(arr):
            clean[i, j] = check_likert(v.item() if hasattr(v, "item") else v,
                                       f"expert {experts[i]}: {criteria[j]}")
        clean.flags.writeable = False
        object.__setattr__(self, "experts", experts)
        object.__setattr__(self, "criteria", criteria)
        object.__setattr__(self, "ratings", clean)

    def __eq__(self, other):
        if not isinstance(other, ExpertRatings):
            return NotImplemented
        return (self.experts == other.experts and self.criteria == other.criteria
                and np.array_equal(self.ratings, other.ratings))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class WeightVector:
    criteria: tuple
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).copy()
        if w.shape != (len(self.criteria),):
            raise ValidationError("one weight per criterion required")
        if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-9:
            raise ValidationError("weights must be non-negative and sum to 1")
        w.flags.writeable = False
        object.__setattr__(self, "criteria", tuple(self.criteria))
        object.__setattr__(self, "weights", w)

    def as_dict(self):
        return dict(zip(self.criteria, self.weights.tolist()))

    def to_dict(self):
        return {"criteria": list(self.criteria), "weights": self.weights.tolist()}

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, doc):
        return cls(tuple(doc["criteria"]), np.asarray(doc["weights"], dtype=float))

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        return self.criteria == other.criteria and np.array_equal(self.weights, other.weights)

    __hash__ = None


def apply_floor(weights, floor=WEIGHT_FLOOR):
    """Raise weights below ``floor`` to exactly ``floor`` and rescale the rest.

    The unfloored weights share ``1 - k * floor`` in proportion to their
    original values; repeated until no rescaled weight drops under the floor.
    """
    w = np.asarray(weights, dtype=float)
    n = w.size
    if floor * n > 1.0:
        raise ValidationError(f"floor {floor} infeasible for {n} criteria")
    floored = w < floor
    while True:
        free = ~floored
        mass = 1.0 - floor * floored.sum()
        out = np.full(n, floor)
        total = w[free].sum()
        if free.any():
            out[free] = w[free] / total * mass if total > 0 else mass / free.sum()
        newly = free & (out < floor)
        if not newly.any():
            return out
        floored |= newly


def derive_weights_topsis(r: ExpertRatings, floor=WEIGHT_FLOOR) -> WeightVector:
    """Criteria weights proportional to TOPSIS closeness.

    Criteria play the alternatives and experts the (equally weighted,
    benefit) criteria of an ordinary TOPSIS run.
    """
    n_experts = len(r.experts)
    d = DecisionMatrix(r.criteria, r.experts, r.ratings.T.astype(float),
                       np.full(n_experts, 1.0 / n_experts), ("benefit",) * n_experts)
    cc = rank_topsis(d).scores
    total = cc.sum()
    w = cc / total if total > 0 else np.full(cc.size, 1.0 / cc.size)
    return WeightVector(r.criteria, apply_floor(w, floor))


def likert_to_unit(v):
    """Map a rating (or mean rating) on 1..5 to ``v / 5``."""
    try:
        value = float(v)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"rating must be numeric, got {v!r}") from exc
    if not 1.0 <= value <= 5.0:
        raise DomainError(f"rating {value} outside [1, 5]")
    return value / 5.0
