"""Fuzzy-TOPSIS over trapezoidal likelihood and impact ratings."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..exceptions import DomainError
from ..fuzzy_core import TrapezoidalSet
from .matrix import ScoredRanking
from .methods import closeness

FuzzyRating = TrapezoidalSet


def fuzzy_product(a: TrapezoidalSet, b: TrapezoidalSet) -> TrapezoidalSet:
    """Breakpoint-wise product; an ordered trapezoid approximating the exact product."""
    return TrapezoidalSet(*(p * q for p, q in zip(a.breakpoints, b.breakpoints)))


def vertex_distance(a, b):
    """Vertex-method distance ``sqrt(mean((a_k - b_k)**2))`` between trapezoids."""
    a = np.asarray(getattr(a, "breakpoints", a), dtype=float)
    b = np.asarray(getattr(b, "breakpoints", b), dtype=float)
    return float(np.sqrt(0.25 * ((a - b) ** 2).sum(axis=-1)))


def risk_priority_numbers(likelihood_ratings, impact_ratings):
    return [fuzzy_product(a, b) for a, b in zip(likelihood_ratings, impact_ratings)]


def rank_fuzzy_topsis(likelihood_ratings: Sequence[TrapezoidalSet],
                      impact_ratings: Sequence[TrapezoidalSet],
                      alternatives=None) -> ScoredRanking:
    likelihood_ratings = list(likelihood_ratings)
    impact_ratings = list(impact_ratings)
    if not likelihood_ratings:
        raise DomainError("fuzzy TOPSIS needs at least one alternative")
    if len(likelihood_ratings) != len(impact_ratings):
        raise DomainError("likelihood and impact ratings must cover the same alternatives")
    if alternatives is None:
        alternatives = [f"A{i + 1}" for i in range(len(likelihood_ratings))]
    if len(alternatives) != len(likelihood_ratings):
        raise DomainError("one alternative name per rating required")
    rpn = np.array([r.breakpoints for r in risk_priority_numbers(likelihood_ratings, impact_ratings)])
    ideal = rpn.max(axis=0)
    anti = rpn.min(axis=0)
    d_plus = np.sqrt(0.25 * ((rpn - ideal) ** 2).sum(axis=1))
    d_minus = np.sqrt(0.25 * ((rpn - anti) ** 2).sum(axis=1))
    return ScoredRanking.from_scores("FUZZY-TOPSIS", alternatives, closeness(d_plus, d_minus))


def rating_from_scores(scores, scale=5.0):
    """Aggregate expert Likert scores into ``(min, mean, mean, max) / scale``."""
    s = np.asarray(scores, dtype=float) / scale
    lo, hi = float(s.min()), float(s.max())
    mean = min(max(float(s.mean()), lo), hi)  # float mean can stray outside [min, max]
    return TrapezoidalSet(lo, mean, mean, hi)
