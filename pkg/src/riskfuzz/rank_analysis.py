"""Agreement between method rankings: Kendall tau-b, correlation matrix, Borda consensus."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, ValidationError
from .mcdm.methods import rank_borda


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    methods: tuple
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float).copy()
        k = len(self.methods)
        if vals.shape != (k, k):
            raise ValidationError(f"expected a {k}x{k} matrix, got {vals.shape}")
        if not np.allclose(vals, vals.T, rtol=0.0, atol=1e-12):
            raise ValidationError("correlation matrix must be symmetric")
        if not np.all(np.diag(vals) == 1.0):
            raise ValidationError("correlation matrix must have a unit diagonal")
        if vals.min() < -1.0 or vals.max() > 1.0:
            raise ValidationError("correlations must lie in [-1, 1]")
        vals.flags.writeable = False
        object.__setattr__(self, "methods", tuple(self.methods))
        object.__setattr__(self, "values", vals)

    def __getitem__(self, pair):
        a, b = pair
        return float(self.values[self.methods.index(a), self.methods.index(b)])

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["method", *self.methods])
        for name, row in zip(self.methods, self.values):
            writer.writerow([name, *(f"{v:.6f}" for v in row)])
        return buf.getvalue()

    def to_dict(self):
        return {"methods": list(self.methods), "matrix": self.values.tolist()}


def kendall_tau(a, b):
    """Kendall tau-b between two rank (or score) vectors."""
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.shape != b.shape:
        raise DomainError(f"rank vectors differ in length ({a.size} vs {b.size})")
    if a.size < 2:
        raise DomainError("Kendall tau needs at least two observations")
    i, j = np.triu_indices(a.size, k=1)
    sa = np.sign(a[i] - a[j])
    sb = np.sign(b[i] - b[j])
    prod = sa * sb
    concordant = int((prod > 0).sum())
    discordant = int((prod < 0).sum())
    ties_a_only = int(((sa == 0) & (sb != 0)).sum())
    ties_b_only = int(((sb == 0) & (sa != 0)).sum())
    denom = math.sqrt((concordant + discordant + ties_a_only) * (concordant + discordant + ties_b_only))
    if denom == 0.0:
        raise DomainError("Kendall tau undefined for a constant rank vector")
    return (concordant - discordant) / denom


def _aligned_ranks(rankings):
    if not rankings:
        raise DomainError("no rankings supplied")
    base = rankings[0].alternatives
    out = []
    for r in rankings:
        if len(r.alternatives) != len(base) or set(r.alternatives) != set(base):
            raise DomainError(f"ranking {r.method!r} covers a different alternative set")
        pos = {a: k for k, a in enumerate(r.alternatives)}
        out.append(r.ranks[[pos[a] for a in base]])
    return out


def correlation_matrix(rankings):
    rankings = list(rankings)
    if len(rankings) < 2:
        raise DomainError("need at least two rankings to correlate")
    ranks = _aligned_ranks(rankings)
    k = len(rankings)
    vals = np.eye(k)
    for p in range(k):
        for q in range(p + 1, k):
            vals[p, q] = vals[q, p] = kendall_tau(ranks[p], ranks[q])
    return CorrelationMatrix(tuple(r.method for r in rankings), vals)


def consensus_borda(rankings):
    rankings = list(rankings)
    _aligned_ranks(rankings)
    return rank_borda(rankings, method="CONSENSUS")
