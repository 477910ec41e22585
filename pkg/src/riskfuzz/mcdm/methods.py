"""Crisp MCDM ranking methods over a :class:`DecisionMatrix`.

Every ``rank_*`` function returns a :class:`ScoredRanking`. Scores are
higher-is-better except VIKOR's Q, which is lower-is-better.
"""

from __future__ import annotations

import numpy as np

from ..exceptions import DegenerateInputError, ValidationError
from .matrix import TIE_DECIMALS, DecisionMatrix, ScoredRanking

DEGENERATE_CLOSENESS = 0.5


def _zero_columns(d, mask):
    bad = np.flatnonzero(mask)
    if bad.size:
        name = d.criteria[bad[0]]
        raise DegenerateInputError(f"criterion {name!r} cannot be normalized (zero norm)", name)


def vector_normalize(d):
    norms = np.sqrt((d.values ** 2).sum(axis=0))
    _zero_columns(d, norms == 0.0)
    return d.values / norms


def sum_normalize(d, values=None):
    x = d.values if values is None else values
    totals = x.sum(axis=0)
    _zero_columns(d, totals == 0.0)
    return x / totals


def minmax_normalize(d):
    """Min-max scaling with cost columns inverted; constant columns map to 1."""
    x = d.values
    lo, hi = x.min(axis=0), x.max(axis=0)
    span = hi - lo
    safe = np.where(span == 0.0, 1.0, span)
    out = np.where(d.benefit_mask, (x - lo) / safe, (hi - x) / safe)
    return np.where(span == 0.0, 1.0, out)


def closeness(d_plus, d_minus):
    """``d- / (d+ + d-)``, defined as 0.5 where both distances vanish."""
    d_plus = np.asarray(d_plus, dtype=float)
    d_minus = np.asarray(d_minus, dtype=float)
    total = d_plus + d_minus
    with np.errstate(invalid="ignore", divide="ignore"):
        cc = np.where(total > 0.0, d_minus / np.where(total > 0.0, total, 1.0),
                      DEGENERATE_CLOSENESS)
    return cc


def rank_topsis(d: DecisionMatrix) -> ScoredRanking:
    v = vector_normalize(d) * d.weights
    benefit = d.benefit_mask
    ideal = np.where(benefit, v.max(axis=0), v.min(axis=0))
    anti = np.where(benefit, v.min(axis=0), v.max(axis=0))
    d_plus = np.sqrt(((v - ideal) ** 2).sum(axis=1))
    d_minus = np.sqrt(((v - anti) ** 2).sum(axis=1))
    return ScoredRanking.from_scores("TOPSIS", d.alternatives, closeness(d_plus, d_minus))


def rank_copras(d: DecisionMatrix) -> ScoredRanking:
    v = sum_normalize(d) * d.weights
    benefit = d.benefit_mask
    s_plus = v[:, benefit].sum(axis=1)
    if benefit.all():
        q = s_plus
    else:
        s_minus = v[:, ~benefit].sum(axis=1)
        if np.any(s_minus <= 0.0):
            raise DegenerateInputError("COPRAS needs strictly positive cost sums")
        s_min = s_minus.min()
        q = s_plus + (s_min * s_minus.sum()) / (s_minus * (s_min / s_minus).sum())
    return ScoredRanking.from_scores("COPRAS", d.alternatives, q)


def rank_saw(d: DecisionMatrix, normalization: str = "minmax") -> ScoredRanking:
    """Simple additive weighting; ``normalization`` is ``"minmax"`` or ``"sum"``."""
    if normalization == "minmax":
        r = minmax_normalize(d)
    elif normalization == "sum":
        if not d.benefit_mask.all():
            raise ValidationError("sum-normalized SAW supports benefit criteria only")
        r = sum_normalize(d)
    else:
        raise ValidationError(f"unknown SAW normalization {normalization!r}")
    return ScoredRanking.from_scores("SAW", d.alternatives, r @ d.weights)


def rank_wsm(d: DecisionMatrix) -> ScoredRanking:
    """Weighted sum model with sum normalization; cost columns use reciprocals first.

    This deliberately differs from :func:`rank_saw`, which min-max scales.
    """
    x = d.values.copy()
    cost = ~d.benefit_mask
    if cost.any():
        cols = x[:, cost]
        if np.any(cols == 0.0):
            name = d.criteria[np.flatnonzero(cost)[np.flatnonzero((cols == 0.0).any(axis=0))[0]]]
            raise DegenerateInputError(f"cost criterion {name!r} has a zero entry", name)
        x[:, cost] = 1.0 / cols
    r = sum_normalize(d, x)
    return ScoredRanking.from_scores("WSM", d.alternatives, r @ d.weights)


def electre_tables(d: DecisionMatrix):
    """Concordance and discordance matrices ``C[a, b]`` and ``D[a, b]``."""
    x = np.where(d.benefit_mask, d.values, -d.values)
    span = x.max(axis=0) - x.min(axis=0)
    safe = np.where(span == 0.0, 1.0, span)
    diff = x[:, None, :] - x[None, :, :]  # a minus b, oriented so positive favours a
    conc = ((diff >= 0.0) * d.weights).sum(axis=2)
    deficit = np.where(span == 0.0, 0.0, np.maximum(-diff, 0.0) / safe)
    disc = deficit.max(axis=2)
    np.fill_diagonal(conc, 0.0)
    np.fill_diagonal(disc, 0.0)
    return conc, disc


def rank_electre1(d: DecisionMatrix, c_threshold: float = 0.65,
                  d_threshold: float = 0.35) -> ScoredRanking:
    conc, disc = electre_tables(d)
    outranks = (conc >= c_threshold) & (disc <= d_threshold)
    np.fill_diagonal(outranks, False)
    net = outranks.sum(axis=1) - outranks.sum(axis=0)
    return ScoredRanking.from_scores("ELECTRE", d.alternatives, net.astype(float))


def vikor_indices(d: DecisionMatrix, v: float = 0.5):
    """Return ``(S, R, Q)``; lower is better for all three."""
    benefit = d.benefit_mask
    x = d.values
    best = np.where(benefit, x.max(axis=0), x.min(axis=0))
    worst = np.where(benefit, x.min(axis=0), x.max(axis=0))
    span = best - worst
    regret = np.where(span == 0.0, 0.0, (best - x) / np.where(span == 0.0, 1.0, span))
    weighted = regret * d.weights
    s = weighted.sum(axis=1)
    r = weighted.max(axis=1)

    def _scaled(a):
        lo, hi = a.min(), a.max()
        return np.zeros_like(a) if hi == lo else (a - lo) / (hi - lo)

    q = v * _scaled(s) + (1.0 - v) * _scaled(r)
    return s, r, q


def rank_vikor(d: DecisionMatrix, v: float = 0.5) -> ScoredRanking:
    if not 0.0 <= v <= 1.0:
        raise ValidationError(f"VIKOR strategy weight v={v} outside [0, 1]")
    _, _, q = vikor_indices(d, v)
    return ScoredRanking.from_scores("VIKOR", d.alternatives, q, higher_is_better=False)


def rank_marcos(d: DecisionMatrix) -> ScoredRanking:
    benefit = d.benefit_mask
    x = d.values
    ideal = np.where(benefit, x.max(axis=0), x.min(axis=0))
    anti = np.where(benefit, x.min(axis=0), x.max(axis=0))
    ext = np.vstack([anti, x, ideal])
    _zero_columns(d, np.where(benefit, ideal == 0.0, (ext == 0.0).any(axis=0)))
    norm = np.where(benefit, ext / ideal, ideal / np.where(ext == 0.0, 1.0, ext))
    s = (norm * d.weights).sum(axis=1)
    s_aai, s_alt, s_ai = s[0], s[1:-1], s[-1]
    if s_aai <= 0.0:
        raise DegenerateInputError("MARCOS anti-ideal utility is zero")
    k_minus = s_alt / s_aai
    k_plus = s_alt / s_ai
    total = k_plus + k_minus
    f_plus = k_minus / total
    f_minus = k_plus / total
    f = total / (1.0 + (1.0 - f_plus) / f_plus + (1.0 - f_minus) / f_minus)
    return ScoredRanking.from_scores("MARCOS", d.alternatives, f)


def promethee_flows(d: DecisionMatrix):
    """Net outranking flow with the usual (strict step) preference function."""
    m = d.shape[0]
    x = np.where(d.benefit_mask, d.values, -d.values)
    pref = ((x[:, None, :] - x[None, :, :]) > 0.0) * d.weights
    pi = pref.sum(axis=2)
    if m == 1:
        return np.zeros(1)
    return (pi.sum(axis=1) - pi.sum(axis=0)) / (m - 1)


def rank_promethee2(d: DecisionMatrix) -> ScoredRanking:
    return ScoredRanking.from_scores("PROMETHEE", d.alternatives, promethee_flows(d))


def rank_codas(d: DecisionMatrix, tau: float = 0.02) -> ScoredRanking:
    benefit = d.benefit_mask
    x = d.values
    best = np.where(benefit, x.max(axis=0), x.min(axis=0))
    zero = np.where(benefit, best == 0.0, (x == 0.0).any(axis=0))
    _zero_columns(d, zero)
    norm = np.where(benefit, x / best, best / np.where(x == 0.0, 1.0, x))
    r = norm * d.weights
    negative_ideal = r.min(axis=0)
    e = np.sqrt(((r - negative_ideal) ** 2).sum(axis=1))
    t = np.abs(r - negative_ideal).sum(axis=1)
    de = e[:, None] - e[None, :]
    dt = t[:, None] - t[None, :]
    h = de + (np.abs(de) >= tau) * dt
    return ScoredRanking.from_scores("CODAS", d.alternatives, h.sum(axis=1))


def rank_borda(rankings, method: str = "BORDA") -> ScoredRanking:
    """Borda count: each input contributes ``m - rank`` points per alternative."""
    rankings = list(rankings)
    if not rankings:
        raise ValidationError("Borda aggregation needs at least one ranking")
    alternatives = rankings[0].alternatives
    m = len(alternatives)
    points = np.zeros(m)
    for r in rankings:
        if set(r.alternatives) != set(alternatives) or len(r.alternatives) != m:
            raise ValidationError(f"ranking {r.method!r} covers a different alternative set")
        pos = {a: k for k, a in enumerate(r.alternatives)}
        points += m - r.ranks[[pos[a] for a in alternatives]]
    return ScoredRanking.from_scores(method, alternatives, points)


def criterion_rankings(d: DecisionMatrix):
    """One ranking per criterion, orientation-aware."""
    return [ScoredRanking.from_scores(name, d.alternatives, d.values[:, j], benefit)
            for j, (name, benefit) in enumerate(zip(d.criteria, d.benefit_mask))]


def rank_borda_matrix(d: DecisionMatrix) -> ScoredRanking:
    """Standalone Borda method over the criteria.

    Per criterion an alternative earns one point for every alternative it
    beats and half a point per tie (``m - average rank``), so equal values
    score equally. Without ties this is the plain count over
    :func:`criterion_rankings`.
    """
    x = np.round(np.where(d.benefit_mask, d.values, -d.values), TIE_DECIMALS)
    diff = x[:, None, :] - x[None, :, :]
    points = (diff > 0).sum(axis=(1, 2)) + 0.5 * ((diff == 0).sum(axis=(1, 2)) - x.shape[1])
    return ScoredRanking.from_scores("BORDA", d.alternatives, points.astype(float))


# Column order of the published method comparison.
METHODS = {
    "TOPSIS": rank_topsis,
    "COPRAS": rank_copras,
    "BORDA": rank_borda_matrix,
    "SAW": rank_saw,
    "ELECTRE": rank_electre1,
    "VIKOR": rank_vikor,
    "MARCOS": rank_marcos,
    "PROMETHEE": rank_promethee2,
    "WSM": rank_wsm,
    "CODAS": rank_codas,
}


def get_method(name):
    key = name.upper()
    aliases = {"ELECTRE1": "ELECTRE", "ELECTRE_I": "ELECTRE", "PROMETHEE2": "PROMETHEE",
               "PROMETHEE_II": "PROMETHEE"}
    key = aliases.get(key, key)
    try:
        return METHODS[key]
    except KeyError:
        raise ValidationError(f"unknown MCDM method {name!r}; choose from {', '.join(METHODS)}") from None


def rank_all(d: DecisionMatrix):
    return {name: fn(d) for name, fn in METHODS.items()}
