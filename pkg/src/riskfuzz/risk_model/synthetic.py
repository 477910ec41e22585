"""Per-question categorical distributions and a seeded questionnaire generator.

Random streams: question ``q`` draws from
``PCG64(SeedSequence(seed, spawn_key=(0, q)))`` and rule cell ``k`` from
``spawn_key=(1, k)``. Questions are numbered criteria first (``CRITERIA``
order), then ``5 + risk_index * 5 + criterion_index`` in registry order;
rule cells are numbered likelihood-major. Each stream hands out its draws
to experts in order, so growing the panel never changes earlier experts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

import numpy as np

from ..exceptions import ValidationError
from ..fuzzy_core import RISK_LEVELS, RuleBase
from ..weighting import ExpertRatings
from .questionnaire import Questionnaire
from .registry import CRITERIA, RISK_CODES

N_CATEGORIES = 5
RULE_MUTATION_P = 0.1
_RATING_DOMAIN = 0
_RULE_DOMAIN = 1


def _check_probs(p, where):
    arr = np.asarray(p, dtype=float)
    if arr.shape != (N_CATEGORIES,):
        raise ValidationError(f"{where}: expected {N_CATEGORIES} probabilities")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise ValidationError(f"{where}: probabilities must be finite and non-negative")
    if abs(arr.sum() - 1.0) > 1e-9:
        raise ValidationError(f"{where}: probabilities sum to {arr.sum():.12g}, not 1")
    return tuple(float(v) for v in arr)


@dataclass(frozen=True)
class DistributionSpec:
    """Categorical probabilities over ratings 1..5 for every question."""

    criteria: Mapping  # criterion -> 5 probabilities (section 1)
    risks: Mapping  # risk code -> criterion -> 5 probabilities

    def __post_init__(self):
        crit = {c: _check_probs(self.criteria[c], f"criteria/{c}") for c in self._require(
            self.criteria, CRITERIA, "criteria")}
        risks = {}
        for code in self._require(self.risks, RISK_CODES, "risks"):
            block = self.risks[code]
            risks[code] = {c: _check_probs(block[c], f"risks/{code}/{c}")
                           for c in self._require(block, CRITERIA, f"risks/{code}")}
        object.__setattr__(self, "criteria", crit)
        object.__setattr__(self, "risks", risks)

    @staticmethod
    def _require(block, keys, where):
        missing = [k for k in keys if k not in block]
        if missing:
            raise ValidationError(f"{where}: missing {missing[0]!r}")
        extra = [k for k in block if k not in keys]
        if extra:
            raise ValidationError(f"{where}: unknown key {extra[0]!r}")
        return keys

    def questions(self):
        """``(key, probabilities)`` in stream order."""
        out = [(("section1", c), self.criteria[c]) for c in CRITERIA]
        out += [((code, c), self.risks[code][c]) for code in RISK_CODES for c in CRITERIA]
        return out

    def to_dict(self):
        return {"criteria": {c: list(p) for c, p in self.criteria.items()},
                "risks": {code: {c: list(p) for c, p in block.items()}
                          for code, block in self.risks.items()}}

    @classmethod
    def from_dict(cls, doc):
        if not isinstance(doc, Mapping):
            raise ValidationError("distribution spec must be a JSON object")
        extra = sorted(set(doc) - {"criteria", "risks"})
        if extra:
            raise ValidationError(f"distribution spec: unknown key {extra[0]!r}")
        try:
            return cls(doc["criteria"], doc["risks"])
        except KeyError as exc:
            raise ValidationError(f"distribution spec: missing key {exc.args[0]!r}") from None

    @classmethod
    def load(cls, path):
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def save(self, path):
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")

    @classmethod
    def uniform(cls):
        p = [1.0 / N_CATEGORIES] * N_CATEGORIES
        return cls({c: p for c in CRITERIA}, {code: {c: p for c in CRITERIA} for code in RISK_CODES})


def _stream(seed, domain, index):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(domain, index))))


def _draw(probs, u):
    cdf = np.cumsum(probs)
    cdf[-1] = 1.0
    return np.searchsorted(cdf, u, side="right") + 1


def generate_synthetic(spec: DistributionSpec, n_experts: int, seed: int,
                       rulebase: RuleBase | None = None) -> Questionnaire:
    """Draw a questionnaire with ``n_experts`` independent respondents.

    Ratings are sampled from each question's categorical distribution. Rule
    assignments start from ``rulebase`` (the published rule table by default) and each cell
    moves to an adjacent level with probability 0.1.
    """
    if isinstance(n_experts, bool) or int(n_experts) != n_experts or n_experts < 1:
        raise ValidationError("n_experts must be a positive integer")
    n = int(n_experts)
    values = []
    for q, (_, probs) in enumerate(spec.questions()):
        values.append(_draw(np.asarray(probs), _stream(seed, _RATING_DOMAIN, q).random(n)))
    values = np.array(values).T  # experts x questions
    n_c = len(CRITERIA)
    section1 = values[:, :n_c]
    risk_ratings = values[:, n_c:].reshape(n, len(RISK_CODES), n_c)

    rulebase = rulebase or RuleBase.reference()
    lik_t = tuple(dict.fromkeys(r.likelihood_term for r in rulebase))
    imp_t = tuple(dict.fromkeys(r.impact_term for r in rulebase))
    levels_t = RISK_LEVELS
    levels = np.empty((n, len(lik_t), len(imp_t)), dtype=object)
    top = len(levels_t) - 1
    for a, lik in enumerate(lik_t):
        for b, imp in enumerate(imp_t):
            base = levels_t.index(rulebase.consequent(lik, imp))
            u = _stream(seed, _RULE_DOMAIN, a * len(imp_t) + b).random((n, 2))
            for e in range(n):
                k = base
                if u[e, 0] < RULE_MUTATION_P:
                    up = base == 0 or (base < top and u[e, 1] < 0.5)
                    k = base + 1 if up else base - 1
                levels[e, a, b] = levels_t[k]

    experts = tuple(str(i + 1) for i in range(n))
    return Questionnaire(ExpertRatings(experts, CRITERIA, section1), risk_ratings, levels,
                         RISK_CODES, lik_t, imp_t, levels_t)


def fit_distributions(q: Questionnaire) -> DistributionSpec:
    """Empirical rating frequencies per question with add-one smoothing."""
    def smoothed(col):
        counts = np.bincount(np.asarray(col, dtype=int) - 1, minlength=N_CATEGORIES) + 1.0
        return tuple((counts / counts.sum()).tolist())

    criteria = {c: smoothed(q.section1.ratings[:, j]) for j, c in enumerate(q.criteria)}
    risks = {code: {c: smoothed(q.risk_ratings[:, r, j]) for j, c in enumerate(q.criteria)}
             for r, code in enumerate(q.risks)}
    return DistributionSpec(criteria, risks)


def total_variation(p, q):
    return 0.5 * float(np.abs(np.asarray(p, float) - np.asarray(q, float)).sum())


def categorical_around(mean, spread=0.8):
    """Discretized Gaussian over 1..5 centred at ``mean``; used to build fixtures."""
    k = np.arange(1, N_CATEGORIES + 1)
    w = np.exp(-0.5 * ((k - mean) / spread) ** 2)
    p = np.round(w / w.sum(), 4)
    p[np.argmax(p)] += 1.0 - p.sum()
    return tuple(float(round(v, 4)) for v in p)
