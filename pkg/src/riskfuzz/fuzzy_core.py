"""Mamdani fuzzy inference for likelihood x impact risk assessment.

Inputs are crisp values on [0, 1]. Each is fuzzified against a linguistic
variable made of trapezoidal sets, the rule base is evaluated with ``min``
for AND and for implication, clipped consequents are aggregated with ``max``
and the result is defuzzified by the discrete centre of area.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exceptions import DomainError, InferenceError, ValidationError
from .validation import check_unit, check_unit_array

LIKELIHOOD_TERMS = ("Very unlikely", "Unlikely", "Medium", "Likely", "Very likely")
IMPACT_TERMS = ("Low", "Low-Medium", "Medium", "Medium-High", "High")
RISK_LEVELS = ("Low", "Medium", "High", "Critical")

# Consequent level index for (likelihood term, impact term); rows and
# columns ordered least to most severe.
REFERENCE_RULES = (
    (0, 0, 0, 1, 1),
    (0, 0, 1, 1, 2),
    (0, 0, 1, 2, 2),
    (0, 1, 1, 2, 3),
    (0, 1, 2, 3, 3),
)

DEFAULT_INPUT_SETS = (
    (0.0, 0.0, 0.30, 0.35),
    (0.25, 0.30, 0.45, 0.50),
    (0.40, 0.45, 0.65, 0.70),
    (0.60, 0.65, 0.85, 0.90),
    (0.80, 0.85, 1.0, 1.0),
)
DEFAULT_RISK_SETS = (
    (0.0, 0.0, 0.15, 0.30),
    (0.25, 0.40, 0.45, 0.55),
    (0.45, 0.65, 0.70, 0.75),
    (0.70, 1.0, 1.0, 1.0),
)
DEFAULT_RESOLUTION = 10_001

_COVERAGE_SAMPLES = 20_001


@dataclass(frozen=True)
class TrapezoidalSet:
    """Normalized trapezoid with breakpoints ``a1 <= a2 <= a3 <= a4`` on [0, 1]."""

    a1: float
    a2: float
    a3: float
    a4: float

    def __post_init__(self):
        pts = tuple(float(v) for v in (self.a1, self.a2, self.a3, self.a4))
        if not all(np.isfinite(pts)):
            raise ValidationError(f"trapezoid breakpoints must be finite: {pts}")
        if not (pts[0] <= pts[1] <= pts[2] <= pts[3]):
            raise ValidationError(f"trapezoid breakpoints not ordered: {pts}")
        if pts[0] < 0.0 or pts[3] > 1.0:
            raise ValidationError(f"trapezoid breakpoints outside [0, 1]: {pts}")
        for name, v in zip(("a1", "a2", "a3", "a4"), pts):
            object.__setattr__(self, name, v)

    @property
    def breakpoints(self):
        return (self.a1, self.a2, self.a3, self.a4)

    @property
    def peak(self):
        """Midpoint of the unit plateau."""
        return 0.5 * (self.a2 + self.a3)

    @property
    def support(self):
        return (self.a1, self.a4)

    def membership(self, x):
        """Vectorized membership; returns a float for scalar input."""
        arr = np.asarray(x, dtype=float)
        y = np.where((arr >= self.a2) & (arr <= self.a3), 1.0, 0.0)
        if self.a2 > self.a1:
            rising = (arr > self.a1) & (arr < self.a2)
            y = np.where(rising, (arr - self.a1) / (self.a2 - self.a1), y)
        if self.a4 > self.a3:
            falling = (arr > self.a3) & (arr < self.a4)
            y = np.where(falling, (self.a4 - arr) / (self.a4 - self.a3), y)
        return float(y) if y.ndim == 0 else y

    def __call__(self, x):
        return self.membership(x)


@dataclass(frozen=True)
class LinguisticVariable:
    name: str
    terms: tuple  # ((label, TrapezoidalSet), ...) least to most severe

    def __post_init__(self):
        terms = tuple((str(label), s) for label, s in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise ValidationError(f"{self.name}: at least one term required")
        labels = [label for label, _ in terms]
        if len(set(labels)) != len(labels):
            raise ValidationError(f"{self.name}: duplicate term labels {labels}")
        for label, s in terms:
            if not isinstance(s, TrapezoidalSet):
                raise ValidationError(f"{self.name}/{label}: expected a TrapezoidalSet")
        peaks = [s.peak for _, s in terms]
        if any(b <= a for a, b in zip(peaks, peaks[1:])):
            raise ValidationError(f"{self.name}: term peaks must strictly increase, got {peaks}")
        xs = np.unique(np.concatenate([
            np.linspace(0.0, 1.0, _COVERAGE_SAMPLES),
            np.array([p for _, s in terms for p in s.breakpoints]),
        ]))
        covered = self._memberships(xs).max(axis=0) > 0.0
        if not covered.all():
            gap = float(xs[~covered][0])
            raise ValidationError(f"{self.name}: no term covers x={gap:.6g}")

    @property
    def labels(self):
        return tuple(label for label, _ in self.terms)

    @property
    def sets(self):
        return tuple(s for _, s in self.terms)

    def __len__(self):
        return len(self.terms)

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(f"{self.name}: unknown term {label!r}") from None

    def term(self, label):
        return self.terms[self.index(label)][1]

    def _memberships(self, x):
        return np.array([s.membership(x) for _, s in self.terms], dtype=float)

    def memberships(self, x):
        """Degrees of every term at ``x``; shape ``(n_terms,) + shape(x)``."""
        return self._memberships(check_unit_array(x, self.name))

    def to_dict(self):
        return {"terms": [{"label": label, "trapezoid": list(s.breakpoints)}
                          for label, s in self.terms]}

    @classmethod
    def from_dict(cls, name, doc):
        _reject_unknown(doc, {"terms"}, name)
        if "terms" not in doc or not isinstance(doc["terms"], list):
            raise ValidationError(f"{name}: 'terms' must be a list")
        terms = []
        for i, t in enumerate(doc["terms"]):
            where = f"{name}.terms[{i}]"
            if not isinstance(t, Mapping):
                raise ValidationError(f"{where}: expected an object")
            _reject_unknown(t, {"label", "trapezoid"}, where)
            try:
                label, bp = t["label"], t["trapezoid"]
            except KeyError as exc:
                raise ValidationError(f"{where}: missing key {exc.args[0]!r}") from None
            if not isinstance(bp, list) or len(bp) != 4:
                raise ValidationError(f"{where}: trapezoid must have 4 breakpoints")
            terms.append((label, TrapezoidalSet(*bp)))
        return cls(name, tuple(terms))


@dataclass(frozen=True)
class FuzzyRule:
    likelihood_term: str
    impact_term: str
    risk_term: str


@dataclass(frozen=True)
class RuleBase:
    rules: tuple

    def __post_init__(self):
        rules = tuple(self.rules)
        object.__setattr__(self, "rules", rules)
        seen = set()
        for r in rules:
            key = (r.likelihood_term, r.impact_term)
            if key in seen:
                raise ValidationError(f"duplicate rule for antecedent {key}")
            seen.add(key)

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def consequent(self, likelihood_term, impact_term):
        for r in self.rules:
            if r.likelihood_term == likelihood_term and r.impact_term == impact_term:
                return r.risk_term
        raise KeyError((likelihood_term, impact_term))

    def check_against(self, likelihood, impact, risk):
        """Every label resolves and each antecedent pair has exactly one rule."""
        for r in self.rules:
            likelihood.index(r.likelihood_term)
            impact.index(r.impact_term)
            risk.index(r.risk_term)
        expected = len(likelihood) * len(impact)
        if len(self.rules) != expected:
            raise ValidationError(
                f"rule base has {len(self.rules)} rules, expected one per antecedent pair ({expected})")

    @classmethod
    def from_table(cls, table, likelihood_labels=LIKELIHOOD_TERMS,
                   impact_labels=IMPACT_TERMS, risk_labels=RISK_LEVELS):
        return cls(tuple(
            FuzzyRule(likelihood_labels[i], impact_labels[j], risk_labels[table[i][j]])
            for i in range(len(likelihood_labels)) for j in range(len(impact_labels))
        ))

    @classmethod
    def reference(cls):
        return cls.from_table(REFERENCE_RULES)


@dataclass(frozen=True)
class FisConfig:
    likelihood_var: LinguisticVariable
    impact_var: LinguisticVariable
    risk_var: LinguisticVariable
    rulebase: RuleBase
    defuzz_resolution: int = DEFAULT_RESOLUTION

    def __post_init__(self):
        if len(self.risk_var) != len(RISK_LEVELS):
            raise ValidationError(
                f"risk variable must have {len(RISK_LEVELS)} terms, got {len(self.risk_var)}")
        res = self.defuzz_resolution
        if isinstance(res, bool) or not isinstance(res, (int, np.integer)) or res < 2:
            raise ValidationError(f"defuzz_resolution must be an integer >= 2, got {res!r}")
        object.__setattr__(self, "defuzz_resolution", int(res))
        self.rulebase.check_against(self.likelihood_var, self.impact_var, self.risk_var)

    def to_dict(self):
        return {
            "likelihood": self.likelihood_var.to_dict(),
            "impact": self.impact_var.to_dict(),
            "risk": self.risk_var.to_dict(),
            "rules": [{"if_likelihood": r.likelihood_term, "if_impact": r.impact_term,
                       "then_risk": r.risk_term} for r in self.rulebase],
            "defuzz_resolution": self.defuzz_resolution,
        }

    @classmethod
    def from_dict(cls, doc):
        if not isinstance(doc, Mapping):
            raise ValidationError("config document must be a JSON object")
        keys = {"likelihood", "impact", "risk", "rules", "defuzz_resolution"}
        _reject_unknown(doc, keys, "config")
        missing = sorted(keys - {"defuzz_resolution"} - set(doc))
        if missing:
            raise ValidationError(f"config: missing key {missing[0]!r}")
        if not isinstance(doc["rules"], list):
            raise ValidationError("config: 'rules' must be a list")
        rules = []
        for i, r in enumerate(doc["rules"]):
            where = f"rules[{i}]"
            if not isinstance(r, Mapping):
                raise ValidationError(f"{where}: expected an object")
            _reject_unknown(r, {"if_likelihood", "if_impact", "then_risk"}, where)
            try:
                rules.append(FuzzyRule(r["if_likelihood"], r["if_impact"], r["then_risk"]))
            except KeyError as exc:
                raise ValidationError(f"{where}: missing key {exc.args[0]!r}") from None
        return cls(
            LinguisticVariable.from_dict("likelihood", doc["likelihood"]),
            LinguisticVariable.from_dict("impact", doc["impact"]),
            LinguisticVariable.from_dict("risk", doc["risk"]),
            RuleBase(tuple(rules)),
            doc.get("defuzz_resolution", DEFAULT_RESOLUTION),
        )

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"config is not valid JSON: {exc}") from exc
        return cls.from_dict(doc)

    def save(self, path):
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path):
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class AggregatedOutput:
    """Max of the risk terms, each clipped at its strongest firing rule."""

    risk_var: LinguisticVariable
    heights: tuple  # one clip height per risk term
    activation_trace: tuple = field(default=())  # firing strength per rule

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        clipped = [np.minimum(h, s.membership(arr))
                   for h, s in zip(self.heights, self.risk_var.sets) if h > 0.0]
        if not clipped:
            return np.zeros_like(arr)
        return np.max(clipped, axis=0)

    @property
    def support(self):
        active = [s for h, s in zip(self.heights, self.risk_var.sets) if h > 0.0]
        if not active:
            raise InferenceError("no rule fired")
        return (min(s.a1 for s in active), max(s.a4 for s in active))


@dataclass(frozen=True)
class AssessmentResult:
    crisp_risk: float
    level: str
    activation_trace: tuple


def trapezoid_membership(x, tset):
    return tset.membership(x)


def fuzzify(x, var):
    """Map a crisp value to ``{label: degree}`` for every term of ``var``."""
    x = check_unit(x, var.name)
    return {label: float(s.membership(x)) for label, s in var.terms}


def infer(likelihood_x, impact_x, cfg):
    lik = fuzzify(likelihood_x, cfg.likelihood_var)
    imp = fuzzify(impact_x, cfg.impact_var)
    heights = dict.fromkeys(cfg.risk_var.labels, 0.0)
    trace = []
    for rule in cfg.rulebase:
        strength = min(lik[rule.likelihood_term], imp[rule.impact_term])
        trace.append(strength)
        if strength > heights[rule.risk_term]:
            heights[rule.risk_term] = strength
    return AggregatedOutput(cfg.risk_var, tuple(heights.values()), tuple(trace))


def defuzzify_centroid(aggregated, resolution=DEFAULT_RESOLUTION):
    """Discrete centre of area over ``resolution`` uniform samples of [0, 1]."""
    if resolution < 2:
        raise DomainError("resolution must be at least 2")
    xs = np.linspace(0.0, 1.0, int(resolution))
    mu = np.asarray(aggregated(xs), dtype=float)
    total = mu.sum()
    if not total > 0.0:
        raise InferenceError("no rule fired")
    return float(np.dot(mu, xs) / total)


def classify_level(crisp, risk_var):
    """Term with the highest membership at ``crisp``; ties go to the more severe term."""
    degrees = risk_var.memberships(check_unit(crisp, "crisp"))
    best = len(degrees) - 1 - int(np.argmax(degrees[::-1]))
    return risk_var.labels[best]


def assess_risk(likelihood_x, impact_x, cfg):
    agg = infer(likelihood_x, impact_x, cfg)
    crisp = defuzzify_centroid(agg, cfg.defuzz_resolution)
    return AssessmentResult(crisp, classify_level(crisp, cfg.risk_var), agg.activation_trace)


def assess_many(likelihood, impact, cfg):
    """Vectorized :func:`assess_risk` returning ``(crisp, levels)`` arrays."""
    lik = check_unit_array(likelihood, "likelihood").ravel()
    imp = check_unit_array(impact, "impact").ravel()
    if lik.shape != imp.shape:
        raise DomainError("likelihood and impact must have the same length")
    mu_l = np.array([s.membership(lik) for s in cfg.likelihood_var.sets]).T
    mu_i = np.array([s.membership(imp) for s in cfg.impact_var.sets]).T
    heights = np.zeros((lik.size, len(cfg.risk_var)))
    for rule in cfg.rulebase:
        a = cfg.likelihood_var.index(rule.likelihood_term)
        b = cfg.impact_var.index(rule.impact_term)
        k = cfg.risk_var.index(rule.risk_term)
        heights[:, k] = np.maximum(heights[:, k], np.minimum(mu_l[:, a], mu_i[:, b]))
    xs = np.linspace(0.0, 1.0, cfg.defuzz_resolution)
    terms = np.array([s.membership(xs) for s in cfg.risk_var.sets])
    crisp = np.empty(lik.size)
    for start in range(0, lik.size, 256):
        h = heights[start:start + 256]
        agg = np.minimum(h[:, :, None], terms[None]).max(axis=1)
        total = agg.sum(axis=1)
        if np.any(total <= 0.0):
            raise InferenceError("no rule fired")
        crisp[start:start + 256] = agg @ xs / total
    levels = np.array([classify_level(c, cfg.risk_var) for c in crisp], dtype=object)
    return crisp, levels


def default_config():
    """Five-term likelihood and impact partitions, four risk levels, the published rule table."""
    return FisConfig(
        likelihood_var=_variable("likelihood", LIKELIHOOD_TERMS, DEFAULT_INPUT_SETS),
        impact_var=_variable("impact", IMPACT_TERMS, DEFAULT_INPUT_SETS),
        risk_var=_variable("risk", RISK_LEVELS, DEFAULT_RISK_SETS),
        rulebase=RuleBase.reference(),
        defuzz_resolution=DEFAULT_RESOLUTION,
    )


def _variable(name, labels: Sequence[str], sets: Iterable[tuple]):
    return LinguisticVariable(name, tuple((lab, TrapezoidalSet(*s)) for lab, s in zip(labels, sets)))


def _reject_unknown(doc, allowed, where):
    unknown = sorted(set(doc) - set(allowed))
    if unknown:
        raise ValidationError(f"{where}: unknown key {unknown[0]!r}")
