"""Expert questionnaire: parsing, validation, serialization and aggregation.

Two interchangeable on-disk formats are supported, both described in
``docs/formats.md``: a single JSON document, or a ratings CSV paired with a
rules CSV.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, NamedTuple

import numpy as np

from ..exceptions import ValidationError
from ..fuzzy_core import IMPACT_TERMS, LIKELIHOOD_TERMS, RISK_LEVELS, RuleBase
from ..mcdm.matrix import DecisionMatrix
from ..validation import check_likert
from ..weighting import ExpertRatings, WeightVector, derive_weights_topsis, likert_to_unit
from .registry import CRITERIA, REGISTRY, RISK_CODES, SECTION_OF_TYPE

_JSON_KEYS = ("experts", "criteria_ratings", "risk_ratings", "rule_assignments")
RATINGS_CSV_HEADER = ("expert", "section", "risk_code", "criterion", "rating")
RULES_CSV_HEADER = ("expert", "likelihood_term", "impact_term", "level")


@dataclass(frozen=True, eq=False)
class Questionnaire:
    """Validated answers of every expert to the six questionnaire sections.

    ``risk_ratings`` has shape (experts, risks, criteria); ``rule_levels``
    holds the level label each expert assigned to every (likelihood, impact)
    term pair, shape (experts, n_likelihood_terms, n_impact_terms).
    """

    section1: ExpertRatings
    risk_ratings: np.ndarray
    rule_levels: np.ndarray
    risks: tuple = RISK_CODES
    likelihood_terms: tuple = LIKELIHOOD_TERMS
    impact_terms: tuple = IMPACT_TERMS
    risk_levels: tuple = RISK_LEVELS

    def __post_init__(self):
        n_e = len(self.section1.experts)
        ratings = np.asarray(self.risk_ratings)
        if ratings.shape != (n_e, len(self.risks), len(self.criteria)):
            raise ValidationError(f"risk_ratings shape {ratings.shape} inconsistent with "
                                  f"{n_e} experts x {len(self.risks)} risks x {len(self.criteria)} criteria")
        if not np.issubdtype(ratings.dtype, np.integer) or ratings.min() < 1 or ratings.max() > 5:
            raise ValidationError("risk ratings must be integers in 1..5")
        levels = np.asarray(self.rule_levels, dtype=object)
        if levels.shape != (n_e, len(self.likelihood_terms), len(self.impact_terms)):
            raise ValidationError(f"rule_levels shape {levels.shape} inconsistent with the term sets")
        bad = set(levels.ravel().tolist()) - set(self.risk_levels)
        if bad:
            raise ValidationError(f"unknown risk level {sorted(map(str, bad))[0]!r}")
        ratings = ratings.astype(int)
        ratings.flags.writeable = False
        levels.flags.writeable = False
        object.__setattr__(self, "risk_ratings", ratings)
        object.__setattr__(self, "rule_levels", levels)

    @property
    def experts(self):
        return self.section1.experts

    @property
    def criteria(self):
        return self.section1.criteria

    def __eq__(self, other):
        if not isinstance(other, Questionnaire):
            return NotImplemented
        return (self.section1 == other.section1 and self.risks == other.risks
                and self.likelihood_terms == other.likelihood_terms
                and self.impact_terms == other.impact_terms
                and self.risk_levels == other.risk_levels
                and np.array_equal(self.risk_ratings, other.risk_ratings)
                and np.array_equal(self.rule_levels, other.rule_levels))

    __hash__ = None


class Aggregation(NamedTuple):
    matrix: DecisionMatrix
    fis_inputs: dict  # risk code -> (likelihood_x, impact_x)


def _labels(likelihood_terms, impact_terms, risk_levels):
    return (tuple(likelihood_terms or LIKELIHOOD_TERMS), tuple(impact_terms or IMPACT_TERMS),
            tuple(risk_levels or RISK_LEVELS))


def questionnaire_from_dict(doc, likelihood_terms=None, impact_terms=None, risk_levels=None):
    lik_t, imp_t, levels_t = _labels(likelihood_terms, impact_terms, risk_levels)
    if not isinstance(doc, Mapping):
        raise ValidationError("questionnaire must be a JSON object")
    unknown = sorted(set(doc) - set(_JSON_KEYS))
    if unknown:
        raise ValidationError(f"unknown top-level key {unknown[0]!r}")
    for key in _JSON_KEYS:
        if key not in doc:
            raise ValidationError(f"missing top-level key {key!r}")
    experts = doc["experts"]
    if not isinstance(experts, list) or not experts:
        raise ValidationError("'experts' must be a non-empty list")
    experts = [str(e) for e in experts]
    if len(set(experts)) != len(experts):
        raise ValidationError("expert identifiers must be unique")
    for key in _JSON_KEYS[1:]:
        extra = sorted(set(map(str, doc[key])) - set(experts))
        if extra:
            raise ValidationError(f"{key}: unknown expert {extra[0]!r}")

    sec1 = np.zeros((len(experts), len(CRITERIA)), dtype=int)
    ratings = np.zeros((len(experts), len(RISK_CODES), len(CRITERIA)), dtype=int)
    levels = np.empty((len(experts), len(lik_t), len(imp_t)), dtype=object)
    for e, expert in enumerate(experts):
        crit = _expert_block(doc["criteria_ratings"], expert, "criteria ratings")
        _reject_extra(crit, CRITERIA, f"expert {expert}: unknown criterion")
        for c, name in enumerate(CRITERIA):
            if name not in crit:
                raise ValidationError(f"expert {expert}: missing criterion {name}")
            sec1[e, c] = check_likert(crit[name], f"expert {expert}: {name}")

        risks = _expert_block(doc["risk_ratings"], expert, "risk ratings")
        _reject_extra(risks, RISK_CODES, f"expert {expert}: unknown risk code")
        for r, code in enumerate(RISK_CODES):
            block = risks.get(code, {})
            if not isinstance(block, Mapping):
                raise ValidationError(f"expert {expert}: {code} must map criteria to ratings")
            _reject_extra(block, CRITERIA, f"expert {expert}: {code}: unknown criterion")
            for c, name in enumerate(CRITERIA):
                if name not in block:
                    raise ValidationError(f"expert {expert}: missing {code}/{name}")
                ratings[e, r, c] = check_likert(block[name], f"expert {expert}: {code}/{name}")

        rules = _expert_block(doc["rule_assignments"], expert, "rule assignments", list)
        cells = {}
        for i, item in enumerate(rules):
            where = f"expert {expert}: rule {i + 1}"
            if not isinstance(item, Mapping) or set(item) != {"likelihood", "impact", "level"}:
                raise ValidationError(f"{where}: expected keys likelihood, impact, level")
            cells.update(_rule_cell(item["likelihood"], item["impact"], item["level"],
                                    lik_t, imp_t, levels_t, cells, where))
        _fill_levels(levels[e], cells, expert, lik_t, imp_t)

    return Questionnaire(ExpertRatings(tuple(experts), CRITERIA, sec1), ratings, levels,
                         RISK_CODES, lik_t, imp_t, levels_t)


def _expert_block(section, expert, what, kind=Mapping):
    if not isinstance(section, Mapping):
        raise ValidationError(f"{what} must be an object keyed by expert")
    if expert not in section:
        raise ValidationError(f"expert {expert}: missing {what}")
    block = section[expert]
    if not isinstance(block, kind):
        raise ValidationError(f"expert {expert}: malformed {what}")
    return block


def _reject_extra(block, allowed, message):
    extra = [k for k in block if k not in allowed]
    if extra:
        raise ValidationError(f"{message} {extra[0]!r}")


def _rule_cell(lik, imp, level, lik_t, imp_t, levels_t, seen, where):
    if lik not in lik_t:
        raise ValidationError(f"{where}: unknown likelihood term {lik!r}")
    if imp not in imp_t:
        raise ValidationError(f"{where}: unknown impact term {imp!r}")
    if level not in levels_t:
        raise ValidationError(f"{where}: unknown risk level {level!r}")
    key = (lik_t.index(lik), imp_t.index(imp))
    if key in seen:
        raise ValidationError(f"{where}: duplicate rule ({lik}, {imp})")
    return {key: level}


def _fill_levels(target, cells, expert, lik_t, imp_t):
    for a, lik in enumerate(lik_t):
        for b, imp in enumerate(imp_t):
            if (a, b) not in cells:
                raise ValidationError(f"expert {expert}: missing rule ({lik}, {imp})")
            target[a, b] = cells[(a, b)]


def questionnaire_to_dict(q: Questionnaire):
    doc = {"experts": list(q.experts), "criteria_ratings": {}, "risk_ratings": {},
           "rule_assignments": {}}
    for e, expert in enumerate(q.experts):
        doc["criteria_ratings"][expert] = {c: int(q.section1.ratings[e, j])
                                           for j, c in enumerate(q.criteria)}
        doc["risk_ratings"][expert] = {
            code: {c: int(q.risk_ratings[e, r, j]) for j, c in enumerate(q.criteria)}
            for r, code in enumerate(q.risks)}
        doc["rule_assignments"][expert] = [
            {"likelihood": lik, "impact": imp, "level": str(q.rule_levels[e, a, b])}
            for a, lik in enumerate(q.likelihood_terms) for b, imp in enumerate(q.impact_terms)]
    return doc


def dumps_questionnaire(q: Questionnaire):
    return json.dumps(questionnaire_to_dict(q), indent=2) + "\n"


def questionnaire_to_csv(q: Questionnaire):
    """Return ``(ratings_csv, rules_csv)`` text."""
    section_of = {r.code: SECTION_OF_TYPE[r.risk_type] for r in REGISTRY}
    ratings = io.StringIO()
    w = csv.writer(ratings, lineterminator="\n")
    w.writerow(RATINGS_CSV_HEADER)
    for e, expert in enumerate(q.experts):
        for j, c in enumerate(q.criteria):
            w.writerow([expert, 1, "", c, int(q.section1.ratings[e, j])])
        for r, code in enumerate(q.risks):
            for j, c in enumerate(q.criteria):
                w.writerow([expert, section_of[code], code, c, int(q.risk_ratings[e, r, j])])
    rules = io.StringIO()
    w = csv.writer(rules, lineterminator="\n")
    w.writerow(RULES_CSV_HEADER)
    for e, expert in enumerate(q.experts):
        for a, lik in enumerate(q.likelihood_terms):
            for b, imp in enumerate(q.impact_terms):
                w.writerow([expert, lik, imp, q.rule_levels[e, a, b]])
    return ratings.getvalue(), rules.getvalue()


def questionnaire_from_csv(ratings_text, rules_text, source="ratings.csv",
                           rules_source="rules.csv", likelihood_terms=None,
                           impact_terms=None, risk_levels=None):
    lik_t, imp_t, levels_t = _labels(likelihood_terms, impact_terms, risk_levels)
    section_of = {r.code: SECTION_OF_TYPE[r.risk_type] for r in REGISTRY}
    experts = []
    crit_doc, risk_doc = {}, {}
    rows = csv.reader(io.StringIO(ratings_text))
    header = next(rows, None)
    if header is None or tuple(header) != RATINGS_CSV_HEADER:
        raise ValidationError(f"{source}:1: header must be {','.join(RATINGS_CSV_HEADER)}")
    for lineno, row in enumerate(rows, start=2):
        if not row:
            continue
        where = f"{source}:{lineno}"
        if len(row) != len(RATINGS_CSV_HEADER):
            raise ValidationError(f"{where}: expected {len(RATINGS_CSV_HEADER)} fields, got {len(row)}")
        expert, section, code, criterion, rating = row
        if expert not in crit_doc:
            experts.append(expert)
            crit_doc[expert], risk_doc[expert] = {}, {}
        try:
            section = int(section)
            value = int(rating)
        except ValueError:
            raise ValidationError(f"{where}: section and rating must be integers") from None
        if criterion not in CRITERIA:
            raise ValidationError(f"{where}: unknown criterion {criterion!r}")
        check_likert(value, f"{where}: expert {expert}: {code or 'section 1'}/{criterion}")
        if section == 1:
            if code:
                raise ValidationError(f"{where}: section 1 rows must leave risk_code empty")
            target, key = crit_doc[expert], criterion
        else:
            if code not in section_of:
                raise ValidationError(f"{where}: unknown risk code {code!r}")
            if section_of[code] != section:
                raise ValidationError(f"{where}: {code} belongs to section {section_of[code]}, not {section}")
            target, key = risk_doc[expert].setdefault(code, {}), criterion
        if key in target:
            raise ValidationError(f"{where}: duplicate rating for expert {expert} {code or 'section 1'}/{criterion}")
        target[key] = value

    rule_doc = {e: [] for e in experts}
    rows = csv.reader(io.StringIO(rules_text))
    header = next(rows, None)
    if header is None or tuple(header) != RULES_CSV_HEADER:
        raise ValidationError(f"{rules_source}:1: header must be {','.join(RULES_CSV_HEADER)}")
    for lineno, row in enumerate(rows, start=2):
        if not row:
            continue
        where = f"{rules_source}:{lineno}"
        if len(row) != len(RULES_CSV_HEADER):
            raise ValidationError(f"{where}: expected {len(RULES_CSV_HEADER)} fields, got {len(row)}")
        expert, lik, imp, level = row
        if expert not in rule_doc:
            raise ValidationError(f"{where}: expert {expert} has no ratings")
        for label, allowed, what in ((lik, lik_t, "likelihood term"), (imp, imp_t, "impact term"),
                                     (level, levels_t, "risk level")):
            if label not in allowed:
                raise ValidationError(f"{where}: unknown {what} {label!r}")
        rule_doc[expert].append({"likelihood": lik, "impact": imp, "level": level})

    doc = {"experts": experts, "criteria_ratings": crit_doc, "risk_ratings": risk_doc,
           "rule_assignments": rule_doc}
    return questionnaire_from_dict(doc, lik_t, imp_t, levels_t)


def default_rules_path(ratings_path):
    p = Path(ratings_path)
    return p.with_name(f"{p.stem}_rules.csv")


def parse_questionnaire(document, rules=None, **labels):
    """Parse and validate a questionnaire.

    ``document`` is a mapping (already-decoded JSON) or a path. ``.csv``
    paths are read together with ``rules`` (default: ``<stem>_rules.csv``
    next to the ratings file); any other path is read as JSON.
    """
    if isinstance(document, Mapping):
        return questionnaire_from_dict(document, **labels)
    path = Path(document)
    if path.suffix.lower() == ".csv":
        rules_path = Path(rules) if rules is not None else default_rules_path(path)
        return questionnaire_from_csv(path.read_text(encoding="utf-8"),
                                      rules_path.read_text(encoding="utf-8"),
                                      str(path), str(rules_path), **labels)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}:{exc.lineno}: invalid JSON ({exc.msg})") from None
    return questionnaire_from_dict(doc, **labels)


def aggregate_expert_ratings(q: Questionnaire, weights: WeightVector | None = None) -> Aggregation:
    """Mean expert rating per (risk, criterion) and the FIS inputs per risk."""
    if weights is None:
        weights = derive_weights_topsis(q.section1)
    if tuple(weights.criteria) != tuple(q.criteria):
        raise ValidationError("weight vector criteria do not match the questionnaire")
    means = q.risk_ratings.mean(axis=0)
    matrix = DecisionMatrix(q.risks, q.criteria, means, weights.weights,
                            ("benefit",) * len(q.criteria))
    li, ii = q.criteria.index("Likelihood"), q.criteria.index("Impact")
    inputs = {code: (likert_to_unit(means[r, li]), likert_to_unit(means[r, ii]))
              for r, code in enumerate(q.risks)}
    return Aggregation(matrix, inputs)


def majority_rulebase(q: Questionnaire) -> RuleBase:
    """Modal level per antecedent pair; ties resolve toward the more severe level."""
    table = []
    for a in range(len(q.likelihood_terms)):
        row = []
        for b in range(len(q.impact_terms)):
            counts = Counter(q.rule_levels[:, a, b].tolist())
            best = max(range(len(q.risk_levels)),
                       key=lambda k: (counts.get(q.risk_levels[k], 0), k))
            row.append(best)
        table.append(row)
    return RuleBase.from_table(table, q.likelihood_terms, q.impact_terms, q.risk_levels)
