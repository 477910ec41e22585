"""Decision-matrix and ranking value types plus their CSV/JSON formats."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..exceptions import ValidationError
from ..validation import check_matrix, check_orientations, check_weights

# Scores closer than this are treated as ties and resolved by input order.
TIE_DECIMALS = 12


@dataclass(frozen=True, eq=False)
class DecisionMatrix:
    """Alternatives x criteria matrix with orientations and a weight vector.

    ``values`` is stored as a read-only float array. Orientation is
    ``"benefit"`` (higher is better) or ``"cost"`` per criterion.
    """

    alternatives: tuple
    criteria: tuple
    values: np.ndarray
    weights: np.ndarray
    orientations: tuple

    def __post_init__(self):
        values = check_matrix(self.values, "values").copy()
        m, n = values.shape
        alternatives = tuple(str(a) for a in self.alternatives)
        criteria = tuple(str(c) for c in self.criteria)
        if len(alternatives) != m:
            raise ValidationError(f"{len(alternatives)} alternative names for {m} rows")
        if len(criteria) != n:
            raise ValidationError(f"{len(criteria)} criterion names for {n} columns")
        if len(set(alternatives)) != m:
            raise ValidationError("alternative identifiers must be unique")
        if len(set(criteria)) != n:
            raise ValidationError("criterion names must be unique")
        weights = check_weights(self.weights, n).copy()
        values.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "alternatives", alternatives)
        object.__setattr__(self, "criteria", criteria)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "orientations", check_orientations(self.orientations, n))

    @classmethod
    def build(cls, values, weights=None, orientations=None, alternatives=None, criteria=None):
        """Convenience constructor with default names, equal weights and benefit criteria."""
        arr = check_matrix(values, "values")
        m, n = arr.shape
        if weights is None:
            weights = np.full(n, 1.0 / n)
        if alternatives is None:
            alternatives = [f"A{i + 1}" for i in range(m)]
        if criteria is None:
            criteria = [f"C{j + 1}" for j in range(n)]
        return cls(tuple(alternatives), tuple(criteria), arr, np.asarray(weights, float),
                   check_orientations(orientations, n))

    @property
    def shape(self):
        return self.values.shape

    @property
    def benefit_mask(self):
        return np.array([o == "benefit" for o in self.orientations])

    def take(self, order):
        """Rows reordered by ``order`` (used by the permutation property)."""
        order = list(order)
        return DecisionMatrix(tuple(self.alternatives[i] for i in order), self.criteria,
                              self.values[order], self.weights, self.orientations)

    def __eq__(self, other):
        if not isinstance(other, DecisionMatrix):
            return NotImplemented
        return (self.alternatives == other.alternatives and self.criteria == other.criteria
                and self.orientations == other.orientations
                and np.array_equal(self.values, other.values)
                and np.array_equal(self.weights, other.weights))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class ScoredRanking:
    method: str
    alternatives: tuple
    scores: np.ndarray
    ranks: np.ndarray
    higher_is_better: bool = True

    def __post_init__(self):
        alternatives = tuple(str(a) for a in self.alternatives)
        scores = np.asarray(self.scores, dtype=float).ravel().copy()
        ranks = np.asarray(self.ranks).ravel().astype(int)
        m = len(alternatives)
        if scores.shape != (m,) or ranks.shape != (m,):
            raise ValidationError("scores and ranks must have one entry per alternative")
        if sorted(ranks.tolist()) != list(range(1, m + 1)):
            raise ValidationError(f"{self.method}: ranks must be a permutation of 1..{m}")
        scores.flags.writeable = False
        ranks.flags.writeable = False
        object.__setattr__(self, "alternatives", alternatives)
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "ranks", ranks)

    @classmethod
    def from_scores(cls, method, alternatives, scores, higher_is_better=True):
        return cls(method, tuple(alternatives), scores,
                   rank_scores(scores, higher_is_better), higher_is_better)

    @classmethod
    def from_ranks(cls, method, alternatives, ranks):
        """Ranking from a published rank column; duplicate ranks resolve by input order."""
        ranks = np.asarray(ranks, dtype=float)
        return cls.from_scores(method, alternatives, -ranks, higher_is_better=True)

    def rank_of(self, alternative):
        return int(self.ranks[self.alternatives.index(alternative)])

    def ordered(self):
        """Alternatives from rank 1 downwards."""
        return tuple(a for _, a in sorted(zip(self.ranks.tolist(), self.alternatives)))

    def to_records(self):
        return [{"alternative": a, "score": float(s), "rank": int(r)}
                for a, s, r in zip(self.alternatives, self.scores, self.ranks)]

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["alternative", "score", "rank"])
        for rec in self.to_records():
            writer.writerow([rec["alternative"], repr(rec["score"]), rec["rank"]])
        return buf.getvalue()

    def to_dict(self):
        return {"method": self.method, "higher_is_better": self.higher_is_better,
                "ranking": self.to_records()}

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, doc):
        recs = doc["ranking"]
        return cls(doc["method"], [r["alternative"] for r in recs],
                   [r["score"] for r in recs], [r["rank"] for r in recs],
                   bool(doc.get("higher_is_better", True)))

    def __eq__(self, other):
        if not isinstance(other, ScoredRanking):
            return NotImplemented
        return (self.method == other.method and self.alternatives == other.alternatives
                and self.higher_is_better == other.higher_is_better
                and np.array_equal(self.scores, other.scores)
                and np.array_equal(self.ranks, other.ranks))

    __hash__ = None


def rank_scores(scores, higher_is_better=True):
    """1-based ranks; equal scores go to the alternative earlier in input order."""
    s = np.round(np.asarray(scores, dtype=float), TIE_DECIMALS)
    key = -s if higher_is_better else s
    order = np.argsort(key, kind="stable")
    ranks = np.empty(len(s), dtype=int)
    ranks[order] = np.arange(1, len(s) + 1)
    return ranks


def read_decision_matrix(csv_path, sidecar_path):
    """Load ``alternative,<crit...>`` CSV plus the orientation/weight sidecar JSON."""
    with open(csv_path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or not rows[0] or rows[0][0] != "alternative":
        raise ValidationError(f"{csv_path}: header must start with 'alternative'")
    header = rows[0][1:]
    alternatives, values = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header) + 1:
            raise ValidationError(f"{csv_path}:{lineno}: expected {len(header) + 1} fields")
        alternatives.append(row[0])
        try:
            values.append([float(v) for v in row[1:]])
        except ValueError as exc:
            raise ValidationError(f"{csv_path}:{lineno}: {exc}") from None
    try:
        side = json.loads(Path(sidecar_path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{sidecar_path}:{exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(side, dict) or set(side) != {"criteria", "weights"}:
        raise ValidationError(f"{sidecar_path}: expected exactly the keys 'criteria' and 'weights'")
    crit = side["criteria"]
    if not isinstance(crit, list) or not all(isinstance(c, dict) and set(c) == {"name", "orientation"}
                                             for c in crit):
        raise ValidationError(f"{sidecar_path}: each criterion needs 'name' and 'orientation'")
    names = [c["name"] for c in crit]
    if names != header:
        raise ValidationError(f"{sidecar_path}: criteria {names} do not match CSV header {header}")
    return DecisionMatrix(tuple(alternatives), tuple(names), np.array(values, dtype=float),
                          np.asarray(side["weights"], dtype=float),
                          tuple(c["orientation"] for c in crit))


def write_decision_matrix(d, csv_path, sidecar_path):
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["alternative", *d.criteria])
        for a, row in zip(d.alternatives, d.values):
            writer.writerow([a, *(repr(float(v)) for v in row)])
    side = {"criteria": [{"name": c, "orientation": o} for c, o in zip(d.criteria, d.orientations)],
            "weights": [float(w) for w in d.weights]}
    Path(sidecar_path).write_text(json.dumps(side, indent=2) + "\n", encoding="utf-8")
