"""End-to-end run: questionnaire -> weights -> rankings -> comparison -> FIS -> matrix."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources

from .fuzzy_core import FisConfig, assess_risk, default_config
from .mcdm.fuzzy_topsis import rank_fuzzy_topsis, rating_from_scores
from .mcdm.methods import rank_all
from .rank_analysis import consensus_borda, correlation_matrix
from .render import argmax_term, build_grid
from .risk_model.questionnaire import aggregate_expert_ratings, parse_questionnaire
from .weighting import derive_weights_topsis

CONFIG_ENV = "RISKFUZZ_CONFIG"


@dataclass(frozen=True)
class PipelineReport:
    weights: object  # WeightVector
    matrix_input: object  # DecisionMatrix
    rankings: dict  # method -> ScoredRanking
    fuzzy_topsis: object
    correlation: object  # CorrelationMatrix
    consensus: object
    fis_inputs: dict  # code -> (likelihood_x, impact_x)
    assessments: dict  # code -> AssessmentResult
    matrix: object  # RiskMatrixGrid
    config: FisConfig

    def assessment_table(self):
        """Rows sorted by crisp risk (descending), registry order among equals."""
        cfg = self.config
        rows = []
        for code, res in self.assessments.items():
            lx, ix = self.fis_inputs[code]
            rows.append({
                "code": code,
                "likelihood": lx,
                "likelihood_term": cfg.likelihood_var.labels[argmax_term(lx, cfg.likelihood_var)],
                "impact": ix,
                "impact_term": cfg.impact_var.labels[argmax_term(ix, cfg.impact_var)],
                "crisp_risk": res.crisp_risk,
                "level": res.level,
            })
        return sorted(rows, key=lambda r: -r["crisp_risk"])

    def to_dict(self):
        return {
            "weights": self.weights.to_dict(),
            "decision_matrix": {
                "alternatives": list(self.matrix_input.alternatives),
                "criteria": list(self.matrix_input.criteria),
                "values": self.matrix_input.values.tolist(),
            },
            "rankings": {name: r.to_dict() for name, r in self.rankings.items()},
            "fuzzy_topsis": self.fuzzy_topsis.to_dict(),
            "correlation": self.correlation.to_dict(),
            "consensus": self.consensus.to_dict(),
            "assessments": self.assessment_table(),
            "matrix": self.matrix.to_dict(),
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent) + "\n"


def resolve_config(config_path=None):
    """Explicit path, else ``$RISKFUZZ_CONFIG``, else the built-in default."""
    path = config_path or os.environ.get(CONFIG_ENV)
    return FisConfig.load(path) if path else default_config()


def run_questionnaire(q, cfg=None, recompute_colors=False):
    cfg = cfg or default_config()
    weights = derive_weights_topsis(q.section1)
    agg = aggregate_expert_ratings(q, weights)
    rankings = rank_all(agg.matrix)
    li, ii = q.criteria.index("Likelihood"), q.criteria.index("Impact")
    fuzzy = rank_fuzzy_topsis([rating_from_scores(q.risk_ratings[:, r, li]) for r in range(len(q.risks))],
                              [rating_from_scores(q.risk_ratings[:, r, ii]) for r in range(len(q.risks))],
                              q.risks)
    methods = list(rankings.values())
    assessments = {code: assess_risk(lx, ix, cfg) for code, (lx, ix) in agg.fis_inputs.items()}
    return PipelineReport(
        weights=weights,
        matrix_input=agg.matrix,
        rankings=rankings,
        fuzzy_topsis=fuzzy,
        correlation=correlation_matrix(methods),
        consensus=consensus_borda(methods),
        fis_inputs=agg.fis_inputs,
        assessments=assessments,
        matrix=build_grid(agg.fis_inputs, cfg, recompute_colors),
        config=cfg,
    )


def run_pipeline(questionnaire_path, config_path=None, rules_path=None, recompute_colors=False):
    cfg = resolve_config(config_path)
    q = parse_questionnaire(questionnaire_path, rules=rules_path,
                            likelihood_terms=cfg.likelihood_var.labels,
                            impact_terms=cfg.impact_var.labels,
                            risk_levels=cfg.risk_var.labels)
    return run_questionnaire(q, cfg, recompute_colors)


def data_path(name):
    """Path of a file shipped in ``riskfuzz/data``."""
    return resources.files("riskfuzz").joinpath("data", name)


def report_schema():
    return json.loads(data_path("report.schema.json").read_text(encoding="utf-8"))
