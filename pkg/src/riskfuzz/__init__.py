"""Fuzzy risk-matrix assessment and multi-criteria ranking of climate transition risks."""

from .estimators import FuzzyRiskAssessor, MCDMRanker, TopsisWeighter
from .exceptions import (DegenerateInputError, DomainError, InferenceError, RiskFuzzError,
                         ValidationError)
from .fuzzy_core import (AssessmentResult, FisConfig, FuzzyRule, LinguisticVariable, RuleBase,
                         TrapezoidalSet, assess_many, assess_risk, classify_level, default_config,
                         defuzzify_centroid, fuzzify, infer)
from .mcdm import DecisionMatrix, ScoredRanking, rank_all, rank_fuzzy_topsis
from .pipeline import PipelineReport, run_pipeline, run_questionnaire
from .rank_analysis import CorrelationMatrix, consensus_borda, correlation_matrix, kendall_tau
from .render import RiskMatrixGrid, build_grid, render_heatmap_svg, render_matrix_ascii, render_matrix_svg
from .risk_model import (DistributionSpec, Questionnaire, aggregate_expert_ratings, fit_distributions,
                         generate_synthetic, majority_rulebase, parse_questionnaire)
from .weighting import ExpertRatings, WeightVector, derive_weights_topsis, likert_to_unit

__version__ = "0.1.0"

__all__ = [
    "FuzzyRiskAssessor", "MCDMRanker", "TopsisWeighter",
    "RiskFuzzError", "DomainError", "ValidationError", "DegenerateInputError", "InferenceError",
    "TrapezoidalSet", "LinguisticVariable", "FuzzyRule", "RuleBase", "FisConfig", "AssessmentResult",
    "fuzzify", "infer", "defuzzify_centroid", "classify_level", "assess_risk", "assess_many",
    "default_config",
    "DecisionMatrix", "ScoredRanking", "rank_all", "rank_fuzzy_topsis",
    "PipelineReport", "run_pipeline", "run_questionnaire",
    "CorrelationMatrix", "kendall_tau", "correlation_matrix", "consensus_borda",
    "RiskMatrixGrid", "build_grid", "render_matrix_ascii", "render_matrix_svg", "render_heatmap_svg",
    "Questionnaire", "DistributionSpec", "parse_questionnaire", "aggregate_expert_ratings",
    "majority_rulebase", "generate_synthetic", "fit_distributions",
    "ExpertRatings", "WeightVector", "derive_weights_topsis", "likert_to_unit",
]
