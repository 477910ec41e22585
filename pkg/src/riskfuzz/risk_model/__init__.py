from .questionnaire import (Aggregation, Questionnaire, aggregate_expert_ratings, dumps_questionnaire,
                            majority_rulebase, parse_questionnaire, questionnaire_from_csv,
                            questionnaire_from_dict, questionnaire_to_csv, questionnaire_to_dict)
from .registry import CRITERIA, REGISTRY, RISK_CODES, RISK_TYPES, RiskDescriptor, get_risk
from .synthetic import (DistributionSpec, fit_distributions, generate_synthetic,
                        total_variation)

__all__ = [
    "Aggregation", "Questionnaire", "aggregate_expert_ratings", "dumps_questionnaire",
    "majority_rulebase", "parse_questionnaire", "questionnaire_from_csv",
    "questionnaire_from_dict", "questionnaire_to_csv", "questionnaire_to_dict",
    "CRITERIA", "REGISTRY", "RISK_CODES", "RISK_TYPES", "RiskDescriptor", "get_risk",
    "DistributionSpec", "fit_distributions", "generate_synthetic", "total_variation",
]
