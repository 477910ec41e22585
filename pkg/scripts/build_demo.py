"""Rebuild the shipped demo distribution spec and the seed-42 demo questionnaire.

Rating distributions are centred on the published crisp inputs (likelihood
and impact, times 5). The remaining criteria are centred on each risk's
position in the Borda consensus of the published method rankings, from 5.0
for the top risk down to 2.0 for the last. Run from the repository root.
"""

from pathlib import Path

from riskfuzz.mcdm.matrix import ScoredRanking
from riskfuzz.rank_analysis import consensus_borda
from riskfuzz.risk_model.questionnaire import dumps_questionnaire
from riskfuzz.risk_model.synthetic import DistributionSpec, categorical_around, generate_synthetic

DATA = Path(__file__).resolve().parents[1] / "src" / "riskfuzz" / "data"
SEED, EXPERTS = 42, 7

# code: (likelihood, impact) crisp inputs
PUBLISHED_INPUTS = {
    "Rreg1": (0.3929, 0.9371), "Rreg2": (0.7321, 0.9720), "Rreg3": (0.2000, 0.8252),
    "Rreg4": (0.6071, 0.7552), "RT1": (0.8393, 0.9720), "RT2": (0.4643, 0.9091),
    "RT3": (0.6786, 0.9441), "RT4": (0.2000, 0.8252), "RM1": (0.2321, 0.8392),
    "RM2": (1.0000, 1.0000), "RM3": (0.4286, 0.8741), "RM4": (0.2000, 0.8042),
    "Rrep1": (0.2143, 0.8531), "Rrep2": (0.4286, 0.8182), "Rrep3": (0.3750, 0.7832),
    "Rrep4": (0.2000, 0.6853),
}

# Published ranks per method, rows in registry order.
PUBLISHED_RANKS = {
    "TOPSIS": (6, 1, 12, 10, 5, 7, 3, 13, 14, 2, 4, 15, 11, 8, 9, 16),
    "COPRAS": (7, 2, 12, 10, 5, 6, 3, 13, 15, 1, 4, 14, 11, 8, 9, 16),
    "BORDA": (7, 1, 13, 10, 5, 6, 3, 12, 14, 2, 4, 15, 11, 8, 9, 16),
    "SAW": (7, 2, 12, 10, 5, 6, 3, 13, 15, 1, 4, 14, 11, 8, 9, 16),
    "ELECTRE": (8, 2, 15, 10, 4, 7, 3, 12, 13, 1, 5, 14, 11, 6, 9, 16),
    "VIKOR": (10, 2, 7, 11, 5, 6, 1, 14, 15, 4, 13, 3, 8, 12, 9, 16),
    "MARCOS": (7, 2, 12, 10, 5, 6, 3, 13, 15, 1, 4, 14, 11, 9, 9, 16),
    "PROMETHEE": (6, 1, 13, 11, 5, 7, 3, 12, 14, 2, 4, 15, 10, 8, 9, 16),
    "WSM": (7, 2, 12, 10, 5, 6, 3, 13, 15, 1, 4, 14, 11, 8, 9, 16),
    "CODAS": (7, 2, 12, 10, 4, 6, 3, 13, 14, 1, 5, 15, 11, 9, 8, 16),
}

SECTION1 = {"Vulnerability": 4.3, "Resilience": 3.4, "Exposure": 4.0, "Likelihood": 2.6, "Impact": 4.8}


def published_consensus():
    codes = tuple(PUBLISHED_INPUTS)
    return consensus_borda([ScoredRanking.from_ranks(m, codes, r) for m, r in PUBLISHED_RANKS.items()])


def build_spec():
    criteria = {c: categorical_around(m, 0.5) for c, m in SECTION1.items()}
    order = published_consensus().ordered()
    risks = {}
    for code, (lik, imp) in PUBLISHED_INPUTS.items():
        other = categorical_around(5.0 - 3.0 * order.index(code) / (len(order) - 1), 0.4)
        risks[code] = {
            "Vulnerability": other, "Resilience": other, "Exposure": other,
            "Likelihood": categorical_around(5 * lik, 0.5),
            "Impact": categorical_around(5 * imp, 0.5),
        }
    return DistributionSpec(criteria, risks)


def main():
    spec = build_spec()
    spec.save(DATA / "demo_spec.json")
    q = generate_synthetic(spec, EXPERTS, SEED)
    (DATA / "demo_questionnaire.json").write_text(dumps_questionnaire(q), encoding="utf-8")


if __name__ == "__main__":
    main()
