import copy
import json

import numpy as np
import pytest

from riskfuzz.exceptions import ValidationError
from riskfuzz.fuzzy_core import RISK_LEVELS, RuleBase
from riskfuzz.pipeline import data_path
from riskfuzz.risk_model import (CRITERIA, REGISTRY, RISK_CODES, RISK_TYPES, DistributionSpec,
                                 aggregate_expert_ratings, dumps_questionnaire, fit_distributions,
                                 generate_synthetic, get_risk, majority_rulebase, parse_questionnaire,
                                 questionnaire_from_csv, questionnaire_to_csv, questionnaire_to_dict,
                                 total_variation)
from riskfuzz.risk_model.synthetic import categorical_around

from published import RISK_ORDER, RULE_TABLE


@pytest.fixture(scope="module")
def small():
    return generate_synthetic(DistributionSpec.uniform(), 3, seed=7)


@pytest.fixture(scope="module")
def demo():
    return parse_questionnaire(data_path("demo_questionnaire.json"))


def degenerate(value):
    p = [0.0] * 5
    p[value - 1] = 1.0
    return DistributionSpec({c: p for c in CRITERIA}, {r: {c: p for c in CRITERIA} for r in RISK_CODES})


class TestRegistry:
    def test_codes(self):
        assert RISK_CODES == RISK_ORDER
        assert len({r.code for r in REGISTRY}) == 16

    def test_four_per_type(self):
        for t in RISK_TYPES:
            assert sum(r.risk_type == t for r in REGISTRY) == 4

    def test_lookup(self):
        assert get_risk("RM2").risk_type == "Market"
        with pytest.raises(KeyError):
            get_risk("RX9")


class TestParsing:
    def test_demo_shape(self, demo):
        assert len(demo.experts) == 7
        assert demo.risk_ratings.shape == (7, 16, 5)
        assert demo.rule_levels.shape == (7, 5, 5)

    def test_json_round_trip(self, small):
        assert parse_questionnaire(json.loads(dumps_questionnaire(small))) == small

    def test_csv_round_trip(self, small, tmp_path):
        ratings, rules = questionnaire_to_csv(small)
        assert questionnaire_from_csv(ratings, rules) == small
        (tmp_path / "q.csv").write_text(ratings)
        (tmp_path / "q_rules.csv").write_text(rules)
        assert parse_questionnaire(tmp_path / "q.csv") == small

    def test_missing_cell_named(self, small):
        doc = questionnaire_to_dict(small)
        del doc["risk_ratings"]["2"]["RM3"]["Exposure"]
        with pytest.raises(ValidationError, match="expert 2: missing RM3/Exposure"):
            parse_questionnaire(doc)

    def test_missing_risk_block(self, small):
        doc = questionnaire_to_dict(small)
        del doc["risk_ratings"]["2"]["RM3"]
        with pytest.raises(ValidationError, match="expert 2: missing RM3/Vulnerability"):
            parse_questionnaire(doc)

    @pytest.mark.parametrize("where", ["criteria", "risk"])
    def test_rating_six_rejected(self, small, where):
        doc = questionnaire_to_dict(small)
        if where == "criteria":
            doc["criteria_ratings"]["1"]["Impact"] = 6
        else:
            doc["risk_ratings"]["3"]["RT2"]["Likelihood"] = 6
        with pytest.raises(ValidationError):
            parse_questionnaire(doc)

    def test_bad_rule_label(self, small):
        doc = questionnaire_to_dict(small)
        doc["rule_assignments"]["1"][4]["level"] = "Severe"
        with pytest.raises(ValidationError, match="unknown risk level 'Severe'"):
            parse_questionnaire(doc)

    def test_missing_rule(self, small):
        doc = questionnaire_to_dict(small)
        doc["rule_assignments"]["1"].pop()
        with pytest.raises(ValidationError, match="expert 1: missing rule"):
            parse_questionnaire(doc)

    def test_duplicate_rule(self, small):
        doc = questionnaire_to_dict(small)
        doc["rule_assignments"]["1"][1] = dict(doc["rule_assignments"]["1"][0])
        with pytest.raises(ValidationError, match="duplicate rule"):
            parse_questionnaire(doc)

    def test_top_level_keys(self, small):
        doc = questionnaire_to_dict(small)
        broken = copy.deepcopy(doc)
        del broken["rule_assignments"]
        with pytest.raises(ValidationError, match="rule_assignments"):
            parse_questionnaire(broken)
        doc["extra"] = 1
        with pytest.raises(ValidationError, match="unknown top-level key"):
            parse_questionnaire(doc)

    def test_invalid_json_reports_line(self, tmp_path):
        p = tmp_path / "q.json"
        p.write_text('{\n  "experts": [1,\n')
        with pytest.raises(ValidationError, match=r"q\.json:\d+"):
            parse_questionnaire(p)

    def test_csv_errors(self, small):
        ratings, rules = questionnaire_to_csv(small)
        lines = ratings.splitlines()
        lines[3] = lines[3].rsplit(",", 1)[0] + ",9"
        with pytest.raises(ValidationError, match="ratings.csv:4"):
            questionnaire_from_csv("\n".join(lines), rules)
        with pytest.raises(ValidationError, match="header"):
            questionnaire_from_csv("a,b\n", rules)
        wrong_section = ratings.replace(",2,Rreg1,", ",3,Rreg1,", 1)
        with pytest.raises(ValidationError, match="section 2"):
            questionnaire_from_csv(wrong_section, rules)


class TestAggregation:
    def test_mean_and_unit_mapping(self, small):
        agg = aggregate_expert_ratings(small)
        means = small.risk_ratings.mean(axis=0)
        assert np.allclose(agg.matrix.values, means)
        li, ii = CRITERIA.index("Likelihood"), CRITERIA.index("Impact")
        for r, code in enumerate(RISK_CODES):
            assert agg.fis_inputs[code] == pytest.approx((means[r, li] / 5, means[r, ii] / 5))

    def test_two_experts_impact(self):
        q = generate_synthetic(degenerate(2), 2, seed=0)
        ratings = q.risk_ratings.copy()
        ratings[1, :, CRITERIA.index("Impact")] = 4
        q2 = type(q)(q.section1, ratings, q.rule_levels)
        assert aggregate_expert_ratings(q2).fis_inputs["Rreg1"][1] == pytest.approx(0.6)

    def test_all_fives(self):
        agg = aggregate_expert_ratings(generate_synthetic(degenerate(5), 4, seed=1))
        assert agg.fis_inputs["Rreg2"] == (1.0, 1.0)

    def test_bounds(self, demo):
        agg = aggregate_expert_ratings(demo)
        assert agg.matrix.values.min() >= 1 and agg.matrix.values.max() <= 5
        xs = np.array(list(agg.fis_inputs.values()))
        assert xs.min() >= 0.2 and xs.max() <= 1.0
        assert agg.matrix.orientations == ("benefit",) * 5


class TestMajorityRulebase:
    def _with_levels(self, q, levels):
        return type(q)(q.section1, q.risk_ratings, levels)

    def test_unanimous_table(self, small):
        levels = np.array([[[RISK_LEVELS[k] for k in row] for row in RULE_TABLE]] * 3, dtype=object)
        assert majority_rulebase(self._with_levels(small, levels)) == RuleBase.reference()

    def test_severity_tie(self):
        q = generate_synthetic(DistributionSpec.uniform(), 6, seed=3)
        levels = q.rule_levels.copy()
        levels[:, 0, 0] = ["Low"] * 3 + ["Medium"] * 3
        rb = majority_rulebase(self._with_levels(q, levels))
        assert rb.consequent(q.likelihood_terms[0], q.impact_terms[0]) == "Medium"

    def test_demo_recovers_table(self, demo):
        got = majority_rulebase(demo)
        assert sum(a == b for a, b in zip(got, RuleBase.reference())) >= 23


class TestSynthetic:
    def test_deterministic(self):
        spec = DistributionSpec.uniform()
        assert generate_synthetic(spec, 20, seed=11) == generate_synthetic(spec, 20, seed=11)
        assert generate_synthetic(spec, 20, seed=11) != generate_synthetic(spec, 20, seed=12)

    def test_prefix_stable(self):
        spec = DistributionSpec.uniform()
        a, b = generate_synthetic(spec, 5, seed=9), generate_synthetic(spec, 12, seed=9)
        assert np.array_equal(a.risk_ratings, b.risk_ratings[:5])
        assert np.array_equal(a.section1.ratings, b.section1.ratings[:5])
        assert np.array_equal(a.rule_levels, b.rule_levels[:5])

    def test_degenerate_spec(self):
        q = generate_synthetic(degenerate(4), 25, seed=5)
        assert np.all(q.risk_ratings == 4) and np.all(q.section1.ratings == 4)

    def test_mutation_rate(self):
        q = generate_synthetic(DistributionSpec.uniform(), 2000, seed=2)
        base = np.array([[RISK_LEVELS[k] for k in row] for row in RULE_TABLE], dtype=object)
        changed = (q.rule_levels != base[None]).mean()
        assert abs(changed - 0.1) < 0.01
        idx = np.vectorize(RISK_LEVELS.index)
        steps = np.abs(idx(q.rule_levels) - idx(base)[None])
        assert steps.max() == 1

    def test_bad_expert_count(self):
        with pytest.raises(ValidationError):
            generate_synthetic(DistributionSpec.uniform(), 0, seed=1)

    def test_spec_validation(self):
        doc = DistributionSpec.uniform().to_dict()
        doc["criteria"]["Impact"] = [0.5, 0.5, 0.1, 0, 0]
        with pytest.raises(ValidationError, match="criteria/Impact"):
            DistributionSpec.from_dict(doc)
        doc = DistributionSpec.uniform().to_dict()
        del doc["risks"]["RM1"]
        with pytest.raises(ValidationError, match="RM1"):
            DistributionSpec.from_dict(doc)

    def test_spec_round_trip(self, tmp_path):
        spec = DistributionSpec.from_dict(json.loads(data_path("demo_spec.json").read_text()))
        spec.save(tmp_path / "s.json")
        assert DistributionSpec.load(tmp_path / "s.json") == spec

    def test_categorical_around(self):
        p = categorical_around(3.0, 0.5)
        assert sum(p) == pytest.approx(1.0, abs=1e-12)
        assert max(p) == p[2]


class TestFitDistributions:
    def test_single_expert(self):
        fit = fit_distributions(generate_synthetic(degenerate(3), 1, seed=0))
        assert fit.criteria["Impact"] == pytest.approx((1 / 6, 1 / 6, 2 / 6, 1 / 6, 1 / 6))

    def test_ten_fives(self):
        fit = fit_distributions(generate_synthetic(degenerate(5), 10, seed=0))
        assert fit.risks["RM2"]["Likelihood"] == pytest.approx((1 / 15,) * 4 + (11 / 15,))

    def test_uniform_thousand(self):
        fit = fit_distributions(generate_synthetic(DistributionSpec.uniform(), 1000, seed=4))
        for _, probs in fit.questions():
            assert np.all(np.abs(np.array(probs) - 0.2) <= 0.05)

    def test_total_variation(self):
        assert total_variation([1, 0, 0, 0, 0], [0, 1, 0, 0, 0]) == 1.0
        assert total_variation([0.2] * 5, [0.2] * 5) == 0.0
