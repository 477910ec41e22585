"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -s`` to see the lines inline; they are
also repeated in the terminal summary.
"""

import json
import subprocess
import sys
import time
from pathlib import Path

import jsonschema
import numpy as np

from riskfuzz.fuzzy_core import (AggregatedOutput, TrapezoidalSet, assess_risk, default_config,
                                 defuzzify_centroid)
from riskfuzz.mcdm import METHODS, DecisionMatrix, ScoredRanking, rank_fuzzy_topsis
from riskfuzz.pipeline import data_path, report_schema, run_pipeline
from riskfuzz.rank_analysis import consensus_borda, correlation_matrix, kendall_tau
from riskfuzz.render import render_matrix_ascii
from riskfuzz.risk_model import DistributionSpec, fit_distributions, generate_synthetic, total_variation
from riskfuzz.weighting import ExpertRatings, derive_weights_topsis

from conftest import record
from oracles import fuzzy_topsis_scores, oracle_ranks, ranks_from
from published import CRISP_TABLE, METHOD_RANKS, RISK_ORDER

DEMO = data_path("demo_questionnaire.json")
GOLDEN = Path(__file__).parent / "golden"
D0 = [[7, 9, 9], [8, 7, 8], [9, 6, 8], [6, 7, 8]]
W0 = [0.3, 0.4, 0.3]


def test_criterion_1_rule_consistency():
    cfg = default_config()
    start = time.perf_counter()
    hits = 0
    for rule in cfg.rulebase:
        lx = cfg.likelihood_var.term(rule.likelihood_term).peak
        ix = cfg.impact_var.term(rule.impact_term).peak
        hits += assess_risk(lx, ix, cfg).level == rule.risk_term
    elapsed = time.perf_counter() - start
    ok = hits == 25 and elapsed < 1.0
    record(1, ok, f"{hits}/25 rules reproduced in {elapsed:.3f} s")
    assert ok


def test_criterion_2_published_levels():
    cfg = default_config()
    labels = close = 0
    rows = []
    for code, (lx, ix, crisp, level) in CRISP_TABLE.items():
        res = assess_risk(lx, ix, cfg)
        delta = res.crisp_risk - crisp
        labels += res.level == level
        close += abs(delta) <= 0.05
        rows.append(f"{code}:{delta:+.4f}")
    print("crisp deviations:", " ".join(rows))
    ok = labels >= 14 and close >= 12
    record(2, ok, f"levels {labels}/16 (need 14), |delta|<=0.05 on {close}/16 (need 12)")
    assert ok


def _trapezoid_area_centroid(heights, sets, n=1_000_000):
    # Independent integration: piecewise-linear interpolation, midpoint rule.
    dx = 1.0 / n
    x = (np.arange(n) + 0.5) * dx
    mu = np.zeros(n)
    for h, s in zip(heights, sets):
        if h <= 0:
            continue
        xp = [s.a1, s.a2, s.a3, s.a4]
        fp = [0.0 if s.a1 < s.a2 else 1.0, 1.0, 1.0, 0.0 if s.a3 < s.a4 else 1.0]
        mu = np.maximum(mu, np.minimum(h, np.interp(x, xp, fp, left=0.0, right=0.0)))
    return float((x * mu).sum() / mu.sum())


def test_criterion_3_defuzzification():
    cfg = default_config()
    sets = cfg.risk_var.sets
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(100):
        heights = tuple(rng.random(4) * (rng.random(4) < 0.8))
        if max(heights) == 0:
            heights = (0.0, 0.0, 0.5, 0.0)
        agg = AggregatedOutput(cfg.risk_var, heights)
        worst = max(worst, abs(defuzzify_centroid(agg) - _trapezoid_area_centroid(heights, sets)))
    sym = defuzzify_centroid(TrapezoidalSet(0.1, 0.3, 0.7, 0.9).membership)
    ok = worst <= 1e-3 and abs(sym - 0.5) <= 1e-6
    record(3, ok, f"max |discrete - integral| = {worst:.2e}; symmetric centroid {sym:.8f}")
    assert ok


def test_criterion_4_mcdm_oracles():
    failures = []
    for name, fn in METHODS.items():
        if fn(DecisionMatrix.build(D0, W0)).ranks.tolist() != oracle_ranks(name, D0, W0, [True] * 3):
            failures.append(f"{name}/D0")
    rng = np.random.default_rng(7)
    for _ in range(50):
        values = rng.integers(1, 10, size=(4, 3)).astype(float)
        w = rng.random(3) + 0.05
        w /= w.sum()
        benefit = list(rng.random(3) < 0.7)
        d = DecisionMatrix.build(values, w, ["benefit" if b else "cost" for b in benefit])
        for name, fn in METHODS.items():
            if fn(d).ranks.tolist() != oracle_ranks(name, values.tolist(), w.tolist(), benefit):
                failures.append(f"{name}/random")
        lik = [tuple(np.sort(rng.random(4))) for _ in range(4)]
        imp = [tuple(np.sort(rng.random(4))) for _ in range(4)]
        got = rank_fuzzy_topsis([TrapezoidalSet(*t) for t in lik], [TrapezoidalSet(*t) for t in imp])
        if got.ranks.tolist() != ranks_from(fuzzy_topsis_scores(lik, imp)):
            failures.append("FUZZY-TOPSIS/random")
    for _ in range(100):
        values = rng.integers(1, 10, size=(5, 3)).astype(float)
        w = rng.random(3) + 0.05
        w /= w.sum()
        benefit = rng.random(3) < 0.7
        k = int(rng.integers(5))
        values[k] = np.where(benefit, values.max(axis=0) + 1, values.min(axis=0) * 0.5)
        d = DecisionMatrix.build(values, w, ["benefit" if b else "cost" for b in benefit])
        for name, fn in METHODS.items():
            if fn(d).rank_of(d.alternatives[k]) != 1:
                failures.append(f"{name}/dominance")
    ok = not failures
    record(4, ok, "all methods match their oracles" if ok else f"mismatches: {sorted(set(failures))}")
    assert ok


def test_criterion_5_kendall():
    ident = kendall_tau(range(1, 17), range(1, 17))
    rev = kendall_tau(range(1, 17), range(16, 0, -1))
    hand = kendall_tau((1, 2, 3, 4), (1, 3, 2, 4))
    rankings = [ScoredRanking.from_ranks(k, RISK_ORDER, v) for k, v in METHOD_RANKS.items()]
    c = correlation_matrix(rankings).values
    ok = (ident == 1.0 and rev == -1.0 and hand == 2 / 3
          and np.array_equal(c, c.T) and np.all(np.diag(c) == 1.0))
    record(5, ok, f"tau identical={ident}, reversed={rev}, hand={hand:.6f}; matrix symmetric, unit diagonal")
    assert ok


def test_criterion_6_published_consensus():
    rankings = [ScoredRanking.from_ranks(k, RISK_ORDER, v) for k, v in METHOD_RANKS.items()]
    order = consensus_borda(rankings).ordered()
    c = correlation_matrix(rankings).values
    ok = set(order[:3]) == {"RM2", "Rreg2", "RT3"} and order[-1] == "Rrep4" and c.min() >= -1.0
    record(6, ok, f"consensus top-3 {list(order[:3])}, last {order[-1]}, min tau {c.min():.3f}")
    assert ok


def test_criterion_7_weighting():
    rng = np.random.default_rng(31)
    worst = 0.0
    for _ in range(200):
        e, n = int(rng.integers(1, 15)), int(rng.integers(2, 8))
        arr = rng.integers(1, 6, size=(e, n))
        w = derive_weights_topsis(ExpertRatings(tuple(map(str, range(e))), tuple(map(str, range(n))), arr))
        worst = max(worst, abs(w.weights.sum() - 1.0))
    uni = derive_weights_topsis(ExpertRatings(("a", "b"), ("x", "y", "z"), np.full((2, 3), 4))).weights
    demo = run_pipeline(DEMO).weights.as_dict()
    pattern = ("Impact", "Vulnerability", "Exposure", "Resilience", "Likelihood")
    ordered = tuple(sorted(demo, key=demo.get, reverse=True))
    ok = worst <= 1e-9 and np.allclose(uni, 1 / 3, atol=1e-12) and ordered == pattern
    record(7, ok, f"max |sum-1| {worst:.1e}; uniform ok; demo order {' > '.join(ordered)}")
    assert ok


def test_criterion_8_synthetic_round_trip():
    spec = DistributionSpec.from_dict(json.loads(data_path("demo_spec.json").read_text()))
    q = generate_synthetic(spec, 5000, seed=8)
    fitted = fit_distributions(q)
    tv = max(total_variation(p, f) for (_, p), (_, f) in zip(spec.questions(), fitted.questions()))
    same = generate_synthetic(spec, 50, seed=8) == generate_synthetic(spec, 50, seed=8)
    ok = tv < 0.05 and same
    record(8, ok, f"max total variation {tv:.4f} at 5000 experts; deterministic={same}")
    assert ok


def test_criterion_9_end_to_end(tmp_path):
    out = tmp_path / "report.json"
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "riskfuzz.cli", "report", str(DEMO), "--json", str(out),
                           "--quiet"], capture_output=True, text=True)
    elapsed = time.perf_counter() - start
    valid = proc.returncode == 0
    if valid:
        try:
            jsonschema.validate(json.loads(out.read_text()), report_schema())
        except jsonschema.ValidationError:
            valid = False
    ascii_ok = render_matrix_ascii(run_pipeline(DEMO).matrix) == (GOLDEN / "demo_matrix.txt").read_text()
    ok = valid and elapsed < 5.0 and ascii_ok
    record(9, ok, f"report in {elapsed:.2f} s, schema valid={valid}, golden matrix match={ascii_ok}")
    assert ok
