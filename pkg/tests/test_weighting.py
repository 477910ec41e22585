import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from riskfuzz.exceptions import DomainError, ValidationError
from riskfuzz.weighting import (WEIGHT_FLOOR, ExpertRatings, WeightVector, apply_floor,
                                derive_weights_topsis, likert_to_unit)

from oracles import topsis_scores

CRIT = ("Vulnerability", "Resilience", "Exposure", "Likelihood", "Impact")


def _ratings(arr, criteria=None):
    arr = np.asarray(arr)
    criteria = criteria or tuple(f"C{j}" for j in range(arr.shape[1]))
    return ExpertRatings(tuple(str(i) for i in range(arr.shape[0])), criteria, arr)


likert_matrices = st.integers(1, 12).flatmap(
    lambda e: st.integers(2, 6).flatmap(
        lambda n: arrays(np.int64, (e, n), elements=st.integers(1, 5))))


class TestExpertRatings:
    @pytest.mark.parametrize("bad", [0, 6, 2.5, True])
    def test_rejects_non_likert(self, bad):
        arr = np.full((2, 2), 3, dtype=object)
        arr[1, 0] = bad
        with pytest.raises(ValidationError, match="expert 1"):
            _ratings(arr)

    def test_shape_mismatch(self):
        with pytest.raises(ValidationError, match="shape"):
            ExpertRatings(("a",), ("x", "y"), [[1, 2, 3]])

    def test_empty(self):
        with pytest.raises(DomainError):
            ExpertRatings((), ("x",), np.zeros((0, 1), dtype=int))


class TestDeriveWeights:
    def test_uniform_ratings_give_uniform_weights(self):
        w = derive_weights_topsis(_ratings(np.full((4, 5), 3)))
        assert np.allclose(w.weights, 0.2, atol=1e-12)

    def test_dominance_then_floor(self):
        w = derive_weights_topsis(_ratings([[5, 1], [5, 1]]))
        assert w.weights.tolist() == pytest.approx([0.995, 0.005], abs=1e-12)

    def test_closeness_proportional(self):
        arr = np.array([[5, 3, 4, 2, 5], [4, 4, 4, 3, 5], [5, 2, 3, 3, 4]])
        cc = topsis_scores(arr.T.tolist(), [1 / 3] * 3, [True] * 3)
        expected = np.array(cc) / sum(cc)
        got = derive_weights_topsis(_ratings(arr, CRIT)).weights
        assert np.allclose(got, apply_floor(expected), atol=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(likert_matrices)
    def test_sum_and_floor(self, arr):
        w = derive_weights_topsis(_ratings(arr)).weights
        assert abs(w.sum() - 1.0) <= 1e-9
        assert w.min() >= WEIGHT_FLOOR - 1e-15

    @settings(max_examples=50, deadline=None)
    @given(likert_matrices, st.randoms(use_true_random=False))
    def test_permutations(self, arr, rnd):
        base = derive_weights_topsis(_ratings(arr)).weights
        cols = list(range(arr.shape[1]))
        rnd.shuffle(cols)
        rows = list(range(arr.shape[0]))
        rnd.shuffle(rows)
        assert np.allclose(derive_weights_topsis(_ratings(arr[:, cols])).weights, base[cols], atol=1e-12)
        assert np.allclose(derive_weights_topsis(_ratings(arr[rows])).weights, base, atol=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(likert_matrices)
    def test_duplicated_panel_invariant(self, arr):
        base = derive_weights_topsis(_ratings(arr)).weights
        doubled = derive_weights_topsis(_ratings(np.vstack([arr, arr]))).weights
        assert np.allclose(doubled, base, atol=1e-9)

    def test_single_clone_can_move_weights(self):
        # Cloning one expert doubles that expert's say; weights need not stay put.
        arr = np.array([[5, 3, 4, 2, 5], [4, 4, 4, 3, 5], [5, 2, 3, 3, 4], [3, 5, 4, 2, 4]])
        base = derive_weights_topsis(_ratings(arr)).weights
        cloned = derive_weights_topsis(_ratings(np.vstack([arr, arr[:1]]))).weights
        assert not np.allclose(base, cloned, atol=1e-3)
        assert abs(cloned.sum() - 1.0) < 1e-12


class TestFloor:
    def test_exact_floor_values(self):
        w = apply_floor([0.6, 0.4, 0.0, 0.0])
        assert w[2] == w[3] == WEIGHT_FLOOR
        assert w.sum() == pytest.approx(1.0, abs=1e-12)
        assert w[0] / w[1] == pytest.approx(1.5)

    def test_cascading_floor(self):
        # Rescaling after the first clamp pushes the middle weight under the floor.
        w = apply_floor([0.9949999, 0.0050001, 0.0])
        assert w.tolist()[1:] == pytest.approx([WEIGHT_FLOOR, WEIGHT_FLOOR], abs=1e-15)
        assert w.sum() == pytest.approx(1.0)

    def test_untouched_when_above_floor(self):
        w = np.array([0.3, 0.3, 0.4])
        assert np.allclose(apply_floor(w), w)

    def test_infeasible(self):
        with pytest.raises(ValidationError):
            apply_floor(np.full(300, 1 / 300))


class TestWeightVector:
    def test_round_trip(self):
        w = WeightVector(("a", "b"), [0.25, 0.75])
        assert WeightVector.from_dict(w.to_dict()) == w
        assert w.as_dict() == {"a": 0.25, "b": 0.75}

    def test_invalid(self):
        with pytest.raises(ValidationError):
            WeightVector(("a", "b"), [0.5, 0.6])
        with pytest.raises(ValidationError):
            WeightVector(("a", "b"), [1.2, -0.2])


class TestLikert:
    @pytest.mark.parametrize("v,expected", [(1, 0.2), (5, 1.0), (3.6605, 0.7321), (3, 0.6)])
    def test_values(self, v, expected):
        assert likert_to_unit(v) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("v", [0.99, 5.01, float("nan"), "x"])
    def test_domain(self, v):
        with pytest.raises(DomainError):
            likert_to_unit(v)
