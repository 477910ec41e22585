"""scikit-learn style wrappers over the functional API.

The estimators hold hyperparameters only; ``fit`` validates input and stores
fitted state in trailing-underscore attributes, so they compose with
``get_params``/``set_params``/``clone`` like any other estimator.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .fuzzy_core import FisConfig, assess_many, default_config
from .mcdm.matrix import DecisionMatrix
from .mcdm.methods import METHODS, get_method
from .validation import check_matrix
from .weighting import WEIGHT_FLOOR, ExpertRatings, derive_weights_topsis


class FuzzyRiskAssessor(TransformerMixin, BaseEstimator):
    """Mamdani risk scoring of ``(likelihood, impact)`` rows in ``[0, 1]``.

    ``transform`` returns the crisp risk as an ``(n, 1)`` column; ``predict``
    returns the risk-level labels.
    """

    def __init__(self, config=None):
        self.config = config

    def fit(self, X=None, y=None):
        cfg = self.config
        if cfg is None:
            cfg = default_config()
        elif isinstance(cfg, dict):
            cfg = FisConfig.from_dict(cfg)
        elif not isinstance(cfg, FisConfig):
            raise TypeError("config must be a FisConfig, a dict or None")
        self.config_ = cfg
        self.levels_ = cfg.risk_var.labels
        self.n_features_in_ = 2
        return self

    def _assess(self, X):
        check_is_fitted(self, "config_")
        arr = check_matrix(X, "X")
        if arr.shape[1] != 2:
            raise ValueError(f"expected 2 columns (likelihood, impact), got {arr.shape[1]}")
        return assess_many(arr[:, 0], arr[:, 1], self.config_)

    def transform(self, X):
        return self._assess(X)[0][:, None]

    def predict(self, X):
        return self._assess(X)[1]


class MCDMRanker(BaseEstimator):
    """Rank the rows of a decision matrix with one of the ten MCDM methods.

    Fitting on ``X`` (alternatives x criteria) stores ``ranking_``,
    ``scores_`` and ``ranks_``. ``transform``/``predict`` score a new matrix
    with the same settings without touching fitted state.
    """

    def __init__(self, method="TOPSIS", weights=None, orientations=None,
                 alternatives=None, criteria=None, method_params=None):
        self.method = method
        self.weights = weights
        self.orientations = orientations
        self.alternatives = alternatives
        self.criteria = criteria
        self.method_params = method_params

    def _rank(self, X):
        fn = get_method(self.method)
        d = DecisionMatrix.build(X, self.weights, self.orientations, self.alternatives, self.criteria)
        return d, fn(d, **(self.method_params or {}))

    def fit(self, X, y=None):
        d, ranking = self._rank(X)
        self.decision_matrix_ = d
        self.ranking_ = ranking
        self.scores_ = np.asarray(ranking.scores)
        self.ranks_ = np.asarray(ranking.ranks)
        self.n_features_in_ = d.values.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "ranking_")
        return np.asarray(self._rank(X)[1].scores)[:, None]

    def predict(self, X):
        check_is_fitted(self, "ranking_")
        return np.asarray(self._rank(X)[1].ranks)

    def fit_transform(self, X, y=None):
        return self.fit(X).scores_[:, None]

    def fit_predict(self, X, y=None):
        return self.fit(X).ranks_


def available_methods():
    return tuple(METHODS)


class TopsisWeighter(BaseEstimator):
    """Criterion weights from an experts x criteria Likert matrix."""

    def __init__(self, criteria=None, floor=WEIGHT_FLOOR):
        self.criteria = criteria
        self.floor = floor

    def fit(self, X, y=None):
        arr = np.asarray(X)
        if arr.ndim != 2:
            raise ValueError("X must be a 2-D experts x criteria array")
        criteria = self.criteria or tuple(f"C{j + 1}" for j in range(arr.shape[1]))
        experts = tuple(str(i + 1) for i in range(arr.shape[0]))
        self.weight_vector_ = derive_weights_topsis(ExpertRatings(experts, criteria, arr), self.floor)
        self.weights_ = np.asarray(self.weight_vector_.weights)
        self.n_features_in_ = arr.shape[1]
        return self

    def transform(self, X):
        """Weighted ratings, ``X * weights_`` column-wise."""
        check_is_fitted(self, "weights_")
        arr = check_matrix(X, "X")
        if arr.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {arr.shape[1]}")
        return arr * self.weights_

    def fit_transform(self, X, y=None):
        return self.fit(X).transform(X)
