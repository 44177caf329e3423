"""scikit-learn style wrappers around the functional core.

A subalgebra is passed as its basis: a 2-D array whose rows are vectors of
length 2n in the ordering (B; X_1, Y_1, ...; Z).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .ambient import build_ambient
from .classify import classify
from .kahler import kahler_decompose
from .soliton import certify_soliton
from .submanifold import subalgebra


def _model_for(X):
    X = check_array(X, dtype=float, ensure_min_samples=1, ensure_min_features=4)
    if X.shape[1] % 2:
        raise ValueError(f"basis vectors must have even length 2n, got {X.shape[1]}")
    return build_ambient(X.shape[1] // 2), X


def _as_subalgebra(X):
    model, X = _model_for(X)
    return subalgebra(model, X)


class SolitonCertifier(BaseEstimator):
    """Certify ``Ric = c id + D`` for the subalgebra spanned by the rows of ``X``."""

    def __init__(self, tol: float = 1e-9):
        self.tol = tol

    def fit(self, X, y=None):
        sub = _as_subalgebra(X)
        cert = certify_soliton(sub, tol=self.tol)
        self.subalgebra_ = sub
        self.certificate_ = cert
        self.c_ = cert.c
        self.D_ = cert.D
        self.residual_ = cert.residual
        self.n_features_in_ = sub.ambient.dim
        return self

    def predict(self, Xs) -> np.ndarray:
        """Status (soliton, not-soliton, inconclusive) for each basis in ``Xs``."""
        check_is_fitted(self, "certificate_")
        return np.array([certify_soliton(_as_subalgebra(X), tol=self.tol).status for X in Xs])


class FamilyClassifier(BaseEstimator):
    """Label subalgebras by family item, NotSoliton, Inconclusive or Counterexample."""

    def __init__(self, tol: float = 1e-9, param_tol: float = 1e-8):
        self.tol = tol
        self.param_tol = param_tol

    def fit(self, Xs=None, y=None):
        self.classes_ = np.array(["NotSoliton", "Inconclusive", "item I", "item II", "item III",
                                  "item IV", "item V", "item VI", "Counterexample"])
        return self

    def classify(self, X):
        check_is_fitted(self, "classes_")
        return classify(_as_subalgebra(X), tol=self.tol, param_tol=self.param_tol)

    def predict(self, Xs) -> np.ndarray:
        return np.array([self.classify(X).label for X in Xs])


class KahlerDecomposer(TransformerMixin, BaseEstimator):
    """Constant Kähler angle decomposition of a subspace of g_alpha.

    ``fit`` takes spanning rows of the subspace; ``transform`` returns
    coordinates in the adapted basis, pieces ordered by ascending angle.
    """

    def __init__(self, cluster_tol: float = 1e-8):
        self.cluster_tol = cluster_tol

    def fit(self, X, y=None):
        model, X = _model_for(X)
        dec = kahler_decompose(model, X, cluster_tol=self.cluster_tol)
        self.decomposition_ = dec
        self.angles_ = np.array(dec.angles)
        self.dims_ = np.array([p.dim for p in dec.pieces])
        self.components_ = np.vstack([p.basis for p in dec.pieces])
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "components_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} features, got {X.shape[1]}")
        return X @ self.components_.T
