import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from chnsoliton.ambient import build_ambient
from chnsoliton.estimators import FamilyClassifier, KahlerDecomposer, SolitonCertifier
from chnsoliton.families import FamilySpec, build_family


def heisenberg_basis():
    M = build_ambient(2)
    return np.eye(4)[[1, 2, 3]], M


def test_certifier():
    X, _ = heisenberg_basis()
    est = SolitonCertifier().fit(X)
    assert est.c_ == pytest.approx(-1.5)
    assert est.residual_ < 1e-12
    M = build_ambient(4)
    e = np.eye(3, dtype=complex)
    bad = np.array([M.B, M.from_complex(e[0]), M.from_complex(1j * (0.5 * e[0] + np.sqrt(0.75) * e[1])), M.Z])
    assert list(est.predict([X, bad])) == ["soliton", "not-soliton"]
    assert clone(est).get_params() == {"tol": 1e-9}


def test_certifier_not_fitted():
    with pytest.raises(NotFittedError):
        SolitonCertifier().predict([np.eye(4)[[1, 2, 3]]])


def test_certifier_rejects_odd_width():
    with pytest.raises(ValueError):
        SolitonCertifier().fit(np.ones((2, 5)))


def test_classifier():
    subs = [build_family(FamilySpec(i, 4, dim_mphi=2, phi=0.3)) for i in ("III", "IV")]
    clf = FamilyClassifier().fit()
    assert list(clf.predict([s.basis for s in subs])) == ["item III", "item IV"]
    assert clf.classify(subs[1].basis).parameters["phi"] == pytest.approx(0.3)


def test_kahler_decomposer():
    M = build_ambient(4)
    e = np.eye(3, dtype=complex)
    V = np.array([M.from_complex(e[0]), M.from_complex(1j * (0.5 * e[0] + np.sqrt(0.75) * e[1])),
                  M.from_complex(e[2])])
    dec = KahlerDecomposer().fit(V)
    np.testing.assert_allclose(dec.angles_, [np.pi / 3, np.pi / 2])
    np.testing.assert_array_equal(dec.dims_, [2, 1])
    coords = dec.transform(V)
    np.testing.assert_allclose(coords @ dec.components_, V, atol=1e-12)
    with pytest.raises(ValueError):
        dec.transform(np.ones((1, 4)))
