import numpy as np
import pytest

from _identities import connection_residual, model
from chnsoliton.algebra import koszul_connection, ricci
from chnsoliton.ambient import build_ambient, closed_form_connection, nilpotent_part
from chnsoliton.submanifold import curvature_signature_of


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_brackets(n):
    M = build_ambient(n)
    A, J, B, Z = M.algebra, M.J, M.B, M.Z
    rng = np.random.default_rng(n)
    for _ in range(5):
        U, V = np.zeros((2, M.dim))
        U[1:-1], V[1:-1] = rng.standard_normal((2, M.alpha_dim))
        np.testing.assert_allclose(A.bracket(B, U), 0.5 * U, atol=1e-14)
        np.testing.assert_allclose(A.bracket(U, V), ((J @ U) @ V) * Z, atol=1e-13)
    np.testing.assert_allclose(A.bracket(B, Z), Z)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_complex_structure(n):
    M = build_ambient(n)
    J = M.J
    np.testing.assert_allclose(J @ J, -np.eye(M.dim))
    np.testing.assert_allclose(J @ J.T, np.eye(M.dim))
    np.testing.assert_allclose(J @ M.B, M.Z)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_einstein(n):
    np.testing.assert_allclose(ricci(build_ambient(n).algebra), -(n + 1) / 2 * np.eye(2 * n), atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_holomorphic_curvature(n):
    sig = curvature_signature_of(build_ambient(n).algebra)
    assert sig.kind == "constant-holomorphic"
    assert sig.kappa == pytest.approx(-1.0)


def test_closed_form_on_random_vectors():
    rng = np.random.default_rng(1)
    for n in (2, 3, 6):
        M = build_ambient(n)
        for _ in range(20):
            x, y = rng.standard_normal((2, M.dim))
            np.testing.assert_allclose(koszul_connection(M.algebra, x, y), closed_form_connection(M, x, y),
                                       atol=1e-12)


def test_connection_identities():
    rng = np.random.default_rng(2)
    assert max(connection_residual(rng) for _ in range(100)) < 1e-12


def test_complex_coordinates():
    M = model(4)
    rng = np.random.default_rng(3)
    z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    v = M.from_complex(z)
    np.testing.assert_allclose(M.to_complex(v), z)
    np.testing.assert_allclose(M.from_complex(1j * z), M.J @ v, atol=1e-14)
    W, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    R = M.unitary_to_real(W)
    np.testing.assert_allclose(R @ M.J_alpha, M.J_alpha @ R, atol=1e-14)
    np.testing.assert_allclose(R.T @ R, np.eye(6), atol=1e-14)


def test_nilpotent_part_is_heisenberg():
    alg, E = nilpotent_part(build_ambient(3))
    assert alg.dim == 5 and E.shape == (6, 5)
    # Heisenberg algebra: Ric = -1/2 on g_alpha and (n-1)/2 on Z
    np.testing.assert_allclose(np.diag(alg.ricci_matrix), [-0.5] * 4 + [1.0], atol=1e-14)


def test_rejects_small_n():
    with pytest.raises(ValueError):
        build_ambient(1)
