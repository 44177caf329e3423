import numpy as np
import pytest

from _identities import kahler_invariants_residual, model, random_m
from chnsoliton.kahler import decompose, kahler_angle, kahler_decompose, perp_in_complex_span

HALF = np.pi / 2


def c_rows(M, zs):
    return np.array([M.from_complex(z) for z in zs])


def test_constant_angle_plane():
    M = model(4)
    phi = np.pi / 3
    e = np.eye(3, dtype=complex)
    V = c_rows(M, [e[0], 1j * (np.cos(phi) * e[0] + np.sin(phi) * e[1])])
    dec = kahler_decompose(M, V)
    assert dec.signature == [(pytest.approx(phi), 2)]
    assert kahler_angle(M.J, V, V[0]) == pytest.approx(phi)
    assert kahler_invariants_residual(M.J, V, dec) < 1e-10


def test_mixed_signature():
    M = model(5)
    e = np.eye(4, dtype=complex)
    phi = 0.4
    V = c_rows(M, [e[0], 1j * e[0], e[1], 1j * (np.cos(phi) * e[1] + np.sin(phi) * e[2]), e[3]])
    sig = kahler_decompose(M, V).signature
    assert [d for _, d in sig] == [2, 2, 1]
    np.testing.assert_allclose([a for a, _ in sig], [0.0, phi, HALF], atol=1e-12)


def test_totally_real_and_complex_perp():
    M = model(4)
    e = np.eye(3, dtype=complex)
    real = perp_in_complex_span(M.J, c_rows(M, [e[0], e[1]]))
    assert real.angle == HALF and real.basis.shape[0] == 2
    np.testing.assert_allclose(np.abs(real.basis @ c_rows(M, [e[0], e[1]]).T).max(), 0.0, atol=1e-14)
    cplx = perp_in_complex_span(M.J, c_rows(M, [e[0], 1j * e[0]]))
    assert cplx.degenerate and cplx.basis.shape[0] == 0


def test_perp_of_angle_piece_has_same_angle():
    M = model(4)
    e = np.eye(3, dtype=complex)
    phi = 0.7
    V = c_rows(M, [e[0], 1j * (np.cos(phi) * e[0] + np.sin(phi) * e[1])])
    comp = perp_in_complex_span(M.J, V)
    assert comp.basis.shape[0] == 2
    assert kahler_decompose(M, comp.basis).signature == [(pytest.approx(phi), 2)]


def test_perp_rejects_mixed():
    M = model(4)
    e = np.eye(3, dtype=complex)
    with pytest.raises(ValueError):
        perp_in_complex_span(M.J, c_rows(M, [e[0], 1j * e[0], e[1]]))


def test_rejects_vectors_outside_alpha():
    M = model(3)
    with pytest.raises(ValueError):
        kahler_decompose(M, M.B[None, :])


def test_random_subspaces_invariants():
    rng = np.random.default_rng(4)
    M = model(6)
    for _ in range(100):
        V = random_m(rng, M, max_dim=M.alpha_dim)
        assert kahler_invariants_residual(M.J, V, kahler_decompose(M, V)) < 1e-8


def test_unitary_invariance():
    rng = np.random.default_rng(5)
    M = model(5)
    for _ in range(20):
        V = random_m(rng, M)
        W, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
        R = np.eye(M.dim)
        R[1:-1, 1:-1] = M.unitary_to_real(W)
        a = decompose(M.J, V).signature
        b = decompose(M.J, V @ R.T).signature
        assert [d for _, d in a] == [d for _, d in b]
        np.testing.assert_allclose([x for x, _ in a], [x for x, _ in b], atol=1e-8)
