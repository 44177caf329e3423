"""Constant Kähler angle decomposition of real subspaces of a Hermitian space.

For a real subspace V with orthonormal basis Q, the compressed complex
structure ``F = Q J Q^T`` is skew-symmetric and ``F^T F`` has eigenvalues
``cos^2`` of the Kähler angles.  Its eigenspaces are the constant-angle
pieces.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._validation import check_vectors, orthonormal_rows

CLUSTER_TOL = 1e-8
ALPHA_TOL = 1e-10


@dataclass(frozen=True)
class KahlerPiece:
    angle: float
    basis: np.ndarray  # orthonormal rows
    pairs: list = field(default_factory=list)  # adapted (e_{2l-1}, e_{2l}) pairs

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


@dataclass(frozen=True)
class KahlerDecomposition:
    pieces: list

    @property
    def signature(self) -> list[tuple[float, int]]:
        return [(p.angle, p.dim) for p in self.pieces]

    @property
    def angles(self) -> list[float]:
        return [p.angle for p in self.pieces]

    @property
    def dim(self) -> int:
        return sum(p.dim for p in self.pieces)

    def piece(self, angle: float, tol: float = 1e-8):
        for p in self.pieces:
            if abs(p.angle - angle) <= tol:
                return p
        return None


@dataclass(frozen=True)
class ComplexComplement:
    """``CV - V`` for a constant-angle subspace V."""

    basis: np.ndarray
    angle: float
    degenerate: bool  # True when V is complex and the complement vanishes


def _canonical_angle(cos2: float) -> float:
    return float(np.arccos(np.sqrt(min(max(cos2, 0.0), 1.0))))


def _adapted_pairs(J: np.ndarray, W: np.ndarray, F: np.ndarray, angle: float) -> list:
    """Adapted C-orthonormal pairs for a piece of angle strictly between 0 and pi/2.

    ``W`` holds the piece basis as rows and ``F`` is the compressed J on it.
    ``F / cos(angle)`` is a complex structure on the piece, so each step picks
    a unit ``e``, its partner ``f = F e / cos``, and solves
    ``f = cos J e + sin J e'`` for ``e'``.
    """
    c, s = np.cos(angle), np.sin(angle)
    k = W.shape[0]
    remaining = np.eye(k)
    pairs = []
    while remaining.shape[0] >= 2:
        a = remaining[0]
        b = F @ a / c
        e = W.T @ a
        f = W.T @ b
        e2 = (-(J @ f) - c * e) / s
        pairs.append((e, e2))
        keep = remaining - np.outer(remaining @ a, a) - np.outer(remaining @ b, b)
        remaining = orthonormal_rows(keep, rtol=1e-8)
    return pairs


def decompose(J, vectors, cluster_tol: float = CLUSTER_TOL) -> KahlerDecomposition:
    """Split ``span(vectors)`` into constant Kähler angle pieces for the complex structure J.

    Pieces are sorted by ascending angle in ``[0, pi/2]``.  Eigenvalues of
    ``F^T F`` closer than ``cluster_tol`` (after sorting) share a piece.
    """
    J = np.asarray(J, dtype=float)
    dim = J.shape[0]
    Q = orthonormal_rows(check_vectors(vectors, dim))
    if Q.shape[0] == 0:
        return KahlerDecomposition(pieces=[])
    F = Q @ J @ Q.T  # F[a, b] = <q_a, J q_b>
    G = F.T @ F
    G = 0.5 * (G + G.T)
    w, U = np.linalg.eigh(G)
    order = np.argsort(-w)  # descending cos^2, ascending angle
    w, U = w[order], U[:, order]
    groups = [[0]]
    for idx in range(1, len(w)):
        if w[groups[-1][-1]] - w[idx] > cluster_tol:
            groups.append([idx])
        else:
            groups[-1].append(idx)
    pieces = []
    for g in groups:
        cos2 = float(np.mean(w[g]))
        Ug = U[:, g]
        basis = (Q.T @ Ug).T
        pairs = []
        if cos2 >= 1 - cluster_tol:
            angle = 0.0
        elif cos2 <= cluster_tol:
            angle = float(np.pi / 2)
        else:
            angle = _canonical_angle(cos2)
            pairs = _adapted_pairs(J, basis, Ug.T @ F @ Ug, angle)
        pieces.append(KahlerPiece(angle=angle, basis=basis, pairs=pairs))
    return KahlerDecomposition(pieces=pieces)


def kahler_decompose(model, V, cluster_tol: float = CLUSTER_TOL) -> KahlerDecomposition:
    """Decompose a real subspace of g_alpha, given by ambient spanning vectors."""
    V = check_vectors(V, model.dim, "V")
    if V.shape[0] and np.abs(V[:, [model.index_B, model.index_Z]]).max() > ALPHA_TOL * max(1.0, np.abs(V).max()):
        raise ValueError("subspace is not contained in g_alpha")
    return decompose(model.J, V, cluster_tol=cluster_tol)


def kahler_angle(J, vectors, v) -> float:
    """Angle between ``J v`` and ``span(vectors)``."""
    J = np.asarray(J, dtype=float)
    Q = orthonormal_rows(check_vectors(vectors, J.shape[0]))
    v = np.asarray(v, dtype=float)
    Jv = J @ v
    nrm = np.linalg.norm(Jv)
    if nrm == 0:
        raise ValueError("zero vector has no Kähler angle")
    c = np.linalg.norm(Q @ Jv) / nrm
    return float(np.arccos(min(c, 1.0)))


def perp_in_complex_span(J, V_phi) -> ComplexComplement:
    """Return ``CV - V`` for a constant Kähler angle subspace V."""
    J = np.asarray(J, dtype=float)
    Q = orthonormal_rows(check_vectors(V_phi, J.shape[0], "V_phi"))
    dec = decompose(J, Q)
    if len(dec.pieces) != 1:
        raise ValueError(f"subspace does not have constant Kähler angle (angles {dec.angles})")
    angle = dec.pieces[0].angle
    CV = orthonormal_rows(np.vstack([Q, (J @ Q.T).T]))
    comp = CV - (CV @ Q.T) @ Q
    basis = orthonormal_rows(comp, rtol=1e-8)
    if angle == 0.0:
        return ComplexComplement(basis=np.zeros((0, J.shape[0])), angle=0.0, degenerate=True)
    return ComplexComplement(basis=basis, angle=angle, degenerate=False)
