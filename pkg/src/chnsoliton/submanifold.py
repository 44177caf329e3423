"""Extrinsic geometry of Lie subalgebras of a metric Lie algebra at the identity."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._validation import check_vector, check_vectors, orthogonal_complement, orthonormal_rows
from .algebra import MetricLieAlgebra, jacobi_operator

CLOSURE_TOL = 1e-10
NORMAL_TOL = 1e-10
MINIMAL_TOL = 1e-9
FLAT_TOL = 1e-9
CONSTANT_CURVATURE_TOL = 1e-8


class ClosureError(ValueError):
    """Raised when a spanning set is not closed under the bracket."""

    def __init__(self, residual: float, tol: float):
        super().__init__(f"subspace is not a subalgebra: closure residual {residual:.3e} > {tol:.1e}")
        self.residual = residual


@dataclass(frozen=True, eq=False)
class Subalgebra:
    """A Lie subalgebra with its induced metric.

    ``basis`` holds orthonormal rows in ambient coordinates and ``normal`` an
    orthonormal completion.  ``model`` is the AmbientModel when the ambient is
    the Iwasawa algebra of CH^n (needed for anything involving J).
    """

    ambient: MetricLieAlgebra
    basis: np.ndarray
    normal: np.ndarray
    induced: MetricLieAlgebra
    closure_residual: float
    model: object = None
    label: str = ""

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def codim(self) -> int:
        return self.normal.shape[0]

    def coords(self, x) -> np.ndarray:
        return self.basis @ check_vector(x, self.ambient.dim, "x")

    def project(self, x) -> np.ndarray:
        x = check_vector(x, self.ambient.dim, "x")
        return self.basis.T @ (self.basis @ x)

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = check_vector(x, self.ambient.dim, "x")
        return float(np.linalg.norm(x - self.project(x))) <= tol * max(1.0, float(np.linalg.norm(x)))

    def rebased(self, rotation) -> "Subalgebra":
        """Same subalgebra with basis ``rotation @ basis`` (rotation orthogonal)."""
        rotation = np.asarray(rotation, dtype=float)
        return make_subalgebra(self.ambient, rotation @ self.basis, model=self.model, label=self.label)


def make_subalgebra(ambient: MetricLieAlgebra, vectors, model=None, label: str = "",
                    tol: float = CLOSURE_TOL) -> Subalgebra:
    """Orthonormalize ``vectors`` and verify closure under the ambient bracket."""
    vecs = check_vectors(vectors, ambient.dim)
    Q = orthonormal_rows(vecs)
    if Q.shape[0] == 0:
        raise ValueError("a subalgebra needs at least one nonzero vector")
    C = ambient.structure
    br = np.einsum("ai,bj,ijk->abk", Q, Q, C)
    inside = np.einsum("abk,ck->abc", br, Q)
    leak = br - np.einsum("abc,ck->abk", inside, Q)
    residual = float(np.abs(leak).max(initial=0.0))
    if residual > tol:
        raise ClosureError(residual, tol)
    inside = 0.5 * (inside - inside.transpose(1, 0, 2))
    induced = MetricLieAlgebra(inside, label=label, check=False)
    normal = orthogonal_complement(Q, ambient.dim)
    return Subalgebra(ambient=ambient, basis=Q, normal=normal, induced=induced,
                      closure_residual=residual, model=model, label=label)


def subalgebra(model, vectors, label: str = "") -> Subalgebra:
    """Subalgebra of the Iwasawa algebra of an AmbientModel."""
    return make_subalgebra(model.algebra, vectors, model=model, label=label)


def _check_normal(sub: Subalgebra, xi) -> np.ndarray:
    xi = check_vector(xi, sub.ambient.dim, "xi")
    nrm = float(np.linalg.norm(xi))
    if nrm == 0.0:
        raise ValueError("normal vector must be nonzero")
    if float(np.linalg.norm(sub.basis @ xi)) > NORMAL_TOL * nrm:
        raise ValueError("xi is not normal to the subalgebra")
    return xi


def shape_operator(sub: Subalgebra, xi) -> np.ndarray:
    """Matrix of ``X -> -(nabla_X xi)^T`` in the subalgebra basis."""
    xi = _check_normal(sub, xi)
    nab = np.einsum("ai,j,ijk->ak", sub.basis, xi, sub.ambient.christoffel)
    S = -(sub.basis @ nab.T)
    return S


def projected_jacobi(sub: Subalgebra, xi) -> np.ndarray:
    """Tangential part ``R^T_xi`` of the ambient Jacobi operator on the subalgebra."""
    xi = check_vector(xi, sub.ambient.dim, "xi")
    return sub.basis @ jacobi_operator(sub.ambient, xi) @ sub.basis.T


def shape_operators(sub: Subalgebra) -> list[np.ndarray]:
    return [shape_operator(sub, xi) for xi in sub.normal]


def mean_curvature(sub: Subalgebra) -> np.ndarray:
    """``H = sum_i tr(S_{xi_i}) xi_i`` over the orthonormal normal basis."""
    H = np.zeros(sub.ambient.dim)
    for xi in sub.normal:
        H += np.trace(shape_operator(sub, xi)) * xi
    return H


def is_minimal(sub: Subalgebra, tol: float = MINIMAL_TOL) -> bool:
    return float(np.linalg.norm(mean_curvature(sub))) <= tol


def is_totally_geodesic(sub: Subalgebra, tol: float = MINIMAL_TOL) -> bool:
    return all(float(np.linalg.norm(S)) <= tol for S in shape_operators(sub))


def gauss_ricci(sub: Subalgebra) -> np.ndarray:
    """Intrinsic Ricci operator assembled from ambient data via the Gauss equation.

    ``Ric^S = (Ric^amb)^T + S_H - sum_i (S_{xi_i}^2 + R^T_{xi_i})``
    """
    P = sub.basis
    out = P @ sub.ambient.ricci_matrix @ P.T
    for xi in sub.normal:
        S = shape_operator(sub, xi)
        out += np.trace(S) * S - S @ S - projected_jacobi(sub, xi)
    return out


def nilradical_endomorphism(sub: Subalgebra, c: float) -> np.ndarray:
    """``sum_i (S_{xi_i}^2 + R^T_{xi_i}) + c id`` over normals of ``sub`` inside n.

    Requires an AmbientModel and a subalgebra of n; the normal directions are
    the orthogonal complement of ``sub`` in n (B is excluded).
    """
    model = sub.model
    if model is None:
        raise ValueError("needs a subalgebra of the CH^n model")
    if np.abs(sub.basis[:, model.index_B]).max() > NORMAL_TOL:
        raise ValueError("subalgebra is not contained in n")
    normals = [xi for xi in orthonormal_rows(sub.normal - np.outer(sub.normal @ model.B, model.B))]
    out = c * np.eye(sub.dim)
    for xi in normals:
        S = shape_operator(sub, xi)
        out += S @ S + projected_jacobi(sub, xi)
    return out


@dataclass(frozen=True)
class CurvatureSignature:
    kind: str  # flat | constant-sectional | constant-holomorphic | other
    kappa: float | None = None
    note: str = ""

    def __str__(self) -> str:
        if self.kappa is None:
            return self.kind
        return f"{self.kind}({self.kappa:.12g})"


def _curvature_tensor(alg: MetricLieAlgebra) -> np.ndarray:
    """``T[a, b, c, d] = <R(e_a, e_b) e_c, e_d>``."""
    return alg.curvature_operators.transpose(0, 1, 3, 2)


def _holomorphic_model(omega: np.ndarray, kappa: float) -> np.ndarray:
    d = omega.shape[0]
    I = np.eye(d)
    R0 = np.einsum("bc,ad->abcd", I, I) - np.einsum("ac,bd->abcd", I, I)
    RJ = (np.einsum("bc,ad->abcd", omega, omega) - np.einsum("ac,bd->abcd", omega, omega)
          - 2.0 * np.einsum("ab,cd->abcd", omega, omega))
    return 0.25 * kappa * (R0 + RJ)


def curvature_signature_of(alg: MetricLieAlgebra, flat_tol: float = FLAT_TOL,
                           tol: float = CONSTANT_CURVATURE_TOL) -> CurvatureSignature:
    d = alg.dim
    if d < 2:
        return CurvatureSignature("flat", 0.0, note="below the supported dimension (dim >= 2)")
    T = _curvature_tensor(alg)
    if float(np.abs(T).max()) <= flat_tol:
        return CurvatureSignature("flat", 0.0)
    I = np.eye(d)
    R0 = np.einsum("bc,ad->abcd", I, I) - np.einsum("ac,bd->abcd", I, I)
    sect = np.einsum("abba->", T) / (d * (d - 1))
    if float(np.abs(T - sect * R0).max()) <= tol:
        return CurvatureSignature("constant-sectional", float(sect))
    if d % 2 == 0 and d >= 4:
        iu, ju = np.triu_indices(d, k=1)
        Q = T[iu, ju][:, iu, ju]
        Q = 0.5 * (Q + Q.T)
        w, V = np.linalg.eigh(Q)
        top = V[:, int(np.argmax(np.abs(w)))]
        omega = np.zeros((d, d))
        omega[iu, ju] = top
        omega -= omega.T
        omega *= np.sqrt(d / float(np.sum(omega**2)))
        if float(np.abs(omega @ omega + I).max()) <= 1e-6:
            # omega[a, b] = <J e_a, e_b>; holomorphic curvature of e_0
            kappa = float(np.einsum("a,b,c,d,abcd->", I[0], omega[0], omega[0], I[0], T))
            if float(np.abs(T - _holomorphic_model(omega, kappa)).max()) <= tol:
                return CurvatureSignature("constant-holomorphic", kappa)
    return CurvatureSignature("other")


def curvature_signature(sub: Subalgebra) -> CurvatureSignature:
    return curvature_signature_of(sub.induced)


@dataclass(frozen=True)
class GeometryReport:
    shape_operators: list
    normal_basis: np.ndarray
    mean_curvature: np.ndarray
    minimal: bool
    totally_geodesic: bool
    gauss_ricci: np.ndarray
    intrinsic_ricci: np.ndarray
    curvature_signature: CurvatureSignature
    notes: list = field(default_factory=list)

    @property
    def gauss_residual(self) -> float:
        return float(np.abs(self.gauss_ricci - self.intrinsic_ricci).max(initial=0.0))


def geometry_report(sub: Subalgebra) -> GeometryReport:
    shapes = shape_operators(sub)
    H = np.zeros(sub.ambient.dim)
    for xi, S in zip(sub.normal, shapes):
        H += np.trace(S) * xi
    notes = []
    if sub.dim == 1:
        notes.append("below the supported dimension (dim >= 2)")
    return GeometryReport(
        shape_operators=shapes,
        normal_basis=sub.normal.copy(),
        mean_curvature=H,
        minimal=float(np.linalg.norm(H)) <= MINIMAL_TOL,
        totally_geodesic=all(float(np.linalg.norm(S)) <= MINIMAL_TOL for S in shapes),
        gauss_ricci=gauss_ricci(sub),
        intrinsic_ricci=np.array(sub.induced.ricci_matrix),
        curvature_signature=curvature_signature(sub),
        notes=notes,
    )
