"""Finite-dimensional metric Lie algebras in an orthonormal basis.

Structure constants are stored as ``C[i, j, k]`` with
``[e_i, e_j] = sum_k C[i, j, k] e_k``.  Endomorphisms are plain ``(d, d)``
arrays acting on column vectors, so ``D[:, j]`` is the image of ``e_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._validation import RANK_RTOL, check_square, check_vector, orthonormal_rows

ANTISYMMETRY_TOL = 1e-12
JACOBI_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class MetricLieAlgebra:
    """A Lie algebra with an inner product making the coordinate basis orthonormal."""

    structure: np.ndarray
    label: str = ""
    check: bool = True

    def __post_init__(self):
        C = np.array(self.structure, dtype=float)
        if C.ndim != 3 or not (C.shape[0] == C.shape[1] == C.shape[2]) or C.shape[0] < 1:
            raise ValueError(f"structure constants must have shape (d, d, d), got {C.shape}")
        C.setflags(write=False)
        object.__setattr__(self, "structure", C)
        if self.check:
            scale = max(1.0, float(np.abs(C).max(initial=0.0)))
            asym = float(np.abs(C + C.transpose(1, 0, 2)).max(initial=0.0))
            if asym > ANTISYMMETRY_TOL * scale:
                raise ValueError(f"structure constants are not antisymmetric (residual {asym:.3e})")
            jac = self.jacobi_residual()
            if jac > JACOBI_TOL * scale**2:
                raise ValueError(f"Jacobi identity fails (residual {jac:.3e})")

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    @classmethod
    def abelian(cls, dim: int, label: str = "") -> "MetricLieAlgebra":
        return cls(np.zeros((dim, dim, dim)), label=label or f"R^{dim}")

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict, label: str = "") -> "MetricLieAlgebra":
        """Build from ``{(i, j): {k: coeff}}``; antisymmetric images are filled in."""
        C = np.zeros((dim, dim, dim))
        for (i, j), image in brackets.items():
            for k, coeff in image.items():
                C[i, j, k] = coeff
                C[j, i, k] = -coeff
        return cls(C, label=label)

    def jacobi_residual(self) -> float:
        C = self.structure
        # [[e_i, e_j], e_k] has components sum_m C[i,j,m] C[m,k,l]
        t = np.einsum("ijm,mkl->ijkl", C, C)
        cyc = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
        return float(np.abs(cyc).max(initial=0.0))

    def scaled(self, lam: float) -> "MetricLieAlgebra":
        """The same Lie algebra with metric ``lam * g``."""
        if lam <= 0:
            raise ValueError("metric scale must be positive")
        return MetricLieAlgebra(self.structure / np.sqrt(lam), label=self.label, check=False)

    def bracket(self, x, y) -> np.ndarray:
        x = check_vector(x, self.dim, "x")
        y = check_vector(y, self.dim, "y")
        return np.einsum("i,j,ijk->k", x, y, self.structure)

    def ad(self, x) -> np.ndarray:
        x = check_vector(x, self.dim, "x")
        return np.einsum("i,ijk->kj", x, self.structure)

    @cached_property
    def christoffel(self) -> np.ndarray:
        """``G[i, j, k] = <nabla_{e_i} e_j, e_k>`` from the Koszul formula."""
        C = self.structure
        # C.transpose(2, 0, 1)[i, j, k] == C[j, k, i]
        G = 0.5 * (C - C.transpose(2, 0, 1) + C.transpose(1, 2, 0))
        G.setflags(write=False)
        return G

    @cached_property
    def connection_operators(self) -> np.ndarray:
        """``N[i]`` is the matrix of ``nabla_{e_i}``."""
        N = np.ascontiguousarray(self.christoffel.transpose(0, 2, 1))
        N.setflags(write=False)
        return N

    @cached_property
    def curvature_operators(self) -> np.ndarray:
        """``R[i, j]`` is the matrix of ``R(e_i, e_j)``."""
        N = self.connection_operators
        NN = np.einsum("iab,jbc->ijac", N, N)
        R = NN - NN.transpose(1, 0, 2, 3) - np.einsum("ijm,mab->ijab", self.structure, N)
        R.setflags(write=False)
        return R

    @cached_property
    def ricci_matrix(self) -> np.ndarray:
        R = self.curvature_operators
        Ric = np.einsum("aili->la", R)
        Ric.setflags(write=False)
        return Ric


def bracket(alg: MetricLieAlgebra, x, y) -> np.ndarray:
    return alg.bracket(x, y)


def koszul_connection(alg: MetricLieAlgebra, x, y) -> np.ndarray:
    """Levi-Civita derivative ``nabla_x y`` of left-invariant fields."""
    x = check_vector(x, alg.dim, "x")
    y = check_vector(y, alg.dim, "y")
    return np.einsum("i,j,ijk->k", x, y, alg.christoffel)


def curvature(alg: MetricLieAlgebra, x, y, z) -> np.ndarray:
    """``R(x, y) z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z``."""
    x = check_vector(x, alg.dim, "x")
    y = check_vector(y, alg.dim, "y")
    z = check_vector(z, alg.dim, "z")
    return np.einsum("i,j,ijab,b->a", x, y, alg.curvature_operators, z)


def jacobi_operator(alg: MetricLieAlgebra, xi) -> np.ndarray:
    """Matrix of ``X -> R(X, xi) xi``."""
    xi = check_vector(xi, alg.dim, "xi")
    return np.einsum("ajlk,j,k->la", alg.curvature_operators, xi, xi)


def ricci(alg: MetricLieAlgebra) -> np.ndarray:
    """(1,1)-Ricci tensor ``Ric(x) = sum_i R(x, e_i) e_i``."""
    return np.array(alg.ricci_matrix)


def _series(alg: MetricLieAlgebra, step, rtol: float) -> list[np.ndarray]:
    d = alg.dim
    atol = rtol * max(1.0, float(np.abs(alg.structure).max(initial=0.0)))
    current = np.eye(d)
    series = [current]
    for _ in range(d + 1):
        if current.shape[0] == 0:
            break
        nxt = orthonormal_rows(step(current), rtol=rtol, atol=atol)
        if nxt.shape[0] == current.shape[0]:
            break
        series.append(nxt)
        current = nxt
    return series


def lower_central_series(alg: MetricLieAlgebra, rtol: float = RANK_RTOL) -> list[np.ndarray]:
    """Terms ``g, [g, g], [g, [g, g]], ...`` as orthonormal row bases.

    The list stops at the zero subspace or when the series stabilizes.
    """
    C = alg.structure
    return _series(alg, lambda W: np.einsum("ai,bj,ijk->abk", np.eye(alg.dim), W, C).reshape(-1, alg.dim), rtol)


def derived_series(alg: MetricLieAlgebra, rtol: float = RANK_RTOL) -> list[np.ndarray]:
    C = alg.structure
    return _series(alg, lambda W: np.einsum("ai,bj,ijk->abk", W, W, C).reshape(-1, alg.dim), rtol)


def is_nilpotent(alg: MetricLieAlgebra, rtol: float = RANK_RTOL) -> bool:
    return lower_central_series(alg, rtol)[-1].shape[0] == 0


def is_solvable(alg: MetricLieAlgebra, rtol: float = RANK_RTOL) -> bool:
    return derived_series(alg, rtol)[-1].shape[0] == 0


def is_abelian(alg: MetricLieAlgebra, atol: float = 1e-10) -> bool:
    return float(np.abs(alg.structure).max(initial=0.0)) <= atol


def derivation_operator(alg: MetricLieAlgebra) -> np.ndarray:
    """Linear map ``vec(D) -> (D[e_i,e_j] - [De_i,e_j] - [e_i,De_j])_{i<j}``.

    ``vec`` is row-major flattening of the ``(d, d)`` matrix ``D``.
    """
    C = alg.structure
    d = alg.dim
    eye = np.eye(d)
    # M[i, j, k, a, b]: coefficient of D[a, b] in component k of the residual at (i, j)
    M = (
        np.einsum("ijb,ka->ijkab", C, eye)
        - np.einsum("bi,ajk->ijkab", eye, C)
        - np.einsum("bj,iak->ijkab", eye, C)
    )
    iu, ju = np.triu_indices(d, k=1)
    return M[iu, ju].reshape(-1, d * d)


def derivation_residual(alg: MetricLieAlgebra, D) -> float:
    """Largest violation of ``D[x,y] = [Dx,y] + [x,Dy]`` over basis pairs."""
    D = check_square(D, alg.dim, "D")
    if alg.dim < 2:
        return 0.0
    return float(np.abs(derivation_operator(alg) @ D.reshape(-1)).max(initial=0.0))


def derivation_space(alg: MetricLieAlgebra, rtol: float = RANK_RTOL, atol: float = 1e-10) -> list[np.ndarray]:
    """Frobenius-orthonormal basis of Der(alg).

    Null directions are singular values at most ``max(rtol * s_max, atol)``.
    """
    d = alg.dim
    if d < 2:
        return [np.eye(1)]
    M = derivation_operator(alg)
    _, s, vt = np.linalg.svd(M, full_matrices=True)
    s_max = s[0] if s.size else 0.0
    thr = max(rtol * s_max, atol)
    rank = int(np.sum(s > thr))
    return [v.reshape(d, d) for v in vt[rank:]]
