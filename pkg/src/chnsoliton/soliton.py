"""Algebraic Ricci soliton certification: ``Ric = c id + D`` with D a derivation."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from ._validation import orthonormal_rows
from .algebra import (
    MetricLieAlgebra,
    derivation_residual,
    derivation_space,
    is_nilpotent,
)
from .submanifold import Subalgebra, make_subalgebra

SOLITON_TOL = 1e-9
FALSIFICATION_FLOOR = 1e-4


def default_tol() -> float:
    """Certification threshold, overridable through ``SOLITON_TOL``."""
    raw = os.environ.get("SOLITON_TOL")
    return float(raw) if raw else SOLITON_TOL


@dataclass(frozen=True)
class SolitonCertificate:
    is_soliton: bool
    c: float
    D: np.ndarray
    residual: float
    derivation_residual: float
    is_einstein: bool
    einstein_constant: float
    unique: bool
    status: str  # soliton | not-soliton | inconclusive
    soliton_type: str | None
    ricci: np.ndarray = field(repr=False, default=None)


def _soliton_type(c: float, tol: float) -> str:
    if c < -tol:
        return "expanding"
    if c > tol:
        return "shrinking"
    return "steady"


def _as_algebra(obj) -> MetricLieAlgebra:
    return obj.induced if isinstance(obj, Subalgebra) else obj


def certify_soliton(sub, tol: float | None = None, floor: float = FALSIFICATION_FLOOR) -> SolitonCertificate:
    """Least-squares fit of ``Ric`` by ``c id + sum_k a_k D_k`` over a derivation basis.

    Accepts a Subalgebra or a MetricLieAlgebra.  When ``id`` lies in the span
    of the derivations the minimum-norm solution is returned with
    ``unique=False``.
    """
    tol = default_tol() if tol is None else tol
    alg = _as_algebra(sub)
    d = alg.dim
    Ric = np.array(alg.ricci_matrix)
    ders = derivation_space(alg)
    A = np.column_stack([np.eye(d).reshape(-1)] + [Dk.reshape(-1) for Dk in ders])
    coef, _, rank, _ = np.linalg.lstsq(A, Ric.reshape(-1), rcond=1e-10)
    c = float(coef[0])
    D = sum((a * Dk for a, Dk in zip(coef[1:], ders)), np.zeros((d, d)))
    residual = float(np.linalg.norm(Ric - c * np.eye(d) - D))
    der_res = derivation_residual(alg, D)
    ec = float(np.trace(Ric)) / d
    is_einstein = float(np.linalg.norm(Ric - ec * np.eye(d))) <= tol
    is_soliton = residual <= tol and der_res <= tol
    if is_soliton:
        status = "soliton"
    elif residual < floor:
        status = "inconclusive"
    else:
        status = "not-soliton"
    unique = rank == A.shape[1]
    soliton_type = None
    if is_einstein:
        soliton_type = _soliton_type(ec, tol)
    elif is_soliton and unique:
        soliton_type = _soliton_type(c, tol)
    return SolitonCertificate(
        is_soliton=is_soliton or is_einstein,
        c=c,
        D=D,
        residual=residual,
        derivation_residual=der_res,
        is_einstein=is_einstein,
        einstein_constant=ec,
        unique=bool(unique),
        status="soliton" if is_einstein else status,
        soliton_type=soliton_type,
        ricci=Ric,
    )


def einstein_check(sub, tol: float | None = None) -> tuple[bool, float]:
    tol = default_tol() if tol is None else tol
    alg = _as_algebra(sub)
    Ric = alg.ricci_matrix
    c = float(np.trace(Ric)) / alg.dim
    return float(np.linalg.norm(Ric - c * np.eye(alg.dim))) <= tol, c


def nilsoliton_constant(phi: float, dim_mphi: int) -> float:
    """Defining constant ``-cos^2(phi) (dim m_phi + 4) / 4`` of a non-abelian nilradical."""
    if not 0.0 <= phi < np.pi / 2 - 1e-12:
        raise ValueError("phi must lie in [0, pi/2)")
    if dim_mphi < 1:
        raise ValueError("dim m_phi must be positive")
    if phi > 1e-12 and dim_mphi % 2:
        raise ValueError("a constant angle subspace with angle in (0, pi/2) has even dimension")
    return -0.25 * np.cos(phi) ** 2 * (dim_mphi + 4)


def derivation_shift_constant(phi: float, dim_normal_alpha: int, dims_by_angle: dict) -> float:
    """Value of ``c`` making the nilradical endomorphism a derivation.

    ``dim_normal_alpha`` is ``dim(g_alpha - m)`` and ``dims_by_angle`` maps
    each Kähler angle of m to the dimension of its piece.
    """
    total = sum(dim * np.sin(psi) ** 2 for psi, dim in dims_by_angle.items())
    return 0.25 * (dim_normal_alpha + total) + np.sin(phi) ** 2


@dataclass(frozen=True)
class LauretReport:
    nilsoliton: bool
    b_abelian: bool
    adjoint_derivation: bool
    normalization: bool
    c_bar: float
    nilradical_certificate: SolitonCertificate
    adjoint_residuals: list
    normalization_residuals: list
    b_basis: np.ndarray
    nilradical: Subalgebra

    @property
    def all_hold(self) -> bool:
        return self.nilsoliton and self.b_abelian and self.adjoint_derivation and self.normalization


class SelfNilradicalError(ValueError):
    """The subalgebra is nilpotent, so it is its own nilradical."""


def nilradical_split(sub: Subalgebra) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal rows of ``l = s cap n`` and of its complement ``b`` in s."""
    model = sub.model
    if model is None:
        raise ValueError("needs a subalgebra of the CH^n model")
    a_part = sub.basis[:, model.index_B]
    if float(np.abs(a_part).max()) <= 1e-12:
        return sub.basis.copy(), np.zeros((0, sub.ambient.dim))
    # coefficients orthogonal to the B-components span s cap n
    null = orthonormal_rows(np.eye(sub.dim) - np.outer(a_part, a_part) / float(a_part @ a_part))
    l_rows = orthonormal_rows(null @ sub.basis)
    b = a_part @ sub.basis
    b = b - l_rows.T @ (l_rows @ b)
    b /= np.linalg.norm(b)
    return l_rows, b[None, :]


def lauret_conditions(sub: Subalgebra, tol: float | None = None) -> LauretReport:
    """Check the four extension conditions for ``s = b + l`` with l the nilradical."""
    tol = default_tol() if tol is None else tol
    if is_nilpotent(sub.induced):
        raise SelfNilradicalError("nilpotent subalgebra: it is its own nilradical (self-nilradical)")
    l_rows, b_rows = nilradical_split(sub)
    nil = make_subalgebra(sub.ambient, l_rows, model=sub.model)
    cert_l = certify_soliton(nil, tol=tol)
    b_coords = b_rows @ sub.basis.T  # b in the subalgebra basis
    alg = sub.induced
    ads = [alg.ad(x) for x in b_coords]
    b_abelian = all(
        float(np.abs(alg.bracket(x, y)).max()) <= tol for i, x in enumerate(b_coords) for y in b_coords[i + 1:]
    )
    adj_res = [derivation_residual(alg, ad.T) for ad in ads]
    traces = [float(np.trace((ad + ad.T) @ (ad + ad.T))) for ad in ads]
    if cert_l.unique:
        c_bar = cert_l.c
    else:
        # any negative constant works for an abelian nilradical; take the one fitting b
        c_bar = -traces[0] / 4.0 if traces and traces[0] > 0 else cert_l.c
    norm_res = []
    for x, tr in zip(b_coords, traces):
        if c_bar == 0:
            norm_res.append(float("inf"))
        else:
            norm_res.append(abs(float(x @ x) + tr / (4.0 * c_bar)))
    return LauretReport(
        nilsoliton=cert_l.is_soliton,
        b_abelian=b_abelian,
        adjoint_derivation=all(r <= tol for r in adj_res),
        normalization=all(r <= tol for r in norm_res),
        c_bar=float(c_bar),
        nilradical_certificate=cert_l,
        adjoint_residuals=adj_res,
        normalization_residuals=norm_res,
        b_basis=b_rows,
        nilradical=nil,
    )
