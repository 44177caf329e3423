"""Classify soliton subalgebras of a + n into the families, and related constructions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._validation import orthonormal_rows
from .ambient import AmbientModel, build_ambient, nilpotent_part
from .families import FamilySpec, item_vi_u_squared
from .kahler import decompose
from .soliton import SolitonCertificate, certify_soliton, nilradical_split
from .submanifold import Subalgebra, make_subalgebra, shape_operator, subalgebra

PARAM_TOL = 1e-8
KINDS = ("family", "not-soliton", "inconclusive", "counterexample")


@dataclass
class Classification:
    kind: str
    item: str | None
    nilradical_family: str | None
    parameters: dict
    certificate: SolitonCertificate
    signature: list  # (angle, dim) of s as a subspace of a + n
    also_matches: list = field(default_factory=list)
    reason: str = ""

    @property
    def label(self) -> str:
        if self.kind == "family":
            return f"item {self.item}"
        return {"not-soliton": "NotSoliton", "inconclusive": "Inconclusive",
                "counterexample": "Counterexample"}[self.kind]


@dataclass(frozen=True)
class NilradicalData:
    """Orthogonal pieces of a subalgebra l of n: ``l = m + R(V + tZ)`` or ``m + RZ``."""

    rows: np.ndarray
    m: np.ndarray  # rows spanning l cap g_alpha
    V: np.ndarray  # unit or zero, ambient
    t: float
    abelian: bool
    contains_z: bool


def parse_nilradical(model: AmbientModel, l_rows: np.ndarray, tol: float = PARAM_TOL) -> NilradicalData:
    iz = model.index_Z
    z = l_rows[:, iz]
    if float(np.linalg.norm(z)) <= tol:
        m, w = l_rows, None
    else:
        w = (z / np.linalg.norm(z)) @ l_rows
        rest = l_rows - np.outer(l_rows @ w, w)
        m = orthonormal_rows(rest, rtol=1e-8)
    V, t = np.zeros(model.dim), 0.0
    contains_z = False
    if w is not None:
        Vw = w.copy()
        Vw[iz] = 0.0
        nv = float(np.linalg.norm(Vw))
        if nv <= tol:
            t, contains_z = 1.0, True
        else:
            V, t = Vw / nv, float(w[iz]) / nv
            if t < 0:
                V, t = -V, -t
    gram = np.einsum("ai,bj,ijk->abk", l_rows, l_rows, model.algebra.structure)
    return NilradicalData(rows=l_rows, m=m, V=V, t=t, abelian=float(np.abs(gram).max(initial=0.0)) <= tol,
                          contains_z=contains_z)


def _c_orthogonal(model: AmbientModel, rows: np.ndarray, u: np.ndarray, tol: float) -> bool:
    if rows.shape[0] == 0 or not np.any(u):
        return True
    return float(np.abs(rows @ u).max()) <= tol and float(np.abs(rows @ (model.J @ u)).max()) <= tol


def s_signature(sub: Subalgebra) -> list[tuple[float, int]]:
    return decompose(sub.model.J, sub.basis).signature


def classify(sub: Subalgebra, tol: float | None = None, param_tol: float = PARAM_TOL) -> Classification:
    """Certify, split off the nilradical, and match against the six items."""
    model = sub.model
    if model is None:
        raise ValueError("needs a subalgebra of the CH^n model")
    if sub.dim < 2:
        raise ValueError("classification applies to subalgebras of dimension >= 2")
    cert = certify_soliton(sub, tol=tol)
    sig = s_signature(sub)
    base = dict(certificate=cert, signature=sig)
    if not cert.is_soliton:
        return Classification(kind=cert.status, item=None, nilradical_family=None, parameters={},
                              reason=f"residual {cert.residual:.3e}", **base)
    l_rows, b_rows = nilradical_split(sub)
    nil = parse_nilradical(model, l_rows, param_tol)
    fam = "N1" if nil.abelian else "N2"
    params = {"n": model.n, "dim_mphi": 0, "phi": 0.0, "dim_mpi2": 0, "u_norm": 0.0,
              "v_norm": float(np.linalg.norm(nil.V)), "t": nil.t, "x": 0.0}
    dec = decompose(model.J, nil.m) if nil.m.shape[0] else None
    angles = dec.signature if dec else []

    def fail(reason):
        return Classification(kind="counterexample", item=None, nilradical_family=fam, parameters=params,
                              reason=reason, **base)

    half = float(np.pi / 2)
    non_real = [(a, d) for a, d in angles if abs(a - half) > param_tol]
    dim_pi2 = sum(d for a, d in angles if abs(a - half) <= param_tol)
    if nil.abelian:
        if non_real:
            return fail("abelian nilradical with a non totally real part")
        params["dim_mpi2"] = dim_pi2
    else:
        if not nil.contains_z:
            return fail("non-abelian nilradical without g_2alpha")
        if len(non_real) != 1:
            return fail(f"nilradical Kähler angles {[a for a, _ in angles]} have more than one angle below pi/2")
        params["phi"], params["dim_mphi"] = float(non_real[0][0]), int(non_real[0][1])
        params["dim_mpi2"] = dim_pi2
        params["v_norm"], params["t"] = 0.0, 0.0

    if b_rows.shape[0] == 0:
        item = "I" if nil.abelian else "IV"
        return Classification(kind="family", item=item, nilradical_family=fam, parameters=params, **base)

    b = b_rows[0]
    T = b / b[model.index_B]
    _, U, x = model.split(T)
    params["u_norm"], params["x"] = float(np.linalg.norm(U)), float(x)
    if not _c_orthogonal(model, nil.m, U, param_tol):
        return fail("U is not C-orthogonal to the nilradical")
    also = []
    if nil.abelian:
        if params["v_norm"] > 0:
            if abs(float((model.J @ U) @ nil.V) + nil.t / 2.0) > param_tol:
                return fail("<JU, V> != -t/2")
            item = "II"
        elif nil.contains_z and nil.m.shape[0]:
            item = "V"
            params["t"] = 0.0  # g_2alpha is part of item V, not a V + tZ parameter
        else:
            item = "II"
            if nil.contains_z and params["u_norm"] <= param_tol:
                also.append("III")
    else:
        phi, dphi = params["phi"], params["dim_mphi"]
        u = params["u_norm"]
        if dim_pi2 == 0:
            if abs(u - np.tan(phi)) > param_tol * max(1.0, np.tan(phi)):
                return fail(f"|U| = {u:.12g} but tan(phi) = {np.tan(phi):.12g}")
            item = "III"
        else:
            want = item_vi_u_squared(dphi, dim_pi2, phi)
            if abs(u * u - want) > param_tol * max(1.0, want):
                return fail(f"|U|^2 = {u * u:.12g} but the item VI condition needs {want:.12g}")
            item = "VI"
    return Classification(kind="family", item=item, nilradical_family=fam, parameters=params,
                          also_matches=also, **base)


def spec_parameters(spec: FamilySpec) -> dict:
    """The parameters ``classify`` should recover from ``build_family(spec)``."""
    return {"n": spec.n, "dim_mphi": spec.dim_mphi, "phi": spec.phi if spec.dim_mphi else 0.0,
            "dim_mpi2": spec.dim_mpi2, "u_norm": spec.u, "v_norm": spec.v_norm, "t": spec.t, "x": spec.x}


def parameters_match(a: dict, b: dict, tol: float = PARAM_TOL) -> bool:
    return all(abs(float(a[k]) - float(b[k])) <= tol for k in b)


# --- nilradicals inside n ------------------------------------------------------------


def nilradical_in_n(sub: Subalgebra) -> Subalgebra:
    """The nilradical of ``sub`` as a subalgebra of the metric Lie algebra n."""
    l_rows, _ = nilradical_split(sub)
    n_alg, E = nilpotent_part(sub.model)
    return make_subalgebra(n_alg, l_rows @ E, label="nilradical in n")


def trace_in_n(sub: Subalgebra, xi) -> float:
    """``tr S_xi`` of the nilradical of ``sub`` inside n, for an ambient normal ``xi`` in n."""
    nl = nilradical_in_n(sub)
    _, E = nilpotent_part(sub.model)
    return float(np.trace(shape_operator(nl, np.asarray(xi, dtype=float) @ E)))


def embed(sub: Subalgebra, n: int) -> Subalgebra:
    """Image of ``sub`` under the inclusion of CH^m into CH^n (first coordinates of g_alpha)."""
    m = sub.model.n
    if n < m:
        raise ValueError("target dimension is smaller than the source")
    big = build_ambient(n)
    rows = np.zeros((sub.dim, big.dim))
    rows[:, 0] = sub.basis[:, 0]
    rows[:, 1:2 * m - 1] = sub.basis[:, 1:-1]
    rows[:, -1] = sub.basis[:, -1]
    return subalgebra(big, rows, label=sub.label)


def soliton_extension(sub: Subalgebra, param_tol: float = PARAM_TOL) -> Subalgebra | None:
    """A non-nilpotent soliton ``R(B + U + xZ) + l`` whose nilradical is the soliton ``l = sub``.

    Returns None when g_alpha has no room for the required U.
    """
    model = sub.model
    if np.abs(sub.basis[:, model.index_B]).max() > param_tol:
        raise ValueError("subalgebra is not contained in n")
    nil = parse_nilradical(model, sub.basis, param_tol)
    if nil.abelian:
        U = np.zeros(model.dim)
        if np.any(nil.V):
            U = 0.5 * nil.t * (model.J @ nil.V)  # <JU, V> = -t/2
        T = model.B + U
        return subalgebra(model, np.vstack([T, sub.basis]), label="extension")
    dec = decompose(model.J, nil.m)
    half = float(np.pi / 2)
    phi = min(dec.angles)
    dphi = sum(p.dim for p in dec.pieces if abs(p.angle - half) > param_tol)
    dpi2 = sum(p.dim for p in dec.pieces if abs(p.angle - half) <= param_tol)
    u = np.tan(phi) if dpi2 == 0 else np.sqrt(item_vi_u_squared(dphi, dpi2, phi))
    U = np.zeros(model.dim)
    if u > param_tol:
        cm = orthonormal_rows(np.vstack([nil.m, (model.J @ nil.m.T).T]))
        alpha = np.eye(model.dim)[1:-1]
        free = orthonormal_rows(alpha - (alpha @ cm.T) @ cm, rtol=1e-8)
        if free.shape[0] == 0:
            return None
        U = u * free[0]
    return subalgebra(model, np.vstack([model.B + U, sub.basis]), label="extension")
