"""Constructors for the Ricci soliton subalgebras of the Iwasawa algebra of CH^n.

Items I-VI follow the classification table; N1 and N2 are the two nilradical
families (abelian, and m_phi + m_pi/2 + g_2alpha), which coincide with items I
and IV as subalgebras of n.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace

import numpy as np

from .ambient import AmbientModel, build_ambient
from .submanifold import Subalgebra, subalgebra

ITEMS = ("I", "II", "III", "IV", "V", "VI")
NILRADICAL_FAMILIES = {"N1": "I", "N2": "IV"}
_ROMAN = {str(i + 1): r for i, r in enumerate(ITEMS)}
ZERO_TOL = 1e-12
EINSTEIN_ITEMS = {"I": True, "II": True, "III": True, "IV": False, "V": False, "VI": False}


class InfeasibleSpecError(ValueError):
    """A family specification violates a table condition or does not fit in g_alpha."""

    def __init__(self, condition: str, detail: str = ""):
        msg = f"violated condition: {condition}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.condition = condition


def normalize_item(item) -> str:
    key = str(item).strip().upper()
    if key in _ROMAN:
        return _ROMAN[key]
    if key in ITEMS or key in NILRADICAL_FAMILIES:
        return key
    raise ValueError(f"unknown family item {item!r}")


def item_vi_u_squared(dim_mphi: int, dim_mpi2: int, phi: float) -> float:
    return (dim_mphi + dim_mpi2 + 4) / ((dim_mphi + 4) * np.cos(phi) ** 2) - 1.0


@dataclass(frozen=True)
class FamilySpec:
    """Parameters of one family instance.

    ``V + tZ`` only matters up to scale, so specs are stored canonically:
    ``|V| = 1`` and ``t >= 0`` when V is nonzero, ``t = 1`` when only Z is present, and a
    V with ``t = 0`` is folded into m_pi/2.  ``u_norm=None`` means "derive
    from the table" for items III and VI and zero otherwise.
    """

    item: str
    n: int
    dim_mphi: int = 0
    phi: float = 0.0
    dim_mpi2: int = 0
    u_norm: float | None = None
    v_norm: float = 0.0
    t: float = 0.0
    x: float = 0.0
    seed: int | None = None

    def __post_init__(self):
        item = normalize_item(self.item)
        object.__setattr__(self, "item", item)
        if int(self.n) != self.n or self.n < 2:
            raise InfeasibleSpecError("n >= 2", f"n = {self.n}")
        object.__setattr__(self, "n", int(self.n))
        v, t = float(self.v_norm), float(self.t)
        if v < 0:
            raise InfeasibleSpecError("|V| >= 0")
        main = self.main_item
        if main in ("I", "II"):
            dim_mpi2 = int(self.dim_mpi2)
            if v > ZERO_TOL and abs(t) <= ZERO_TOL:
                dim_mpi2, v, t = dim_mpi2 + 1, 0.0, 0.0
            elif v > ZERO_TOL:
                v, t = 1.0, abs(t) / v  # (V, t) and (-V, -t) span the same line
            elif abs(t) > ZERO_TOL:
                v, t = 0.0, 1.0
            else:
                v, t = 0.0, 0.0
            object.__setattr__(self, "dim_mpi2", dim_mpi2)
        object.__setattr__(self, "v_norm", v)
        object.__setattr__(self, "t", t)
        self._validate()

    @property
    def main_item(self) -> str:
        return NILRADICAL_FAMILIES.get(self.item, self.item)

    @property
    def u(self) -> float:
        """|U| after applying the table constraints."""
        main = self.main_item
        if main == "III":
            return float(np.tan(self.phi))
        if main == "VI":
            return float(np.sqrt(item_vi_u_squared(self.dim_mphi, self.dim_mpi2, self.phi)))
        if main in ("I", "IV"):
            return 0.0
        return float(self.u_norm or 0.0)

    @property
    def item_ii_u_components(self) -> tuple[float, float, float]:
        """``(<U,V>, -<JU,V>, rest)`` for item II with V != 0 and |V| = 1."""
        a = -self.x * self.t
        b = self.t / 2.0
        rest2 = self.u**2 - a * a - b * b
        return a, b, float(np.sqrt(max(rest2, 0.0)))

    def complex_slots(self) -> int:
        """Complex dimensions of g_alpha used by the pieces, placed C-orthogonally."""
        main = self.main_item
        slots = self.dim_mpi2
        if self.dim_mphi:
            slots += self.dim_mphi // 2 if self.phi <= ZERO_TOL else self.dim_mphi
        if main == "II" and self.v_norm > 0:
            slots += 1
            if self.item_ii_u_components[2] > ZERO_TOL:
                slots += 1
        elif main in ("I",) and self.v_norm > 0:
            slots += 1
        elif self.u > ZERO_TOL:
            slots += 1
        return slots

    @property
    def dim(self) -> int:
        main = self.main_item
        d = self.dim_mphi + self.dim_mpi2
        if main in ("I", "II"):
            d += 1 if (self.v_norm > 0 or self.t != 0) else 0
        else:
            d += 1  # g_2alpha
        if main in ("II", "III", "V", "VI"):
            d += 1
        return d

    def _validate(self):
        main = self.main_item
        phi, dphi, dpi2 = float(self.phi), int(self.dim_mphi), int(self.dim_mpi2)
        if dphi < 0 or dpi2 < 0:
            raise InfeasibleSpecError("dimensions are non-negative")
        object.__setattr__(self, "dim_mphi", dphi)
        object.__setattr__(self, "dim_mpi2", dpi2)
        object.__setattr__(self, "phi", phi)
        has_u = self.u_norm is not None and abs(self.u_norm) > ZERO_TOL
        if self.u_norm is not None and self.u_norm < 0:
            raise InfeasibleSpecError("|U| >= 0")
        if main in ("I", "II", "V"):
            if dphi:
                raise InfeasibleSpecError(f"item {main} has no m_phi piece")
        else:
            if dphi < 2 or dphi % 2:
                raise InfeasibleSpecError("m_phi is a non-zero subspace of constant Kähler angle phi in [0, pi/2)",
                                          "its dimension must be even and positive")
            if not 0.0 <= phi < np.pi / 2:
                raise InfeasibleSpecError("phi in [0, pi/2)")
            if self.v_norm or self.t:
                raise InfeasibleSpecError(f"item {main} has no V + tZ piece")
        if main in ("I", "IV") and (has_u or self.x):
            raise InfeasibleSpecError(f"item {main} is nilpotent (no B + U + xZ)")
        if main in ("III", "IV", "V", "VI") and self.x:
            raise InfeasibleSpecError("R(B + U) is orthogonal to g_2alpha, so x = 0")
        if main == "I" and self.dim < 2:
            raise InfeasibleSpecError("dim m_pi/2 >= 2 - dim R(V + tZ)")
        if main == "II":
            if self.v_norm > 0:
                a, b, _ = self.item_ii_u_components
                if self.u**2 < a * a + b * b - 1e-12:
                    raise InfeasibleSpecError(
                        "If V != 0, then <JU,V> = -t/2",
                        f"with T orthogonal to V + tZ this needs |U| >= {np.hypot(a, b):.12g}",
                    )
            elif self.t:
                if dpi2:
                    raise InfeasibleSpecError("If V = 0, either t = 0 or m_pi/2 = 0")
                if self.x:
                    raise InfeasibleSpecError("R(B + U + xZ) is orthogonal to g_2alpha, so x = 0")
            elif dpi2 < 1:
                raise InfeasibleSpecError("dim s >= 2", "item II with V = 0 and t = 0 needs m_pi/2 != 0")
        if main == "III":
            if dpi2:
                raise InfeasibleSpecError("item III has no m_pi/2 piece")
            if self.u_norm is not None and abs(self.u_norm - np.tan(phi)) > 1e-9:
                raise InfeasibleSpecError("|U| = tan(phi)", f"got |U| = {self.u_norm}")
        if main in ("V", "VI") and dpi2 < 1:
            raise InfeasibleSpecError("m_pi/2 != 0")
        if main == "VI" and self.u_norm is not None:
            want = np.sqrt(item_vi_u_squared(dphi, dpi2, phi))
            if abs(self.u_norm - want) > 1e-9:
                raise InfeasibleSpecError(
                    "|U|^2 = (dim m_phi + dim m_pi/2 + 4) / ((dim m_phi + 4) cos^2 phi) - 1",
                    f"got |U| = {self.u_norm}, expected {want:.12g}",
                )
        slots = self.complex_slots()
        if slots > self.n - 1:
            raise InfeasibleSpecError(
                "pieces fit C-orthogonally in g_alpha",
                f"need {slots} complex dimensions, g_alpha of CH^{self.n} has {self.n - 1} (real dim {2 * self.n - 2})",
            )

    def as_dict(self) -> dict:
        out = asdict(self)
        out["u_norm"] = self.u
        return out


def haar_unitary(m: int, rng: np.random.Generator) -> np.ndarray:
    G = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2.0)
    Q, R = np.linalg.qr(G)
    ph = np.diag(R) / np.abs(np.diag(R))
    return Q * ph[None, :]


@dataclass(frozen=True)
class FamilyPieces:
    """Ambient vectors of each piece of a family instance (before orthonormalization)."""

    m_phi: np.ndarray
    m_pi2: np.ndarray
    U: np.ndarray
    V: np.ndarray
    T: np.ndarray | None
    extra: np.ndarray  # V + tZ or Z rows


def family_pieces(spec: FamilySpec, model: AmbientModel | None = None, u_scale: float = 1.0) -> FamilyPieces:
    model = model or build_ambient(spec.n)
    if model.n != spec.n:
        raise ValueError("model dimension does not match spec.n")
    m = spec.n - 1
    eye = np.eye(m, dtype=complex)
    W = eye if spec.seed is None else haar_unitary(m, np.random.default_rng(spec.seed))
    slot = iter(range(m))
    main = spec.main_item

    def amb(z):
        return model.from_complex(W @ z)

    m_phi = []
    if spec.dim_mphi:
        if spec.phi <= ZERO_TOL:
            for _ in range(spec.dim_mphi // 2):
                j = next(slot)
                m_phi += [amb(eye[j]), amb(1j * eye[j])]
        else:
            c, s = np.cos(spec.phi), np.sin(spec.phi)
            for _ in range(spec.dim_mphi // 2):
                a, b = next(slot), next(slot)
                m_phi += [amb(eye[a]), amb(c * 1j * eye[a] + s * 1j * eye[b])]
    m_pi2 = [amb(eye[next(slot)]) for _ in range(spec.dim_mpi2)]

    U = np.zeros(model.dim)
    V = np.zeros(model.dim)
    extra = []
    if main in ("I", "II"):
        if spec.v_norm > 0:
            a = next(slot)
            V = amb(eye[a])
            extra.append(V + spec.t * model.Z)
            if main == "II":
                p, q, r = spec.item_ii_u_components
                zu = p * eye[a] + q * 1j * eye[a]
                if r > ZERO_TOL:
                    zu = zu + r * eye[next(slot)]
                U = amb(zu)
        elif spec.t:
            extra.append(model.Z.copy())
        if main == "II" and spec.v_norm == 0 and spec.u > ZERO_TOL:
            U = spec.u * amb(eye[next(slot)])
    else:
        extra.append(model.Z.copy())
        if spec.u > ZERO_TOL:
            U = spec.u * amb(eye[next(slot)])
    U = u_scale * U
    T = None
    if main in ("II", "III", "V", "VI"):
        T = model.B + U + spec.x * model.Z
    rows = lambda L: np.array(L) if L else np.zeros((0, model.dim))  # noqa: E731
    return FamilyPieces(m_phi=rows(m_phi), m_pi2=rows(m_pi2), U=U, V=V, T=T, extra=rows(extra))


def build_family(spec: FamilySpec, model: AmbientModel | None = None, u_scale: float = 1.0) -> Subalgebra:
    """Concrete subalgebra for a family spec; ``u_scale`` rescales U (for perturbation studies)."""
    model = model or build_ambient(spec.n)
    pcs = family_pieces(spec, model, u_scale=u_scale)
    vecs = [pcs.m_phi, pcs.m_pi2, pcs.extra]
    if pcs.T is not None:
        vecs.insert(0, pcs.T[None, :])
    return subalgebra(model, np.vstack(vecs), label=f"item {spec.item}")


def random_spec(item: str, rng: np.random.Generator, n_values=(2, 3, 4, 5, 6), max_tries: int = 1000) -> FamilySpec:
    """A random feasible spec of the given item with n drawn from ``n_values``."""
    item = normalize_item(item)
    main = NILRADICAL_FAMILIES.get(item, item)
    for _ in range(max_tries):
        n = int(rng.choice(n_values))
        m = n - 1
        kw: dict = {"item": item, "n": n, "seed": int(rng.integers(2**31))}
        if main in ("III", "IV", "VI"):
            phi = 0.0 if rng.random() < 0.3 else float(rng.uniform(0.05, 1.45))
            kw["phi"] = phi
            per = 1 if phi == 0.0 else 2
            kmax = m // per
            if kmax < 1:
                continue
            kw["dim_mphi"] = 2 * int(rng.integers(1, kmax + 1))
        if main in ("V", "VI"):
            kw["dim_mpi2"] = int(rng.integers(1, m + 1))
        elif main == "IV":
            kw["dim_mpi2"] = int(rng.integers(0, m + 1))
        if main in ("I", "II"):
            kw["dim_mpi2"] = int(rng.integers(0, m + 1))
            mode = rng.integers(3)
            if mode == 1:
                kw["v_norm"] = 1.0
                kw["t"] = float(rng.uniform(-2, 2))
            elif mode == 2:
                kw["t"] = 1.0
        if main == "II":
            if kw.get("t") == 1.0 and not kw.get("v_norm"):
                kw["dim_mpi2"] = 0
            else:
                kw["x"] = 0.0 if rng.random() < 0.3 else float(rng.uniform(-1.5, 1.5))
            base = 0.0
            if kw.get("v_norm"):
                base = float(np.hypot(kw["x"] * kw["t"], kw["t"] / 2))
            kw["u_norm"] = base if rng.random() < 0.3 else base + float(rng.uniform(0.0, 2.0))
        if main == "V":
            kw["u_norm"] = 0.0 if rng.random() < 0.2 else float(rng.uniform(0.1, 2.0))
        try:
            return FamilySpec(**kw)
        except InfeasibleSpecError:
            continue
    raise RuntimeError(f"no feasible spec for item {item} with n in {n_values}")


def with_seed(spec: FamilySpec, seed: int | None) -> FamilySpec:
    return replace(spec, seed=seed)
