"""Randomized falsification harness: sample subalgebras, certify, classify, tally."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._io import dumps, to_plain
from ._validation import orthonormal_rows
from .ambient import AmbientModel, build_ambient
from .classify import classify, nilradical_in_n, parameters_match, spec_parameters
from .families import ITEMS, build_family, haar_unitary, item_vi_u_squared, random_spec
from .kahler import decompose
from .submanifold import ClosureError, Subalgebra, curvature_signature, mean_curvature, subalgebra

PROFILES = ("mixed", "nilpotent", "solvable")
TALLY_KEYS = ("NotSoliton", "Inconclusive") + tuple(f"item {i}" for i in ITEMS) + ("Counterexample",)
_M_SHAPES = ("empty", "totally_real", "complex", "angle", "mixed", "generic")
_M_WEIGHTS = (0.1, 0.2, 0.15, 0.2, 0.2, 0.15)
MINIMAL_TOL = 1e-9


def _random_angle(rng) -> float:
    r = rng.random()
    if r < 0.5:
        return float(rng.choice([np.pi / 6, np.pi / 4, np.pi / 3]))
    return float(rng.uniform(0.05, 1.5))


def _random_m(rng: np.random.Generator, mc: int) -> tuple[list, str]:
    """Complex vectors whose real span is a random subspace of C^mc, and its shape name."""
    shape = str(rng.choice(_M_SHAPES, p=_M_WEIGHTS))
    eye = np.eye(mc, dtype=complex)
    vecs: list = []
    free = list(range(mc))

    def piece(kind):
        if kind == "totally_real" and free:
            vecs.append(eye[free.pop(0)])
        elif kind == "complex" and free:
            j = free.pop(0)
            vecs.extend([eye[j], 1j * eye[j]])
        elif kind == "angle" and len(free) >= 2:
            a, b = free.pop(0), free.pop(0)
            phi = _random_angle(rng)
            vecs.extend([eye[a], 1j * (np.cos(phi) * eye[a] + np.sin(phi) * eye[b])])

    if shape in ("totally_real", "complex", "angle"):
        for _ in range(int(rng.integers(1, mc + 1))):
            piece(shape)
    elif shape == "mixed":
        for _ in range(int(rng.integers(2, 2 * mc + 1))):
            piece(str(rng.choice(["totally_real", "complex", "angle"])))
    elif shape == "generic":
        r = int(rng.integers(1, 2 * mc + 1))
        vecs = list(rng.standard_normal((r, mc)) + 1j * rng.standard_normal((r, mc)))
    return vecs, shape


def _real_rows(model: AmbientModel, zs, W) -> np.ndarray:
    if not len(zs):
        return np.zeros((0, model.dim))
    return np.array([model.from_complex(W @ z) for z in zs])


def _complement(rows: np.ndarray, pool: np.ndarray) -> np.ndarray:
    """Orthonormal basis of ``span(pool)`` minus ``span(rows)``."""
    Q = orthonormal_rows(rows) if rows.shape[0] else rows
    P = pool - (pool @ Q.T) @ Q if Q.shape[0] else pool
    return orthonormal_rows(P, rtol=1e-8)


def _unit(rng, rows: np.ndarray) -> np.ndarray | None:
    if rows.shape[0] == 0:
        return None
    v = rng.standard_normal(rows.shape[0]) @ rows
    return v / np.linalg.norm(v)


def _try(model, vectors) -> Subalgebra | None:
    try:
        return subalgebra(model, vectors)
    except (ClosureError, ValueError):
        return None


def _nilpotent_part(model: AmbientModel, rng) -> tuple[list, dict]:
    """Random spanning set of a subalgebra of n, repaired by adding Z when needed."""
    mc = model.n - 1
    zs, shape = _random_m(rng, mc)
    W = haar_unitary(mc, rng)
    m = _real_rows(model, zs, W)
    alpha = np.eye(model.dim)[1:-1]
    info = {"m": shape}
    extra = str(rng.choice(["none", "Z", "V+tZ", "V+tZ c-orth"]))
    info["extra"] = extra
    rows = [m]
    if extra == "Z":
        rows.append(model.Z[None, :])
    elif extra.startswith("V+tZ"):
        if extra == "V+tZ c-orth" and m.shape[0]:
            cm = orthonormal_rows(np.vstack([m, (model.J @ m.T).T]))
            pool = _complement(cm, alpha)
        else:
            pool = _complement(m, alpha)
        V = _unit(rng, pool)
        if V is not None:
            t = 0.0 if rng.random() < 0.2 else float(rng.normal())
            rows.append((V + t * model.Z)[None, :])
    vecs = np.vstack(rows)
    if vecs.shape[0] == 0 or orthonormal_rows(vecs).shape[0] < 1:
        vecs = model.Z[None, :]
    if _try(model, vecs) is None:
        vecs = np.vstack([vecs, model.Z])
        info["repair"] = "added Z"
    return [vecs], info


def random_subalgebra(model: AmbientModel, seed, profile: str = "mixed") -> tuple[Subalgebra, dict]:
    """A random closed subalgebra of dimension >= 2 and a description of how it was drawn.

    ``seed`` may be anything accepted by ``numpy.random.default_rng``.
    """
    if profile not in PROFILES:
        raise ValueError(f"profile must be one of {PROFILES}")
    rng = np.random.default_rng(seed)
    for _ in range(50):
        kind = profile if profile != "mixed" else ("nilpotent" if rng.random() < 0.5 else "solvable")
        parts, info = _nilpotent_part(model, rng)
        l = np.vstack(parts)
        info["profile"] = kind
        if kind == "nilpotent":
            sub = _try(model, l)
            if sub is not None and sub.dim >= 2:
                return sub, info
            continue
        lsub = _try(model, l)
        if lsub is None:
            continue
        l = lsub.basis
        alpha = np.eye(model.dim)[1:-1]
        l_alpha = orthonormal_rows(l[:, 1:-1] @ alpha) if l.shape[0] else l
        mode = str(rng.choice(["zero", "c-orth", "c-orth tuned", "generic", "constrained"]))
        info["U"] = mode
        U = np.zeros(model.dim)
        if mode in ("c-orth", "c-orth tuned") and l_alpha.shape[0] < model.alpha_dim:
            cm = orthonormal_rows(np.vstack([l_alpha, (model.J @ l_alpha.T).T])) if l_alpha.shape[0] else l_alpha
            pool = _complement(cm, alpha)
            u = _unit(rng, pool)
            if u is not None:
                norm = float(rng.uniform(0.1, 2.0))
                if mode == "c-orth tuned" and l_alpha.shape[0]:
                    sig = decompose(model.J, l_alpha).signature
                    low = [(a, d) for a, d in sig if a < np.pi / 2 - 1e-8]
                    dpi2 = sum(d for a, d in sig if a >= np.pi / 2 - 1e-8)
                    if len(low) == 1:
                        phi, dphi = low[0]
                        norm = np.tan(phi) if dpi2 == 0 else np.sqrt(item_vi_u_squared(dphi, dpi2, phi))
                U = norm * u
        elif mode == "generic":
            U = float(rng.uniform(0.1, 2.0)) * _unit(rng, alpha)
        elif mode == "constrained":
            # closure of R(B + U + xZ) + l when Z is not in l:
            # <U, J X> = 0 on l cap g_alpha and <U, J V> = t/2 for the Z-carrying direction
            A, rhs = [], []
            zc = l[:, -1]
            for row, zval in zip(l, zc):
                V = row.copy()
                V[0] = V[-1] = 0.0
                A.append(model.J @ V)
                rhs.append(0.5 * zval)
            A, rhs = np.array(A), np.array(rhs)
            sol, *_ = np.linalg.lstsq(A, rhs, rcond=None)
            null = _complement(A[:, 1:-1] @ alpha if A.shape[0] else A, alpha)
            U = sol
            if null.shape[0]:
                U = U + rng.normal() * _unit(rng, null)
            U[0] = U[-1] = 0.0
        x = float(rng.normal()) if rng.random() < 0.5 else 0.0
        T = model.B + U + x * model.Z
        sub = _try(model, np.vstack([T, l]))
        if sub is None:
            sub = _try(model, np.vstack([T, l, model.Z]))
            info["repair"] = "added Z"
        if sub is None:
            sub = _try(model, np.vstack([model.B, l, model.Z]))
            info["repair"] = "U = 0, added Z"
        if sub is not None and sub.dim >= 2:
            return sub, info
    raise RuntimeError("random_subalgebra: no closed subalgebra after 50 attempts")


@dataclass
class ScanReport:
    n: int
    samples: int
    seed: int
    tally: dict
    counterexample: dict | None = None
    inconclusive: list = field(default_factory=list)
    families: dict = field(default_factory=dict)
    nilradical_minimality: dict = field(default_factory=dict)
    processed: int = 0

    @property
    def ok(self) -> bool:
        return self.counterexample is None and not self.inconclusive and not self.families.get("mismatches")

    def as_dict(self) -> dict:
        return {
            "n": self.n, "samples": self.samples, "seed": self.seed, "processed": self.processed,
            "tally": self.tally, "counterexample": self.counterexample, "inconclusive": self.inconclusive,
            "families": self.families, "nilradicalMinimality": self.nilradical_minimality,
        }

    def to_json(self) -> str:
        return dumps(self.as_dict())


def _witness(sub: Subalgebra, cls, index, info) -> dict:
    return to_plain({
        "index": index, "n": sub.model.n, "basis": sub.basis, "reason": cls.reason,
        "residual": cls.certificate.residual, "parameters": cls.parameters, "sample": info,
    })


def _minimality_record(sub: Subalgebra) -> tuple[bool, bool, float]:
    """(checked, minimal, |H|) for the nilradical of a soliton inside n, when it is not flat."""
    nl = nilradical_in_n(sub)
    if nl.dim < 2 or curvature_signature(nl).kind == "flat":
        return False, True, 0.0
    h = float(np.linalg.norm(mean_curvature(nl)))
    return True, h <= MINIMAL_TOL, h


def _run_one(model: AmbientModel, seed: int, index: int, family: bool):
    if family:
        rng = np.random.default_rng([seed, 1, index])
        item = ITEMS[index % len(ITEMS)]
        try:
            spec = random_spec(item, rng, n_values=(model.n,), max_tries=200)
        except RuntimeError:
            return index, "skip", None, None
        sub = build_family(spec, model)
        info = {"family": spec.as_dict()}
        expected = (spec.main_item, spec_parameters(spec))
    else:
        sub, info = random_subalgebra(model, [seed, 0, index])
        expected = None
    cls = classify(sub)
    rec = {"label": cls.label}
    if cls.kind in ("counterexample", "inconclusive"):
        rec["witness"] = _witness(sub, cls, index, info)
    if cls.kind == "family":
        checked, minimal, h = _minimality_record(sub)
        rec["minimality"] = (checked, minimal, h)
    if expected is not None:
        rec["roundtrip"] = cls.kind == "family" and cls.item == expected[0] and parameters_match(cls.parameters, expected[1])
        if not rec["roundtrip"]:
            rec["witness"] = _witness(sub, cls, index, info)
    return index, "ok", rec, family


def _run_chunk(args):
    n, seed, indices, family = args
    model = build_ambient(n)
    return [_run_one(model, seed, i, family) for i in indices]


def scan(model: AmbientModel, samples: int, seed: int = 0, jobs: int = 1, family_instances: int = 0) -> ScanReport:
    """Classify ``samples`` random subalgebras, plus ``family_instances`` built family members.

    Results do not depend on ``jobs``.  The first Counterexample stops the tally
    and is returned as a serialized witness.
    """
    if samples < 0 or family_instances < 0:
        raise ValueError("sample counts must be non-negative")
    tally = {k: 0 for k in TALLY_KEYS}
    report = ScanReport(n=model.n, samples=samples, seed=seed, tally=tally,
                        families={"total": 0, "matched": 0, "mismatches": []},
                        nilradical_minimality={"checked": 0, "failures": []})
    tasks = [(i, False) for i in range(samples)] + [(j, True) for j in range(family_instances)]
    if not tasks:
        return report
    chunk = max(1, len(tasks) // (8 * max(jobs, 1)))
    batches = []
    for fam in (False, True):
        idx = [i for i, f in tasks if f == fam]
        batches += [(model.n, seed, idx[k:k + chunk], fam) for k in range(0, len(idx), chunk)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = [r for batch in ex.map(_run_chunk, batches) for r in batch]
    else:
        results = [r for batch in map(_run_chunk, batches) for r in batch]
    for index, status, rec, family in results:
        if status == "skip":
            continue
        if family:
            report.families["total"] += 1
            if rec["roundtrip"]:
                report.families["matched"] += 1
            else:
                report.families["mismatches"].append(rec["witness"])
            continue
        report.processed += 1
        tally[rec["label"]] += 1
        if "minimality" in rec:
            checked, minimal, h = rec["minimality"]
            if checked:
                report.nilradical_minimality["checked"] += 1
                if not minimal:
                    report.nilradical_minimality["failures"].append({"index": index, "meanCurvature": h})
        if rec["label"] == "Inconclusive":
            report.inconclusive.append(rec["witness"])
        if rec["label"] == "Counterexample":
            report.counterexample = rec["witness"]
            break
    return report
