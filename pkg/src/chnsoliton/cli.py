"""Command-line front end.

Subcommands: check, family, classify, scan, reproduce, ricci.  Exit codes:
0 soliton / success, 1 negative result or mismatch, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from ._io import dumps, round_sig, to_plain
from .ambient import build_ambient
from .classify import classify, nilradical_split
from .families import FamilySpec, InfeasibleSpecError, build_family, item_vi_u_squared, normalize_item
from .scan import scan
from .soliton import certify_soliton, default_tol
from .submanifold import ClosureError, Subalgebra, geometry_report, subalgebra
from .tables import CONVENTIONS, ISOMETRIC_TO, table1, table2

EXIT_OK, EXIT_NEGATIVE, EXIT_INVALID = 0, 1, 2


class InputError(Exception):
    pass


def load_document(path: str) -> Subalgebra:
    """Parse a SubalgebraDocument ``{"n": int, "basis": [[...], ...], "label": str}``."""
    try:
        with open(path) if path != "-" else sys.stdin as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read document: {exc}") from exc
    if not isinstance(doc, dict) or "n" not in doc or "basis" not in doc:
        raise InputError("document needs keys 'n' and 'basis'")
    n = doc["n"]
    if not isinstance(n, int) or n < 2:
        raise InputError(f"'n' must be an integer >= 2, got {n!r}")
    try:
        basis = np.array(doc["basis"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"basis is not a numeric matrix: {exc}") from exc
    if basis.ndim != 2 or basis.shape[1] != 2 * n or basis.shape[0] == 0:
        raise InputError(f"basis must be a non-empty list of vectors of length {2 * n}")
    if not np.all(np.isfinite(basis)):
        raise InputError("basis has non-finite entries")
    try:
        return subalgebra(build_ambient(n), basis, label=str(doc.get("label", "")))
    except ClosureError as exc:
        raise InputError(f"not closed under the bracket: closure residual {round_sig(exc.residual)}") from exc
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def document(sub: Subalgebra, label: str = "") -> dict:
    return {"n": sub.model.n, "basis": to_plain(sub.basis), "label": label or sub.label}


def _certificate(cert) -> dict:
    return {
        "isSoliton": cert.is_soliton, "status": cert.status, "c": cert.c, "D": cert.D,
        "residual": cert.residual, "derivationResidual": cert.derivation_residual,
        "unique": cert.unique, "solitonType": cert.soliton_type,
        "isEinstein": cert.is_einstein, "einsteinConstant": cert.einstein_constant,
    }


def _classification(cls) -> dict:
    return {
        "label": cls.label, "kind": cls.kind, "item": cls.item, "nilradicalFamily": cls.nilradical_family,
        "parameters": cls.parameters, "alsoMatches": cls.also_matches, "reason": cls.reason,
        "kahlerSignature": [{"angle": a, "dim": d} for a, d in cls.signature],
    }


def check_report(sub: Subalgebra) -> dict:
    cert = certify_soliton(sub)
    geo = geometry_report(sub)
    l_rows, _ = nilradical_split(sub)
    out = {
        "n": sub.model.n, "dim": sub.dim, "closureResidual": sub.closure_residual,
        "nilradicalBasis": l_rows, "certificate": _certificate(cert),
        "einstein": cert.is_einstein,
        "geometry": {
            "meanCurvature": geo.mean_curvature, "minimal": geo.minimal,
            "totallyGeodesic": geo.totally_geodesic, "gaussResidual": geo.gauss_residual,
            "curvatureSignature": str(geo.curvature_signature), "notes": geo.notes,
        },
    }
    if sub.dim >= 2:
        cls = classify(sub)
        out["classification"] = _classification(cls)
        out["kahlerSignature"] = out["classification"]["kahlerSignature"]
    return out


def _markdown_check(rep: dict) -> str:
    cert, geo = rep["certificate"], rep["geometry"]
    lines = [
        f"# Subalgebra of dimension {rep['dim']} in CH^{rep['n']}", "",
        "| quantity | value |", "|---|---|",
        f"| closure residual | {round_sig(rep['closureResidual'])} |",
        f"| soliton status | {cert['status']} |",
        f"| c | {round_sig(cert['c'])} |",
        f"| residual | {round_sig(cert['residual'])} |",
        f"| Einstein | {cert['isEinstein']} |",
        f"| minimal | {geo['minimal']} |",
        f"| totally geodesic | {geo['totallyGeodesic']} |",
        f"| curvature | {geo['curvatureSignature']} |",
    ]
    if "classification" in rep:
        c = rep["classification"]
        lines.append(f"| classification | {c['label']} |")
        sig = ", ".join(f"{round_sig(s['angle'])} x{s['dim']}" for s in c["kahlerSignature"])
        lines.append(f"| Kähler signature | {sig} |")
    return "\n".join(lines) + "\n"


def cmd_check(args) -> int:
    sub = load_document(args.path)
    rep = check_report(sub)
    if args.format in ("json", "both"):
        print(dumps(rep))
    if args.format in ("markdown", "both"):
        print(_markdown_check(to_plain(rep)))
    return EXIT_OK if rep["certificate"]["isSoliton"] else EXIT_NEGATIVE


def cmd_classify(args) -> int:
    sub = load_document(args.path)
    if sub.dim < 2:
        raise InputError("classification needs a subalgebra of dimension >= 2")
    cls = classify(sub)
    print(dumps(_classification(cls) | {"certificate": _certificate(cls.certificate)}))
    return EXIT_OK if cls.kind == "family" else EXIT_NEGATIVE


def cmd_ricci(args) -> int:
    sub = load_document(args.path)
    geo = geometry_report(sub)
    ric = geo.intrinsic_ricci
    print(dumps({
        "ricci": ric, "eigenvalues": np.linalg.eigvalsh(0.5 * (ric + ric.T)),
        "scalarCurvature": float(np.trace(ric)), "gaussRicci": geo.gauss_ricci,
        "gaussResidual": geo.gauss_residual,
    }))
    return EXIT_OK


def _announce_derived_u(args, stream) -> None:
    """Print |U| fixed by the table before any feasibility check."""
    try:
        item = normalize_item(args.item)
    except ValueError:
        return
    if item == "III" and 0.0 <= args.phi < np.pi / 2:
        print(f"|U| = tan(phi) = tan({round_sig(args.phi)}) = {round_sig(np.tan(args.phi))}", file=stream)
    elif item == "VI" and 0.0 <= args.phi < np.pi / 2 and args.dim_mphi > 0:
        u2 = item_vi_u_squared(args.dim_mphi, args.dim_mpi2, args.phi)
        print(f"|U|^2 = {round_sig(u2)}", file=stream)


def cmd_family(args) -> int:
    info = sys.stderr if args.out is None else sys.stdout
    _announce_derived_u(args, info)
    try:
        spec = FamilySpec(item=args.item, n=args.n, dim_mphi=args.dim_mphi, phi=args.phi,
                          dim_mpi2=args.dim_mpi2, u_norm=args.u_norm, v_norm=args.v_norm,
                          t=args.t, x=args.x, seed=args.seed)
    except (InfeasibleSpecError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    sub = build_family(spec)
    doc = document(sub, f"item {spec.item}")
    doc["spec"] = spec.as_dict()
    print(f"item {spec.item}: dim s = {sub.dim}, |U| = {round_sig(spec.u)}", file=info)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dumps(doc) + "\n")
    else:
        print(dumps(doc))
    return EXIT_OK


def cmd_scan(args) -> int:
    if args.samples < 0 or args.families < 0:
        raise InputError("--samples and --families must be non-negative")
    report = scan(build_ambient(args.n), args.samples, seed=args.seed, jobs=args.jobs,
                  family_instances=args.families)
    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print("| outcome | count |\n|---|---|", file=sys.stderr)
    for key, val in report.tally.items():
        print(f"| {key} | {val} |", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def _fmt_sig(sig) -> str:
    return "{" + ", ".join(f"{round_sig(a)} (dim {d})" for a, d in sig) + "}"


def reproduce_markdown(n: int, samples: int, seed: int, convention: str) -> tuple[str, bool]:
    t1 = table1(n, samples, seed)
    t2 = table2(n, samples, seed, convention)
    lines = [f"# Classification tables regenerated in CH^{n}", "",
             "## Table 1: Einstein flag and model space", "",
             "| item | Einstein (expected) | Einstein (computed) | isometric to | curvature (computed) | status |",
             "|---|---|---|---|---|---|"]
    diffs = []
    for r in t1:
        if not r.feasible:
            lines.append(f"| {r.item} | {r.einstein_expected} | - | {r.isometric_expected} | - | n too small |")
            continue
        comp = sorted(set(r.einstein_computed))
        curv = sorted(set(r.signatures))
        status = "ok" if r.ok else "MISMATCH"
        if not r.ok:
            diffs.append(f"item {r.item}: Einstein {r.einstein_computed}, curvature {r.signatures}, "
                         f"expected {r.einstein_expected} / {ISOMETRIC_TO[r.item][0]}")
        lines.append(f"| {r.item} | {r.einstein_expected} | {', '.join(map(str, comp))} | "
                     f"{r.isometric_expected} | {', '.join(curv)} | {status} |")
    lines += ["", f"## Table 2: Kähler angles and dimensions ({convention} closed forms)", "",
              "| item | instance | expected | computed | status |", "|---|---|---|---|---|"]
    for r in t2:
        if not r.feasible:
            lines.append(f"| {r.item} | - | - | - | n too small |")
            continue
        bad = set(r.mismatches)
        for i, (spec, e, c) in enumerate(zip(r.specs, r.expected, r.computed)):
            desc = (f"dim m_phi={spec.dim_mphi}, phi={round_sig(spec.phi)}, "
                    f"dim m_pi/2={spec.dim_mpi2}, |U|={round_sig(spec.u)}")
            status = "MISMATCH" if i in bad else "ok"
            if i in bad:
                diffs.append(f"item {r.item} [{desc}]: expected {_fmt_sig(e)}, computed {_fmt_sig(c)}")
            lines.append(f"| {r.item} | {desc} | {_fmt_sig(e)} | {_fmt_sig(c)} | {status} |")
    if diffs:
        lines += ["", "## Diff", ""] + [f"- {d}" for d in diffs]
    return "\n".join(lines) + "\n", not diffs


def cmd_reproduce(args) -> int:
    if args.n < 2:
        raise InputError("--n must be >= 2")
    text, ok = reproduce_markdown(args.n, args.samples, args.seed, args.convention)
    print(text)
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chnsoliton",
                                description="Ricci soliton subalgebras of the Iwasawa algebra of CH^n.")
    p.add_argument("--tol", type=float, default=None,
                   help="certification threshold (default: $SOLITON_TOL or 1e-9)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="full report for a subalgebra document")
    c.add_argument("path")
    c.add_argument("--format", choices=["json", "markdown", "both"], default="json")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("classify", help="classify a subalgebra document")
    c.add_argument("path")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("ricci", help="intrinsic and Gauss Ricci operators")
    c.add_argument("path")
    c.set_defaults(func=cmd_ricci)

    c = sub.add_parser("family", help="build a family instance and write its document")
    c.add_argument("--item", required=True, help="1-6, I-VI, N1 or N2")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--dim-mphi", type=int, default=0)
    c.add_argument("--phi", type=float, default=0.0)
    c.add_argument("--dim-mpi2", type=int, default=0)
    c.add_argument("--u-norm", type=float, default=None)
    c.add_argument("--v-norm", type=float, default=0.0)
    c.add_argument("--t", type=float, default=0.0)
    c.add_argument("--x", type=float, default=0.0)
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_family)

    c = sub.add_parser("scan", help="randomized completeness scan")
    c.add_argument("--n", type=int, default=3)
    c.add_argument("--samples", type=int, default=1000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--families", type=int, default=0, help="built family instances mixed into the stream")
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_scan)

    c = sub.add_parser("reproduce", help="regenerate the classification tables")
    c.add_argument("--n", type=int, default=4)
    c.add_argument("--samples", type=int, default=3)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--convention", choices=CONVENTIONS, default="published")
    c.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    if args.tol is not None:
        import os

        os.environ["SOLITON_TOL"] = repr(args.tol)
    try:
        default_tol()
    except ValueError:
        print("error: SOLITON_TOL is not a number", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
