"""Acceptance criteria, each run at its stated tolerance and sample size."""

import time

import numpy as np
import pytest

from _identities import IDENTITIES, kahler_invariants_residual, model, random_m
from _report import record
from chnsoliton.algebra import koszul_connection
from chnsoliton.ambient import build_ambient, closed_form_connection
from chnsoliton.classify import nilradical_in_n, trace_in_n
from chnsoliton.families import EINSTEIN_ITEMS, ITEMS, FamilySpec, build_family, family_pieces, random_spec
from chnsoliton.kahler import kahler_decompose
from chnsoliton.scan import random_subalgebra, scan
from chnsoliton.soliton import certify_soliton, nilsoliton_constant
from chnsoliton.submanifold import gauss_ricci, is_minimal, is_totally_geodesic, shape_operator, subalgebra
from chnsoliton.tables import TABLE2_ITEMS, table2

pytestmark = pytest.mark.acceptance


def test_01_ambient_einstein_constant():
    t0 = time.perf_counter()
    err = 0.0
    for n in range(2, 7):
        Ric = build_ambient(n).algebra.ricci_matrix
        err = max(err, float(np.abs(Ric + (n + 1) / 2 * np.eye(2 * n)).max()))
    elapsed = time.perf_counter() - t0
    ok = err <= 1e-10 and elapsed < 1.0
    record(1, "ambient Ricci = -(n+1)/2 id, n=2..6", ok, f"max error {err:.1e}, {elapsed:.3f} s")
    assert ok


def test_02_connection_oracle():
    err = 0.0
    for n in range(2, 7):
        M = build_ambient(n)
        E = np.eye(M.dim)
        for x in E:
            for y in E:
                err = max(err, float(np.abs(koszul_connection(M.algebra, x, y) - closed_form_connection(M, x, y)).max()))
    ok = err <= 1e-12
    record(2, "Koszul connection = closed form on basis pairs, n<=6", ok, f"max error {err:.1e}")
    assert ok


def test_03_closed_form_identities():
    worst = {}
    for k, (name, fn) in enumerate(IDENTITIES.items()):
        rng = np.random.default_rng([3, k])
        worst[name] = max(fn(rng) for _ in range(1000))
    ok = all(v <= 1e-9 for v in worst.values())
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    record(3, "connection/shape/Jacobi/endomorphism closed forms, 1000 configs each", ok, detail)
    assert ok


def test_04_family_certification():
    t0 = time.perf_counter()
    bad = []
    worst = 0.0
    for item in ITEMS:
        rng = np.random.default_rng([4, ITEMS.index(item)])
        for _ in range(100):
            spec = random_spec(item, rng)
            cert = certify_soliton(build_family(spec))
            worst = max(worst, cert.residual)
            if not (cert.is_soliton and cert.residual <= 1e-9 and cert.is_einstein == EINSTEIN_ITEMS[item]):
                bad.append(spec)
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30
    record(4, "items I-VI, 100 instances each: solitons with matching Einstein flags", ok,
           f"{len(bad)} failures, max residual {worst:.1e}, {elapsed:.1f} s")
    assert ok, bad[:3]


def test_05_nilsoliton_constant():
    rng = np.random.default_rng(5)
    err = 0.0
    for _ in range(100):
        spec = random_spec("IV", rng)
        c = certify_soliton(build_family(spec)).c
        want = -0.25 * np.cos(spec.phi) ** 2 * (spec.dim_mphi + 4)
        assert want == pytest.approx(nilsoliton_constant(spec.phi, spec.dim_mphi))
        err = max(err, abs(c - want))
    ok = err <= 1e-9
    record(5, "item IV constant c = -cos^2(phi)(dim m_phi + 4)/4", ok, f"max error {err:.1e}")
    assert ok


def test_06_item_vi_constraint_is_active():
    rng = np.random.default_rng(6)
    low = np.inf
    for _ in range(50):
        spec = random_spec("VI", rng, n_values=(4, 5, 6))
        for scale in (0.9, 1.1):
            low = min(low, certify_soliton(build_family(spec, u_scale=scale)).residual)
    ok = low >= 1e-4
    record(6, "item VI with |U| scaled by 0.9 and 1.1 fails certification", ok, f"min residual {low:.2e}")
    assert ok


def test_07_gauss_equals_intrinsic():
    worst = 0.0
    for i in range(1000):
        sub, _ = random_subalgebra(model(2 + i % 5), [7, i])
        worst = max(worst, float(np.abs(gauss_ricci(sub) - sub.induced.ricci_matrix).max()))
    ok = worst <= 1e-9
    record(7, "Gauss-equation Ricci = intrinsic Ricci, 1000 random subalgebras", ok, f"max residual {worst:.1e}")
    assert ok


def test_08_kahler_decomposition_invariants():
    M = model(6)  # g_alpha = C^5
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(1000):
        V = random_m(rng, M, max_dim=M.alpha_dim)
        worst = max(worst, kahler_invariants_residual(M.J, V, kahler_decompose(M, V)))
    ok = worst <= 1e-8
    record(8, "Kähler decomposition invariants, 1000 subspaces of C^5", ok, f"max residual {worst:.1e}")
    assert ok


def test_09_minimality_flags():
    checks = {}
    for n, dpi2 in [(2, 1), (3, 2), (5, 3)]:
        sub = build_family(FamilySpec("V", n, dim_mpi2=dpi2))
        checks[f"V U=0 n={n}"] = is_minimal(sub) and not is_totally_geodesic(sub)
    for n in (2, 4):
        M = build_ambient(n)
        checks[f"RB+RZ n={n}"] = is_totally_geodesic(subalgebra(M, [M.B, M.Z]))
        real = [M.from_complex(np.eye(n - 1)[j]) for j in range(n - 1)]
        checks[f"RB+real n={n}"] = is_totally_geodesic(subalgebra(M, [M.B, *real]))
    rng = np.random.default_rng(9)
    for item in ("I", "IV"):
        flags = []
        for _ in range(100):
            sub = build_family(random_spec(item, rng))
            tr = float(np.trace(shape_operator(sub, sub.model.B)))
            flags.append(tr > 0 and not is_minimal(sub))
        checks[f"item {item} never minimal"] = all(flags)
    ok = all(checks.values())
    record(9, "minimality and total geodesy flags", ok, ", ".join(k for k, v in checks.items() if not v) or "all")
    assert ok, checks


@pytest.fixture(scope="module")
def ch3_scan():
    t0 = time.perf_counter()
    rep = scan(build_ambient(3), 10_000, seed=42)
    return rep, time.perf_counter() - t0


def test_10_completeness_scan(ch3_scan):
    rep, elapsed = ch3_scan
    ok = rep.counterexample is None and rep.processed == 10_000 and elapsed < 60
    solitons = sum(v for k, v in rep.tally.items() if k.startswith("item"))
    record(10, "10,000 random subalgebras of CH^3 (seed 42): no Counterexample", ok,
           f"{solitons} solitons, {rep.tally['NotSoliton']} non-solitons, "
           f"{rep.tally['Inconclusive']} inconclusive, {elapsed:.1f} s")
    assert ok, rep.counterexample


def test_11_nilradicals_minimal_in_n(ch3_scan):
    rep, _ = ch3_scan
    extra = scan(build_ambient(5), 1000, seed=43)
    mins = [rep.nilradical_minimality, extra.nilradical_minimality]
    checked = sum(m["checked"] for m in mins)
    failures = sum(len(m["failures"]) for m in mins)
    # flat nilradical: item I with |V| = 1, t != 0 has tr S_JV != 0 inside n
    traces = []
    rng = np.random.default_rng(11)
    for _ in range(50):
        n = int(rng.integers(3, 7))
        spec = FamilySpec("I", n, dim_mpi2=int(rng.integers(1, n - 1)), v_norm=1.0,
                          t=float(rng.choice([-1, 1]) * rng.uniform(0.1, 2)), seed=int(rng.integers(1000)))
        sub = build_family(spec)
        traces.append(abs(trace_in_n(sub, sub.model.J @ family_pieces(spec, sub.model).V)))
        assert not is_minimal(nilradical_in_n(sub))
    ok = failures == 0 and checked > 0 and min(traces) > 1e-6
    record(11, "non-flat soliton nilradicals minimal in n; flat item I counterexample", ok,
           f"{checked} nilradicals checked, {failures} failures, min |tr S_JV| {min(traces):.3f}")
    assert ok


def _table2_summary(convention):
    rows = table2(5, samples=20, seed=12, convention=convention) + table2(6, samples=20, seed=12, convention=convention)
    bad = {}
    for r in rows:
        for i in r.mismatches:
            spec = r.specs[i]
            bad.setdefault(r.item, []).append(spec.u if r.item in ("V", "VI") else None)
    return rows, bad


def test_12_table2_corrected_closed_forms():
    rows, bad = _table2_summary("corrected")
    assert {r.item for r in rows} == set(TABLE2_ITEMS)
    assert not bad, bad


@pytest.mark.xfail(strict=True, reason="the printed plane angle arccos(r) for items V and VI differs from the "
                                      "computed arccos(sqrt(r)); items I, III, IV and V with U = 0 agree")
def test_12_table2_published_closed_forms():
    rows, bad = _table2_summary("published")
    total = sum(len(r.specs) for r in rows)
    nbad = sum(len(v) for v in bad.values())
    _, bad_corr = _table2_summary("corrected")
    detail = (f"{nbad}/{total} instances differ, items {sorted(bad)}; with arccos(sqrt(r)) in place of "
              f"arccos(r) for the angle of span(B+U, Z) {'all match' if not bad_corr else 'some still differ'}")
    record(12, "Kähler angle signatures of s match the published table", not bad, detail)
    assert not bad
