"""Acceptance criteria 1-11, each at its stated tolerance.

Every test records its outcome through the ``criteria`` fixture; the terminal
summary prints one PASS/FAIL line per criterion.
"""

import math
import time
from fractions import Fraction
from pathlib import Path

import gmpy2
import mpmath
import pytest
from gmpy2 import mpfr

import oracle
from hpzeros import (
    FunctionSpec,
    PrecisionContext,
    TwoPointProblem,
    analysis,
    find_roots,
    hp_solve,
    pade_error_probe,
    pade_solve,
    twopoint_solve,
)
from hpzeros.presets import PRESETS, compute, run_many
from hpzeros.roots import cluster_eps

CASES = (1, 2, 3)
A_GRID = ("-1/10", "1/5", "2/5", "5/8", "73/100", "4/5")


def _dps(bits):
    return int(bits * 0.30103) + 20


def _hp_specs(case, a):
    return FunctionSpec.case(case, a, 1), FunctionSpec.case(case, a, 2)


# --- 1 ----------------------------------------------------------------------------


@pytest.mark.parametrize("n", (20, 40, 60))
@pytest.mark.parametrize("a", A_GRID)
@pytest.mark.parametrize("case", CASES)
def test_criterion1_contact_order(criteria, case, a, n):
    t0 = time.perf_counter()
    triple = hp_solve(*_hp_specs(case, a), n)
    elapsed = time.perf_counter() - t0
    dps = _dps(triple.bits)
    series = [oracle.case_series(case, a, i, 3 * n + 3, dps) for i in (1, 2)]
    window = oracle.hp_window_coefficients(triple.polys, series, n, dps)
    worst = max(abs(c) for c in window)
    tol = mpmath.mpf(format(PrecisionContext(triple.bits).zero_tol, ".60g"))
    ok = worst <= tol and elapsed <= 60
    criteria.record(1, ok, f"case {case} a={a} n={n}: max|coef|={mpmath.nstr(worst, 3)} in {elapsed:.1f}s")
    assert worst <= tol
    assert elapsed <= 60


# --- 2 ----------------------------------------------------------------------------


@pytest.mark.parametrize("n", range(0, 9))
@pytest.mark.parametrize("a", ("1/5", "2/5", "5/8"))
def test_criterion2_exact_oracle(criteria, a, n):
    exact, pivot = oracle.normalize_max(oracle.exact_kernel(oracle.exact_hp_matrix(a, n)))
    triple = hp_solve(*_hp_specs(1, a), n)
    with gmpy2.context(gmpy2.get_context(), precision=triple.bits):
        v = [c for p in triple.polys for c in p.coeffs]
        v = [c / v[pivot] for c in v]
        worst = max(abs(x - mpfr(e.numerator) / e.denominator) for x, e in zip(v, exact))
    tol = gmpy2.mul_2exp(mpfr(1), -(triple.bits // 3))
    criteria.record(2, worst <= tol, f"a={a} n={n}: {float(worst):.1e}")
    assert worst <= tol


# --- 3 ----------------------------------------------------------------------------


@pytest.mark.parametrize("a", ("-1/10", "1/5", "4/5"))
@pytest.mark.parametrize("case", CASES)
def test_criterion3_degenerate_n0(criteria, case, a):
    triple = hp_solve(*_hp_specs(case, a), 0)
    ctx = PrecisionContext(triple.bits)
    with ctx.activate():
        v = [p.coeffs[0] for p in triple.polys]
        v = [x / v[1] for x in v]
        defect = max(abs(x - e) for x, e in zip(v, (0, 1, -1)))
    ok = defect <= ctx.zero_tol
    criteria.record(3, ok, f"case {case} a={a}: {float(defect):.1e}")
    assert ok


# --- 4 ----------------------------------------------------------------------------

ARCSINE = FunctionSpec.algebraic([(-1, 0), (1, 0)], ["-1/2", "-1/2"])


def test_criterion4_chebyshev_poles(criteria):
    ctx = PrecisionContext(1024)
    pair = pade_solve(ARCSINE, 16, ctx)
    poles = find_roots(pair.p1, ctx, "poles")
    expected = oracle.chebyshev_roots(16, dps=80)
    with mpmath.workdps(80):
        worst = max(abs(oracle.to_mp(z) - e) for z, e in zip(poles.roots, expected))
    ok = len(poles) == 16 and worst <= 1e-20
    criteria.record(4, ok, f"n=16 max deviation {mpmath.nstr(worst, 3)}")
    assert ok


def test_criterion4_arcsine_ks(criteria):
    pair = pade_solve(ARCSINE, 100)
    poles = find_roots(pair.p1, PrecisionContext(pair.bits), "poles")
    ks = analysis.ks_arcsine(poles)
    criteria.record(4, ks <= 0.02, f"n=100 KS={ks:.4f}")
    assert ks <= 0.02


# --- 5 ----------------------------------------------------------------------------


@pytest.mark.parametrize("z", (2, 10))
def test_criterion5_rate(criteria, z):
    ns = list(range(10, 41, 2))
    errors = []
    for n in ns:
        pair = pade_solve(ARCSINE, n, PrecisionContext(512))
        with gmpy2.context(gmpy2.get_context(), precision=512):
            f = 1 / gmpy2.sqrt(mpfr(z * z - 1))
        errors.append(pade_error_probe(pair, z, f))
    fit = analysis.rate_fit(ns, errors, z=z, floor=gmpy2.mul_2exp(mpfr(1), -400))
    expected = -2 * math.log(z + math.sqrt(z * z - 1))
    ok = abs(fit.slope - expected) <= 0.02 * abs(expected)
    criteria.record(5, ok, f"z={z}: slope {fit.slope:.4f} vs {expected:.4f}")
    assert ok


# --- 6 ----------------------------------------------------------------------------

CHEBOTAREV = complex(0.029, 0.466)


def _pade_preset(pid, n):
    p = PRESETS[pid]
    t0 = time.perf_counter()
    comp = compute(p.kind, p.specs, n)
    elapsed = time.perf_counter() - t0
    rep = analysis.detect_froissart(comp.zero_sets["zeros"], comp.zero_sets["poles"], p.branch_points, genus_bound=p.genus)
    return p, comp, rep, elapsed


def test_criterion6_three_points_n130(criteria):
    p, comp, rep, elapsed = _pade_preset("fig1_1", 130)
    est = analysis.estimate_chebotarev(comp.zero_sets["poles"], p.branch_points)
    dist = abs(est - CHEBOTAREV)
    ok = rep.count <= 1 and dist <= 0.05 and elapsed <= 1800
    criteria.record(6, ok, f"n=130: {rep.count} doublet(s), Chebotarev {est:.4f} (off by {dist:.4f}), {elapsed:.0f}s")
    assert rep.count <= 1
    assert dist <= 0.05
    assert elapsed <= 1800


def test_criterion6_three_points_n60(criteria):
    _, _, rep, elapsed = _pade_preset("fig1_1", 60)
    ok = rep.count <= 1 and elapsed <= 180
    criteria.record(6, ok, f"n=60: {rep.count} doublet(s), {elapsed:.0f}s")
    assert ok


# --- 7 ----------------------------------------------------------------------------


def test_criterion7_six_points(criteria):
    _, _, rep, elapsed = _pade_preset("fig1_4", 103)
    ok = rep.count <= 4
    where = ", ".join(f"{complex(z):.3f}" for z, _, _ in rep.doublets)
    criteria.record(7, ok, f"n=103: {rep.count} doublet(s) observed [{where}], {elapsed:.0f}s")
    assert ok


# --- 8 ----------------------------------------------------------------------------


def _angelesco(case):
    specs = _hp_specs(case, Fraction(-1, 10))
    comp = compute("hp", specs, 60)
    zs = comp.zero_sets
    return analysis.angelesco_localization([zs["q0"], zs["q1"], zs["q2"]], Fraction(-1, 10))


@pytest.mark.parametrize("case", (1, 2))
def test_criterion8_segments(criteria, case):
    rep = _angelesco(case)
    ok = not rep.offending["q1"] and not rep.offending["q2"]
    criteria.record(8, ok, f"case {case} q1/q2 on segments: {'yes' if ok else 'no'}")
    assert ok


def test_criterion8_imaginary_axis_log(criteria):
    rep = _angelesco(1)
    ok = not rep.offending["q0"]
    criteria.record(8, ok, f"case 1 q0 on iR: {len(rep.offending['q0'])} off")
    assert ok


@pytest.mark.xfail(strict=True, reason="q0 zeros of the square-root pair only approach the imaginary axis at rate 1/n")
def test_criterion8_imaginary_axis_sqrt(criteria):
    rep = _angelesco(2)
    off = rep.offending["q0"]
    near = max((abs(z.real) for z in off if abs(z) < 1), default=0.0)
    ok = not off
    criteria.record(8, ok, f"case 2 q0 on iR: {len(off)} off, max|Re| in unit disk {near:.2e} (unattainable, see ledger)")
    assert ok


# --- 9 ----------------------------------------------------------------------------


@pytest.mark.parametrize("a", ("1/5", "2/5"))
def test_criterion9_reflection(criteria, a):
    comp = compute("hp", _hp_specs(1, Fraction(a)), 60)
    q1, q2 = comp.zero_sets["q1"], comp.zero_sets["q2"]
    d = analysis.hausdorff(q1, [-z for z in q2.roots])
    ok = d <= 1e-10
    criteria.record(9, ok, f"a={a}: Hausdorff {float(d):.1e}")
    assert ok


# --- 10 ---------------------------------------------------------------------------


@pytest.mark.parametrize("split", ("displayed", "footnote"))
def test_criterion10_rational_exact(criteria, split):
    f = FunctionSpec.ratio((Fraction(1, 2), 0), (-2, 0), 1)
    ctx = PrecisionContext(256)
    tp = twopoint_solve(TwoPointProblem(f, f), 1, ctx, split)
    with ctx.activate():
        probes = (mpfr(3), gmpy2.mpc(1, 1), gmpy2.mpc(-0.25, 2))
        worst = max(abs(tp(z) - (z - mpfr(0.5)) / (z + 2)) for z in probes)
        zero = find_roots(tp.p, ctx).roots[0]
        pole = find_roots(tp.q, ctx).roots[0]
        dev = max(abs(zero - mpfr(0.5)), abs(pole + 2))
    ok = worst <= ctx.zero_tol and dev <= ctx.zero_tol
    criteria.record(10, ok, f"rational ({split}): {float(max(worst, dev)):.1e}")
    assert ok


def test_criterion10_ratio_windows(criteria):
    p = PRESETS["fig2_2"]
    tp = twopoint_solve(TwoPointProblem(*p.specs), 60)
    tol = PrecisionContext(tp.bits).zero_tol
    ok = tp.residual0 <= tol * tp.scale0 and tp.residual_inf <= tol * tp.scale_inf
    criteria.record(10, ok, f"ratio n=60: residuals {float(tp.residual0):.1e}/{float(tp.residual_inf):.1e}")
    assert ok


def test_criterion10_real_data_symmetry(criteria):
    p = PRESETS["fig2_1"]
    comp = compute(p.kind, p.specs, 60)
    eps = cluster_eps(comp.ctx)
    results = [analysis.check_conjugate_symmetry(comp.zero_sets[k], eps) for k in ("zeros", "poles")]
    ok = all(r.ok for r in results)
    criteria.record(10, ok, "real data n=60 conjugate defects " + "/".join(f"{float(r.defect):.1e}" for r in results))
    assert ok


# --- 11 ---------------------------------------------------------------------------

DETERMINISM_N = 20


def _snapshot(root):
    return {str(f.relative_to(root)): f.read_bytes() for f in sorted(Path(root).rglob("*")) if f.is_file()}


def test_criterion11_determinism(criteria, tmp_path):
    ids = list(PRESETS)
    runs = []
    for k in range(2):
        compute.cache_clear()
        run_many(ids, tmp_path / f"run{k}", n=DETERMINISM_N)
        runs.append(_snapshot(tmp_path / f"run{k}"))
    same = runs[0].keys() == runs[1].keys() and all(runs[0][f] == runs[1][f] for f in runs[0])
    files = len(runs[0])
    expected_files = 4 * len(ids)
    header = runs[0]["fig4_1/zeros.csv"].decode().splitlines()
    ok = same and files == expected_files and f"# n={DETERMINISM_N}" in header
    criteria.record(11, ok, f"{len(ids)} presets at n={DETERMINISM_N}, {files} files byte-identical: {same}")
    assert ok
