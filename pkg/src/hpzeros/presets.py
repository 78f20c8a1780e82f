"""Figure presets: fixed inputs, computations, checks and output files.

Every figure has one preset.  Presets sharing the same computation (for
example the full picture and the per-polynomial panels) reuse one cached
solve per process.
"""

from __future__ import annotations

import functools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import analysis
from .export import auto_window, fmt, render_svg, zerosets_to_csv, zerosets_to_json
from .germs import FunctionSpec
from .hermite_pade import hp_solve
from .numerics import PrecisionContext
from .pade import pade_solve
from .roots import cluster_eps, find_roots
from .twopoint import TwoPointProblem, twopoint_solve

__all__ = ["Preset", "PRESETS", "PresetResult", "get_preset", "compute", "run_preset", "run_many", "lens_sweep"]

FORMATS = ("csv", "json", "svg")
BITS_ENV = "HP_BITS"


@dataclass(frozen=True)
class Preset:
    """One figure: the function(s), the degree and what gets plotted.

    ``kind`` is ``hp`` (specs ``f1, f2``), ``pade`` (spec ``f``) or
    ``twopoint`` (specs ``f0, f_inf``).  ``show`` lists the zero-set labels
    drawn in the SVG.
    """

    id: str
    kind: str
    specs: tuple
    n: int
    show: tuple
    caption: str
    genus: int | None = None
    chebotarev: bool = False
    reference: dict = field(default_factory=dict, compare=False)

    @property
    def branch_points(self):
        pts = []
        for s in self.specs:
            for p in s.singular_points:
                c = complex(float(p[0]), float(p[1]))
                if c not in pts:
                    pts.append(c)
        return pts

    def window(self):
        return auto_window(self.branch_points, pad=0.5, minimum=1.0)


def _hp_presets():
    out = []
    labels = {1: "log", 2: "square root", 3: "cube root"}
    panels = (("q0", "q1", "q2"), ("q0",), ("q1",), ("q2",))

    def add(fig, first, case, a, n, show):
        a = Fraction(a)
        specs = (FunctionSpec.case(case, a, 1), FunctionSpec.case(case, a, 2))
        for k, sh in enumerate(show):
            cap = f"type I Hermite-Pade zeros, {labels[case]} pair, a={float(a):g}, n={n}: " + ", ".join(sh)
            out.append(Preset(f"fig{fig}_{first + k}", "hp", specs, n, sh, cap))

    add(3, 1, 1, Fraction(-1, 10), 200, panels[:2])
    add(3, 3, 2, Fraction(-1, 10), 200, panels[:2])
    grid = {4: Fraction(1, 5), 5: Fraction(2, 5), 6: Fraction(5, 8), 7: Fraction(73, 100), 8: Fraction(4, 5)}
    for fig, a in grid.items():
        for case in (1, 2, 3):
            aa = Fraction(17, 20) if (case == 3 and fig == 8) else a
            n = 300 if (case == 3 and fig == 7) else 200
            add(fig, 4 * (case - 1) + 1, case, aa, n, panels)
    return out


EQ31_POINTS = (("-1.2", "0.8"), ("0.9", "1.5"), ("0.5", "-1.2"))
EQ311_POINTS = (("4.3", "1"), ("2", "0.5"), ("2", "2"), ("1", "-3"), ("4", "2"), ("3", "5"))
EQ32_POINTS = (("0.9", "-1.1"), ("0.1", "0.2"))


def _exact(points):
    return tuple((Fraction(x), Fraction(y)) for x, y in points)


def _other_presets():
    f31 = FunctionSpec.algebraic(_exact(EQ31_POINTS), [Fraction(-1, 3)] * 3)
    f311 = FunctionSpec.algebraic(_exact(EQ311_POINTS), [Fraction(-1, 6)] * 6)
    half = Fraction(1, 2)
    bus_pts = ((half, Fraction(0)), (Fraction(2), Fraction(0)))
    bus0 = FunctionSpec.algebraic(bus_pts, [-half, -half], lead=half)
    businf = FunctionSpec.algebraic(bus_pts, [-half, -half], lead=half, shift=1)
    a1, a2 = _exact(EQ32_POINTS)
    r0 = FunctionSpec.ratio(a1, a2, Fraction(1, 4))
    rinf = FunctionSpec.ratio(a1, a2, Fraction(1, 4), branch_tag=2)
    cheb_ref = {"chebotarev": [0.029, 0.466], "doublet": [0.469, 0.633]}
    return [
        Preset("fig1_1", "pade", (f31,), 130, ("zeros", "poles"), "[130/130] zeros and poles, three branch points", 1, True, cheb_ref),
        Preset("fig1_2", "pade", (f31,), 130, ("poles",), "[130/130] poles, three branch points", 1, True, cheb_ref),
        Preset("fig1_3", "pade", (f31,), 130, ("zeros",), "[130/130] zeros, three branch points", 1, False, cheb_ref),
        Preset("fig1_4", "pade", (f311,), 103, ("zeros", "poles"), "[103/103] zeros and poles, six branch points", 4, False, {"doublets_observed": 3}),
        Preset("fig2_1", "twopoint", (bus0, businf), 120, ("zeros", "poles"), "two-point [120/120], germs of two different functions"),
        Preset("fig2_2", "twopoint", (r0, rinf), 199, ("zeros", "poles"), "two-point [199/199], opposite branches", 1),
        Preset("fig2_3", "twopoint", (r0, rinf), 199, ("zeros",), "two-point [199/199] zeros, opposite branches", 1),
        Preset("fig2_4", "twopoint", (r0, rinf), 199, ("poles",), "two-point [199/199] poles, opposite branches", 1),
    ]


PRESETS = {p.id: p for p in _other_presets() + _hp_presets()}


def get_preset(pid):
    try:
        return PRESETS[pid]
    except KeyError:
        raise KeyError(f"unknown preset {pid!r}") from None


# --- computation -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Computation:
    kind: str
    n: int
    ctx: PrecisionContext
    bundle: object
    zero_sets: dict


def default_context(n, bits=None):
    if bits is None and os.environ.get(BITS_ENV):
        bits = int(os.environ[BITS_ENV])
    return PrecisionContext(bits) if bits else PrecisionContext.for_degree(n)


@functools.lru_cache(maxsize=8)
def compute(kind, specs, n, bits=None):
    """Solve and extract all zero sets for one preset computation."""
    ctx = default_context(n, bits)
    if kind == "hp":
        bundle = hp_solve(specs[0], specs[1], n, ctx)
        named = {"q0": bundle.q0, "q1": bundle.q1, "q2": bundle.q2}
    elif kind == "pade":
        bundle = pade_solve(specs[0], n, ctx)
        named = {"zeros": bundle.p0, "poles": bundle.p1}
    elif kind == "twopoint":
        bundle = twopoint_solve(TwoPointProblem(specs[0], specs[1]), n, ctx)
        named = {"zeros": bundle.p, "poles": bundle.q}
    else:
        raise ValueError(f"unknown kind {kind!r}")
    work = PrecisionContext(bundle.bits, seed=ctx.seed)
    zero_sets = {k: find_roots(p, work, k) for k, p in named.items()}
    return Computation(kind, n, work, bundle, zero_sets)


def _diagnostics(comp):
    b = comp.bundle
    if comp.kind == "twopoint":
        return {"residual0": b.residual0, "residual_inf": b.residual_inf, "scale0": b.scale0, "scale_inf": b.scale_inf}
    return {"residual": b.residual, "scale": b.scale}


# --- checks --------------------------------------------------------------------------


class _Checks:
    def __init__(self):
        self.items = []

    def add(self, name, ok=None, hard=False, **values):
        self.items.append({"name": name, "ok": ok, "hard": hard, **values})

    @property
    def hard_failures(self):
        return [c["name"] for c in self.items if c["hard"] and c["ok"] is False]


def _num(x):
    return fmt(x, 6)


def _hp_checks(preset, comp, checks):
    zs = comp.zero_sets
    eps = cluster_eps(comp.ctx)
    for label in ("q0", "q1", "q2"):
        r = analysis.check_conjugate_symmetry(zs[label], eps)
        checks.add(f"conjugate_symmetry_{label}", r.ok, True, defect=_num(r.defect), tol=_num(eps))
    case = preset.specs[0].case_number
    a = preset.specs[0].a
    if len(zs["q1"]) == len(zs["q2"]):
        r = analysis.check_reflection_pairing(zs["q1"], zs["q2"], comp.ctx.zero_tol)
        checks.add("reflection_q1_q2", r.ok if case == 1 else None, case == 1, defect=_num(r.defect), tol=_num(comp.ctx.zero_tol))
    else:
        checks.add("reflection_q1_q2", False if case == 1 else None, case == 1, reason="root counts differ")
    if a < 0:
        rep = analysis.angelesco_localization([zs["q0"], zs["q1"], zs["q2"]], a)
        off = {k: len(v) for k, v in rep.offending.items()}
        checks.add("angelesco_segments", off["q1"] == 0 and off["q2"] == 0, True, offending=off)
        checks.add("angelesco_imaginary_axis_q0", off["q0"] == 0 if case == 1 else None, case == 1, offending=off["q0"])
    checks.add("lens_fraction_q2", None, False, value=analysis.lens_fraction(zs["q2"]))


def _doublet_check(preset, comp, checks, hard):
    rep = analysis.detect_froissart(comp.zero_sets["zeros"], comp.zero_sets["poles"], preset.branch_points, genus_bound=preset.genus)
    checks.add("froissart_doublets", rep.within_bound if hard else None, hard, **rep.to_dict())


def _pade_checks(preset, comp, checks):
    if preset.specs[0].is_real():
        for label in ("zeros", "poles"):
            r = analysis.check_conjugate_symmetry(comp.zero_sets[label], cluster_eps(comp.ctx))
            checks.add(f"conjugate_symmetry_{label}", r.ok, True, defect=_num(r.defect))
    _doublet_check(preset, comp, checks, hard=preset.genus is not None)
    if preset.chebotarev:
        try:
            v = analysis.estimate_chebotarev(comp.zero_sets["poles"], preset.branch_points)
            checks.add("chebotarev_point", None, False, value=[repr(v.real), repr(v.imag)])
        except ValueError as exc:
            checks.add("chebotarev_point", None, False, error=str(exc))


def _twopoint_checks(preset, comp, checks):
    if all(s.is_real() for s in preset.specs):
        for label in ("zeros", "poles"):
            r = analysis.check_conjugate_symmetry(comp.zero_sets[label], cluster_eps(comp.ctx))
            checks.add(f"conjugate_symmetry_{label}", r.ok, True, defect=_num(r.defect))
    _doublet_check(preset, comp, checks, hard=False)


CHECKS = {"hp": _hp_checks, "pade": _pade_checks, "twopoint": _twopoint_checks}


# --- running -------------------------------------------------------------------------------


@dataclass(frozen=True)
class PresetResult:
    id: str
    report: dict
    paths: dict

    @property
    def ok(self):
        return self.report["ok"]


def run_preset(pid, out_dir, n=None, bits=None, formats=FORMATS):
    """Compute one preset and write its files under ``out_dir/<id>/``.

    Returns a :class:`PresetResult`; ``result.ok`` is false when any hard
    check failed.
    """
    preset = get_preset(pid)
    unknown = set(formats) - set(FORMATS)
    if unknown:
        raise ValueError(f"unknown formats {sorted(unknown)}")
    n = preset.n if n is None else int(n)
    comp = compute(preset.kind, preset.specs, n, bits)
    checks = _Checks()
    CHECKS[preset.kind](preset, comp, checks)
    meta = {"preset": preset.id, "kind": preset.kind, "n": n, "bits": comp.ctx.bits}
    report = {
        "schema": 1,
        **meta,
        "specs": [s.to_dict() for s in preset.specs],
        "diagnostics": {k: _num(v) for k, v in _diagnostics(comp).items()},
        "root_counts": {k: len(v) for k, v in comp.zero_sets.items()},
        "checks": checks.items,
        "reference": preset.reference,
        "hard_failures": checks.hard_failures,
        "ok": not checks.hard_failures,
    }
    target = Path(out_dir) / preset.id
    target.mkdir(parents=True, exist_ok=True)
    shown = [comp.zero_sets[k] for k in preset.show]
    everything = list(comp.zero_sets.values())
    paths = {}
    writers = {
        "csv": ("zeros.csv", lambda: zerosets_to_csv(everything, meta)),
        "json": ("zeros.json", lambda: zerosets_to_json(everything, meta)),
        "svg": ("figure.svg", lambda: render_svg(shown, preset.window(), caption=f"{preset.id}: {preset.caption.replace(f'n={preset.n}', f'n={n}')}")),
    }
    for f in formats:
        name, make = writers[f]
        (target / name).write_text(make())
        paths[f] = str(target / name)
    (target / "report.json").write_text(json.dumps(report, indent=1, sort_keys=True) + "\n")
    paths["report"] = str(target / "report.json")
    return PresetResult(preset.id, report, paths)


def _run_group(ids, out_dir, n, bits, formats):
    return [run_preset(i, out_dir, n, bits, formats) for i in ids]


def run_many(ids, out_dir, n=None, bits=None, formats=FORMATS, workers=1):
    """Run presets, grouping those that share a computation onto one worker."""
    groups = {}
    for pid in ids:
        p = get_preset(pid)
        groups.setdefault((p.kind, p.specs, p.n), []).append(pid)
    batches = list(groups.values())
    if workers <= 1:
        results = [r for b in batches for r in _run_group(b, out_dir, n, bits, formats)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_group, b, out_dir, n, bits, formats) for b in batches]
            results = [r for f in futures for r in f.result()]
    order = {pid: k for k, pid in enumerate(ids)}
    return sorted(results, key=lambda r: order[r.id])


def _lens_point(case, a, n, bits):
    a = Fraction(a)
    specs = (FunctionSpec.case(case, a, 1), FunctionSpec.case(case, a, 2))
    comp = compute("hp", specs, n, bits)
    return a, analysis.lens_fraction(comp.zero_sets["q2"])


def lens_sweep(case, values, n, bits=None, workers=1):
    """Fraction of non-real ``q2`` zeros for each parameter value ``a``."""
    args = [(case, a, n, bits) for a in values]
    if workers <= 1:
        return [_lens_point(*x) for x in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_lens_point, *zip(*args)))
