"""Command-line interface (``hpzeros``)."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import analysis
from .errors import HPError
from .export import (
    bundle_from_json,
    bundle_to_json,
    render_svg,
    zerosets_from_json,
    zerosets_to_csv,
    zerosets_to_json,
)
from .germs import CASE_FAMILIES, FunctionSpec
from .hermite_pade import hp_solve
from .pade import pade_solve
from .presets import FORMATS, PRESETS, default_context, lens_sweep, run_many
from .roots import find_roots
from .twopoint import TwoPointProblem, twopoint_solve


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _formats(text):
    out = tuple(f for f in text.split(",") if f)
    bad = [f for f in out if f not in FORMATS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown format(s) {bad}; choose from {FORMATS}")
    return out


def _complex(text):
    re, _, im = text.partition(",")
    return complex(float(re), float(im or 0))


def _spec_from_args(args, index=1):
    if getattr(args, "spec", None):
        return FunctionSpec.from_json(Path(args.spec).read_text())
    if args.family not in CASE_FAMILIES:
        raise SystemExit("--family must name a Markov family unless --spec is given")
    return FunctionSpec.case(CASE_FAMILIES[args.family], args.a, index)


def _write_zero_sets(zero_sets, out, formats, meta):
    out.mkdir(parents=True, exist_ok=True)
    if "csv" in formats:
        (out / "zeros.csv").write_text(zerosets_to_csv(zero_sets, meta))
    if "json" in formats:
        (out / "zeros.json").write_text(zerosets_to_json(zero_sets, meta))
    if "svg" in formats:
        (out / "figure.svg").write_text(render_svg(zero_sets, caption=meta.get("title", "")))


def _solve_and_write(kind, bundle, polys, specs, args, diagnostics):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{kind}.json").write_text(bundle_to_json(kind, polys, bundle.bits, args.n, diagnostics, specs))
    meta = {"kind": kind, "n": args.n, "bits": bundle.bits}
    ctx = default_context(args.n, bundle.bits)
    zero_sets = [find_roots(p, ctx, label) for label, p in polys.items()]
    _write_zero_sets(zero_sets, out, args.format, meta)
    summary = {"kind": kind, "n": args.n, "bits": bundle.bits, "roots": {z.label: len(z) for z in zero_sets}}
    summary.update({k: f"{float(v):.3e}" for k, v in diagnostics.items()})
    print(json.dumps(summary, sort_keys=True))
    return 0


def cmd_hp(args):
    s1, s2 = _spec_from_args(args, 1), _spec_from_args(args, 2)
    t = hp_solve(s1, s2, args.n, default_context(args.n, args.bits))
    polys = {"q0": t.q0, "q1": t.q1, "q2": t.q2}
    return _solve_and_write("hp", t, polys, (s1, s2), args, {"residual": t.residual, "scale": t.scale})


def cmd_pade(args):
    s = _spec_from_args(args, args.index)
    p = pade_solve(s, args.n, default_context(args.n, args.bits))
    polys = {"zeros": p.p0, "poles": p.p1}
    return _solve_and_write("pade", p, polys, (s,), args, {"residual": p.residual, "scale": p.scale})


def cmd_twopoint(args):
    f0 = FunctionSpec.from_json(Path(args.spec0).read_text())
    finf = FunctionSpec.from_json(Path(args.spec_inf).read_text())
    tp = twopoint_solve(TwoPointProblem(f0, finf), args.n, default_context(args.n, args.bits), args.split)
    polys = {"zeros": tp.p, "poles": tp.q}
    diag = {"residual0": tp.residual0, "residual_inf": tp.residual_inf}
    return _solve_and_write("twopoint", tp, polys, (f0, finf), args, diag)


def cmd_roots(args):
    kind, polys, bits, doc = bundle_from_json(Path(args.input).read_text())
    ctx = default_context(doc.get("n", 0), args.bits or bits)
    zero_sets = [find_roots(p, ctx, label) for label, p in polys.items()]
    _write_zero_sets(zero_sets, Path(args.out), args.format, {"kind": kind, "n": doc.get("n"), "bits": ctx.bits})
    print(json.dumps({z.label: len(z) for z in zero_sets}, sort_keys=True))
    return 0


def cmd_analyze(args):
    zero_sets, meta = zerosets_from_json(Path(args.input).read_text())
    by_label = {z.label: z for z in zero_sets}
    report = {"input": str(args.input), "meta": meta, "conjugate_symmetry": {}}
    for z in zero_sets:
        r = analysis.check_conjugate_symmetry(z, args.tol)
        report["conjugate_symmetry"][z.label] = {"ok": r.ok, "defect": f"{float(r.defect):.3e}"}
    branch = [_complex(b) for b in args.branch]
    if "zeros" in by_label and "poles" in by_label:
        rep = analysis.detect_froissart(by_label["zeros"], by_label["poles"], branch, args.doublet_eps, args.hull_margin, args.genus)
        report["froissart"] = rep.to_dict()
    if args.chebotarev:
        try:
            v = analysis.estimate_chebotarev(by_label["poles"], branch)
            report["chebotarev"] = [v.real, v.imag]
        except (KeyError, ValueError) as exc:
            report["chebotarev"] = {"error": str(exc)}
    if args.reflection and {"q1", "q2"} <= by_label.keys():
        r = analysis.check_reflection_pairing(by_label["q1"], by_label["q2"], args.tol)
        report["reflection_q1_q2"] = {"ok": r.ok, "defect": f"{float(r.defect):.3e}"}
    if args.angelesco is not None:
        rep = analysis.angelesco_localization([by_label["q0"], by_label["q1"], by_label["q2"]], args.angelesco)
        report["angelesco"] = rep.to_dict()
    for label in args.ks:
        try:
            report.setdefault("ks_arcsine", {})[label] = analysis.ks_arcsine(by_label[label])
        except ValueError as exc:
            report.setdefault("ks_arcsine", {})[label] = {"error": str(exc)}
    text = json.dumps(report, indent=1, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_preset(args):
    if args.list or not args.ids:
        for pid, p in PRESETS.items():
            print(f"{pid:8s} {p.kind:9s} n={p.n:<4d} {p.caption}")
        return 0
    results = run_many(args.ids, args.out, args.n, args.bits, args.format, workers=1)
    return _summarize(results)


def _summarize(results):
    bad = 0
    for r in results:
        status = "ok" if r.ok else "FAILED " + ",".join(r.report["hard_failures"])
        print(f"{r.id}: {status} ({r.paths['report']})")
        bad += not r.ok
    return 1 if bad else 0


def cmd_sweep(args):
    if args.a_range:
        start, stop, step = (Fraction(x) for x in args.a_range.split(":"))
        values, a = [], start
        while a <= stop:
            values.append(a)
            a += step
        case = CASE_FAMILIES[args.family]
        rows = lens_sweep(case, values, args.n or 40, args.bits, args.workers)
        lines = ["a,lens_fraction_q2"] + [f"{float(a):g},{frac:.6f}" for a, frac in rows]
        text = "\n".join(lines) + "\n"
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"lens_sweep_{args.family}.csv").write_text(text)
        sys.stdout.write(text)
        return 0
    ids = list(PRESETS) if args.presets == "all" else [p for p in args.presets.split(",") if p]
    results = run_many(ids, args.out, args.n, args.bits, args.format, workers=args.workers)
    return _summarize(results)


def build_parser():
    p = argparse.ArgumentParser(prog="hpzeros", description="Hermite-Pade, Pade and two-point Pade zero distributions.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_n=True):
        if with_n:
            sp.add_argument("--n", type=int, required=True, help="degree bound")
        sp.add_argument("--bits", type=int, default=None, help="working precision (default max(512, 24n), or $HP_BITS)")
        sp.add_argument("--out", default="out", help="output directory")
        sp.add_argument("--format", type=_formats, default=FORMATS, help="comma list of csv,json,svg")

    def family(sp):
        sp.add_argument("--family", choices=sorted(CASE_FAMILIES), default="markov_log")
        sp.add_argument("--a", type=_fraction, default=Fraction(1, 5), help="parameter as num/den (write --a=-1/10 for negative values)")

    sp = sub.add_parser("hp", help="type I Hermite-Pade polynomials for a Markov pair")
    family(sp)
    common(sp)
    sp.set_defaults(func=cmd_hp)

    sp = sub.add_parser("pade", help="diagonal Pade approximant at infinity")
    family(sp)
    sp.add_argument("--index", type=int, choices=(1, 2), default=1)
    sp.add_argument("--spec", help="FunctionSpec JSON file (overrides --family)")
    common(sp)
    sp.set_defaults(func=cmd_pade)

    sp = sub.add_parser("twopoint", help="two-point Pade approximant at 0 and infinity")
    sp.add_argument("--spec0", required=True, help="FunctionSpec JSON for the germ at 0")
    sp.add_argument("--spec-inf", required=True, help="FunctionSpec JSON for the germ at infinity")
    sp.add_argument("--split", choices=("displayed", "footnote"), default="displayed")
    common(sp)
    sp.set_defaults(func=cmd_twopoint)

    sp = sub.add_parser("roots", help="roots of every polynomial in a solver JSON file")
    sp.add_argument("input")
    common(sp, with_n=False)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("analyze", help="checks on a zero-set JSON file")
    sp.add_argument("input")
    sp.add_argument("--tol", type=float, default=1e-20)
    sp.add_argument("--branch", action="append", default=[], help="branch point re,im (repeatable; --branch=-1,0 for a negative real part)")
    sp.add_argument("--genus", type=int, default=None)
    sp.add_argument("--doublet-eps", type=float, default=1e-3)
    sp.add_argument("--hull-margin", type=float, default=0.1)
    sp.add_argument("--chebotarev", action="store_true")
    sp.add_argument("--reflection", action="store_true")
    sp.add_argument("--angelesco", type=_fraction, default=None, help="parameter a < 0")
    sp.add_argument("--ks", action="append", default=[], help="label to test against the arcsine law")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("preset", help="reproduce one or more figures")
    sp.add_argument("ids", nargs="*")
    sp.add_argument("--list", action="store_true")
    sp.add_argument("--n", type=int, default=None, help="override the figure's degree")
    common(sp, with_n=False)
    sp.set_defaults(func=cmd_preset)

    sp = sub.add_parser("sweep", help="run many presets in parallel, or sweep a for the lens metric")
    sp.add_argument("--presets", default="all", help="'all' or a comma list of preset ids")
    sp.add_argument("--workers", type=int, default=2)
    sp.add_argument("--n", type=int, default=None)
    family(sp)
    sp.add_argument("--a-range", default=None, help="start:stop:step for a lens sweep, e.g. 3/5:3/4:1/100")
    common(sp, with_n=False)
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HPError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
