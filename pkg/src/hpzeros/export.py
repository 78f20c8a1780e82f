"""Serialization of solver output and zero sets, and SVG scatter plots.

All writers are deterministic: no timestamps, fixed key order, fixed number
formatting.  CSV coordinates carry 40 significant digits; JSON carries
enough digits to reload values at their working precision.
"""

from __future__ import annotations

import csv
import io
import json
import math

import gmpy2
from gmpy2 import mpc, mpfr

from .numerics import Polynomial
from .roots import ZeroSet

__all__ = [
    "SCHEMA",
    "CSV_FIELDS",
    "DEFAULT_STYLE",
    "fmt",
    "zerosets_to_csv",
    "zerosets_to_json",
    "zerosets_from_json",
    "bundle_to_json",
    "bundle_from_json",
    "render_svg",
    "auto_window",
]

SCHEMA = 1
CSV_FIELDS = ("label", "re", "im", "residual", "multiplicity")
CSV_DIGITS = 40
DEFAULT_STYLE = {
    "q0": "blue",
    "q1": "red",
    "q2": "black",
    "zeros": "blue",
    "poles": "red",
}
FALLBACK_COLOR = "gray"


def _digits(bits):
    return int(bits * math.log10(2)) + 3


def fmt(x, digits=CSV_DIGITS):
    """Decimal string with ``digits`` significant digits."""
    return format(mpfr(x) if not isinstance(x, mpfr) else x, f".{digits}g")


def _pair(z, digits):
    # Never pass through mpc(): that would round to the ambient precision.
    if isinstance(z, mpc):
        return [fmt(z.real, digits), fmt(z.imag, digits)]
    if isinstance(z, mpfr):
        return [fmt(z, digits), "0"]
    z = complex(z)
    return [fmt(z.real, digits), fmt(z.imag, digits)]


def _meta_lines(meta):
    return [f"# {k}={meta[k]}" for k in sorted(meta)]


# --- zero sets ------------------------------------------------------------------


def zerosets_to_csv(zero_sets, meta=None):
    """CSV text: optional ``# key=value`` lines, then one row per root."""
    buf = io.StringIO()
    for line in _meta_lines(meta or {}):
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for zs in zero_sets:
        for z, r, m in zip(zs.roots, zs.residuals, zs.multiplicity_flags):
            w.writerow([zs.label, *_pair(z, CSV_DIGITS), fmt(r, 6), int(bool(m))])
    return buf.getvalue()


def _zeroset_dict(zs):
    d = _digits(zs.bits or 256)
    return {
        "label": zs.label,
        "bits": zs.bits,
        "roots": [_pair(z, d) for z in zs.roots],
        "residuals": [fmt(r, 6) for r in zs.residuals],
        "multiplicity_flags": [bool(m) for m in zs.multiplicity_flags],
    }


def zerosets_to_json(zero_sets, meta=None):
    doc = {"schema": SCHEMA, "kind": "zerosets", "meta": meta or {}}
    doc["zero_sets"] = [_zeroset_dict(zs) for zs in zero_sets]
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def zerosets_from_json(text):
    doc = json.loads(text)
    _check_schema(doc, "zerosets")
    out = []
    for d in doc["zero_sets"]:
        bits = int(d["bits"]) or 256
        with gmpy2.context(gmpy2.get_context(), precision=bits):
            roots = [mpc(mpfr(re), mpfr(im)) for re, im in d["roots"]]
            res = [mpfr(r) for r in d["residuals"]]
        out.append(ZeroSet(d["label"], roots, res, list(d["multiplicity_flags"]), bits))
    return out, doc.get("meta", {})


# --- solver bundles (HPTriple, PadePair, TwoPointPair) ------------------------------


def _check_schema(doc, kind=None):
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    if kind is not None and doc.get("kind") != kind:
        raise ValueError(f"expected a {kind!r} document, got {doc.get('kind')!r}")


def bundle_to_json(kind, polys, bits, n, diagnostics=None, specs=(), meta=None):
    """Polynomials plus diagnostics as a JSON document.

    ``polys`` maps labels (``q0``, ``p0``, ...) to :class:`Polynomial`.
    """
    d = _digits(bits)
    doc = {
        "schema": SCHEMA,
        "kind": kind,
        "n": n,
        "bits": bits,
        "specs": [s.to_dict() for s in specs],
        "diagnostics": {k: fmt(v, 6) for k, v in (diagnostics or {}).items()},
        "polynomials": {k: [_pair(c, d) for c in p.coeffs] for k, p in polys.items()},
        "meta": meta or {},
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def bundle_from_json(text):
    """Inverse of :func:`bundle_to_json`: ``(kind, {label: Polynomial}, bits, doc)``."""
    doc = json.loads(text)
    _check_schema(doc)
    bits = int(doc["bits"])
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        polys = {
            k: Polynomial([mpc(mpfr(re), mpfr(im)) for re, im in coeffs])
            for k, coeffs in doc["polynomials"].items()
        }
    return doc["kind"], polys, bits, doc


# --- SVG ------------------------------------------------------------------------------

SIZE = 1200
MARGIN = 90
RADIUS = 3


def auto_window(points, pad=0.25, minimum=1.0):
    """Square window around ``points`` (complex), half-width at least ``minimum``."""
    pts = [complex(p) for p in points]
    if not pts:
        return (-2.0, 2.0, -2.0, 2.0)
    cx = sum(p.real for p in pts) / len(pts)
    cy = sum(p.imag for p in pts) / len(pts)
    half = max([minimum] + [max(abs(p.real - cx), abs(p.imag - cy)) for p in pts]) * (1 + pad)
    return (cx - half, cx + half, cy - half, cy + half)


def _nice_step(span):
    raw = span / 8
    mag = 10 ** math.floor(math.log10(raw))
    for m in (1, 2, 5, 10):
        if m * mag >= raw:
            return m * mag
    return 10 * mag


def _num(v):
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def _escape(text):
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_svg(zero_sets, window=None, style=None, caption=""):
    """Scatter plot of zero sets as a standalone SVG document.

    Parameters
    ----------
    zero_sets : list of ZeroSet
        Drawn in order; the colour is looked up by label in ``style``.
    window : (xmin, xmax, ymin, ymax), optional
        Plot rectangle in the complex plane; points outside are skipped.
    style : dict, optional
        Label to colour; defaults to :data:`DEFAULT_STYLE`.
    caption : str
    """
    style = {**DEFAULT_STYLE, **(style or {})}
    if window is None:
        window = auto_window([complex(z) for zs in zero_sets for z in zs.roots])
    x0, x1, y0, y1 = (float(v) for v in window)
    if not (x1 > x0 and y1 > y0):
        raise ValueError("window must have positive width and height")
    inner = SIZE - 2 * MARGIN

    def sx(x):
        return MARGIN + (x - x0) / (x1 - x0) * inner

    def sy(y):
        return SIZE - MARGIN - (y - y0) / (y1 - y0) * inner

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{inner}" height="{inner}" fill="none" stroke="black" stroke-width="1"/>',
    ]
    if x0 < 0 < x1:
        out.append(f'<line x1="{_num(sx(0))}" y1="{MARGIN}" x2="{_num(sx(0))}" y2="{SIZE - MARGIN}" stroke="#999" stroke-width="1"/>')
    if y0 < 0 < y1:
        out.append(f'<line x1="{MARGIN}" y1="{_num(sy(0))}" x2="{SIZE - MARGIN}" y2="{_num(sy(0))}" stroke="#999" stroke-width="1"/>')
    for lo, hi, horizontal in ((x0, x1, True), (y0, y1, False)):
        step = _nice_step(hi - lo)
        k = math.ceil(lo / step)
        while k * step <= hi + 1e-12:
            v = k * step
            if horizontal:
                px = _num(sx(v))
                out.append(f'<line x1="{px}" y1="{SIZE - MARGIN}" x2="{px}" y2="{SIZE - MARGIN + 8}" stroke="black"/>')
                out.append(f'<text x="{px}" y="{SIZE - MARGIN + 26}" font-size="16" text-anchor="middle">{v:g}</text>')
            else:
                py = _num(sy(v))
                out.append(f'<line x1="{MARGIN - 8}" y1="{py}" x2="{MARGIN}" y2="{py}" stroke="black"/>')
                out.append(f'<text x="{MARGIN - 12}" y="{py}" font-size="16" text-anchor="end" dominant-baseline="middle">{v:g}</text>')
            k += 1
    skipped = 0
    for zs in zero_sets:
        color = style.get(zs.label, FALLBACK_COLOR)
        out.append(f'<g fill="{color}" data-label="{_escape(zs.label)}">')
        for z in zs.roots:
            x, y = float(mpc(z).real), float(mpc(z).imag)
            if not (x0 <= x <= x1 and y0 <= y <= y1):
                skipped += 1
                continue
            out.append(f'<circle cx="{_num(sx(x))}" cy="{_num(sy(y))}" r="{RADIUS}"/>')
        out.append("</g>")
    text = caption + (f" ({skipped} points outside the window)" if skipped else "")
    if text:
        out.append(f'<text x="{SIZE // 2}" y="{MARGIN // 2}" font-size="20" text-anchor="middle">{_escape(text)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
