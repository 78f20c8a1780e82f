"""Checks and statistics on zero sets.

Symmetry checks run in multiprecision because their tolerances can be far
below double precision; plot-scale diagnostics (doublets, Chebotarev point,
arcsine statistics) run in complex128.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import gmpy2
import numpy as np
from gmpy2 import mpc, mpfr
from scipy.spatial import ConvexHull, QhullError
from scipy.stats import kstest

from .roots import ZeroSet

__all__ = [
    "CheckResult",
    "DoubletReport",
    "EquilibriumModel",
    "AngelescoReport",
    "RateFit",
    "check_conjugate_symmetry",
    "check_reflection_pairing",
    "detect_froissart",
    "estimate_chebotarev",
    "ks_arcsine",
    "angelesco_localization",
    "rate_fit",
    "lens_fraction",
    "hausdorff",
]

JUNCTION_MAX_GAP = 5 * math.pi / 6


class CheckResult(NamedTuple):
    ok: bool
    defect: object


def _roots(zs):
    return list(zs.roots) if isinstance(zs, ZeroSet) else list(zs)


def _complex(zs):
    return np.array([complex(z) for z in _roots(zs)], dtype=complex)


def _bits(*sets):
    return max([s.bits for s in sets if isinstance(s, ZeroSet)] + [256])


def _greedy_defect(xs, ys):
    """Greedy nearest-neighbour matching of ``xs`` onto ``ys``; max distance."""
    if len(xs) != len(ys):
        raise ValueError(f"cardinality mismatch: {len(xs)} vs {len(ys)}")
    free = list(ys)
    worst = mpfr(0)
    for x in xs:
        j = min(range(len(free)), key=lambda t: abs(x - free[t]))
        worst = max(worst, abs(x - free.pop(j)))
    return worst


def check_conjugate_symmetry(zs, tol):
    """Is the multiset closed under conjugation?  Returns ``(ok, defect)``."""
    with gmpy2.context(gmpy2.get_context(), precision=_bits(zs)):
        pts = [mpc(z) for z in _roots(zs)]
        defect = _greedy_defect(pts, [z.conjugate() for z in pts])
    return CheckResult(bool(defect <= tol), defect)


def check_reflection_pairing(zs1, zs2, tol):
    """Does ``zs1`` coincide with ``{-z : z in zs2}``?  Returns ``(ok, defect)``.

    Raises
    ------
    ValueError
        If the two sets have different sizes.
    """
    with gmpy2.context(gmpy2.get_context(), precision=_bits(zs1, zs2)):
        a = [mpc(z) for z in _roots(zs1)]
        b = [-mpc(z) for z in _roots(zs2)]
        defect = _greedy_defect(a, b)
    return CheckResult(bool(defect <= tol), defect)


def hausdorff(zs1, zs2):
    """Hausdorff distance between two finite point sets (multiprecision)."""
    with gmpy2.context(gmpy2.get_context(), precision=_bits(zs1, zs2)):
        a = [mpc(z) for z in _roots(zs1)]
        b = [mpc(z) for z in _roots(zs2)]
        if not a or not b:
            raise ValueError("Hausdorff distance needs non-empty sets")
        one = max(min(abs(x - y) for y in b) for x in a)
        two = max(min(abs(x - y) for x in a) for y in b)
    return max(one, two)


# --- doublets and the Chebotarev point ------------------------------------------


@dataclass(frozen=True)
class DoubletReport:
    """Zero-pole pairs closer than ``doublet_eps``.

    ``pairs`` lists every close pair as ``(zero, pole, gap)``;
    ``far_from_branch_hull[k]`` says whether pair ``k`` keeps more than
    ``hull_margin`` from every branch point.  Only those count as doublets.
    """

    pairs: list
    far_from_branch_hull: list
    genus_bound: int | None = None
    doublet_eps: float = 1e-3
    hull_margin: float = 0.1

    @property
    def doublets(self):
        return [p for p, far in zip(self.pairs, self.far_from_branch_hull) if far]

    @property
    def count(self):
        return len(self.doublets)

    @property
    def within_bound(self):
        return self.genus_bound is None or self.count <= self.genus_bound

    def to_dict(self):
        return {
            "count": self.count,
            "genus_bound": self.genus_bound,
            "within_bound": self.within_bound,
            "doublet_eps": self.doublet_eps,
            "hull_margin": self.hull_margin,
            "pairs": [
                {
                    "zero": [repr(float(z.real)), repr(float(z.imag))],
                    "pole": [repr(float(p.real)), repr(float(p.imag))],
                    "gap": f"{float(g):.6e}",
                    "far_from_branch_points": far,
                }
                for (z, p, g), far in zip(self.pairs, self.far_from_branch_hull)
            ],
        }


def _branch_array(branch_points):
    out = []
    for b in branch_points:
        if isinstance(b, tuple):
            b = complex(float(Fraction(b[0])), float(Fraction(b[1])))
        out.append(complex(b))
    return np.array(out, dtype=complex)


def detect_froissart(zeros, poles, branch_points, doublet_eps=1e-3, hull_margin=0.1, genus_bound=None):
    """Spurious zero-pole pairs (Froissart doublets).

    Each zero is paired with its nearest pole.  A pair with gap below
    ``doublet_eps`` is a doublet when it lies farther than ``hull_margin``
    from every branch point; near the branch points the genuine zeros and
    poles themselves crowd to within ``O(1/n**2)`` of each other.
    """
    Z, P = _complex(zeros), _complex(poles)
    zr, pr = _roots(zeros), _roots(poles)
    B = _branch_array(branch_points)
    pairs, far = [], []
    if len(Z) and len(P):
        for i, z in enumerate(Z):
            j = int(np.argmin(np.abs(P - z)))
            gap = abs(zr[i] - pr[j])
            if gap < doublet_eps:
                pairs.append((zr[i], pr[j], gap))
                far.append(bool(np.min(np.abs(B - z)) > hull_margin) if len(B) else True)
    return DoubletReport(pairs, far, genus_bound, doublet_eps, hull_margin)


def _inside_hull(points, B, margin):
    """Points strictly inside the convex hull of ``B``, away from its vertices."""
    if len(B) < 3:
        return np.zeros(len(points), dtype=bool)
    try:
        hull = ConvexHull(np.column_stack([B.real, B.imag]))
    except QhullError:
        return np.zeros(len(points), dtype=bool)
    xy = np.column_stack([points.real, points.imag])
    inside = np.all(xy @ hull.equations[:, :2].T + hull.equations[:, 2] < 0, axis=1)
    away = np.min(np.abs(points[:, None] - B[None, :]), axis=1) > margin
    return inside & away


def _max_angle_gap(center, neighbours):
    ang = np.sort(np.angle(neighbours - center))
    gaps = np.diff(np.concatenate([ang, ang[:1] + 2 * math.pi]))
    return float(gaps.max())


def estimate_chebotarev(poles, branch_points, k=5, hull_margin=0.1):
    """Estimate the junction point of the arcs carrying the poles.

    Among the poles inside the branch-point convex hull (and farther than
    ``hull_margin`` from the branch points), pick the one whose ``k - 1``
    nearest neighbours surround it most evenly, i.e. with the smallest
    largest angular gap.  Poles along a single arc see a gap of about pi;
    the junction of three arcs sees gaps near 2*pi/3.  The estimate is the
    centroid of that pole and its (up to) three nearest neighbours.

    Raises
    ------
    ValueError
        With fewer than ``k`` interior poles, or when no pole looks like a
        junction (largest gap above ``5*pi/6``).
    """
    P = _complex(poles)
    B = _branch_array(branch_points)
    interior = P[_inside_hull(P, B, hull_margin)] if len(P) else P
    if len(interior) < max(k, 3):
        raise ValueError(f"need at least {max(k, 3)} interior poles, found {len(interior)}")
    m = min(k - 1, len(interior) - 1)
    best = None
    for i, c in enumerate(interior):
        d = np.abs(interior - c)
        order = np.argsort(d, kind="stable")[1 : m + 1]
        gap = _max_angle_gap(c, interior[order])
        key = (round(gap, 12), float(d[order].sum()))
        if best is None or key < best[0]:
            best = (key, i, order)
    (gap, _), i, order = best
    if len(interior) > 3 and gap > JUNCTION_MAX_GAP:
        raise ValueError("no junction among the interior poles")
    cluster = np.concatenate([[interior[i]], interior[order[:3]]])
    return complex(cluster.mean())


# --- equilibrium measure of a segment ------------------------------------------------


@dataclass(frozen=True)
class EquilibriumModel:
    """Equilibrium (arcsine) measure of a real segment ``[lo, hi]``."""

    lo: float = -1.0
    hi: float = 1.0

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("need lo < hi")

    def _to_unit(self, z):
        return (2 * np.asarray(z) - (self.lo + self.hi)) / (self.hi - self.lo)

    def cdf(self, x):
        t = np.clip(self._to_unit(np.asarray(x, dtype=float)), -1.0, 1.0)
        return np.arccos(-t) / math.pi

    def green(self, z):
        """Green's function of the complement with pole at infinity."""
        w = self._to_unit(np.asarray(z, dtype=complex))
        s = np.sqrt(w - 1) * np.sqrt(w + 1)
        return np.log(np.maximum(np.abs(w + s), np.abs(w - s)))

    @property
    def robin(self):
        """Robin constant ``-log(capacity)``; ``log 2`` for ``[-1, 1]``."""
        return math.log(4 / (self.hi - self.lo))


def ks_arcsine(zs, tol=1e-6, model=None):
    """Kolmogorov-Smirnov distance of the real parts to the arcsine law.

    Raises
    ------
    ValueError
        If some root is farther than ``tol`` from the real axis.
    """
    model = model or EquilibriumModel()
    Z = _complex(zs)
    if len(Z) == 0:
        raise ValueError("empty zero set")
    if np.max(np.abs(Z.imag)) > tol:
        raise ValueError("zero set is not real within tolerance")
    return float(kstest(np.sort(Z.real), model.cdf).statistic)


# --- Angelesco localization -------------------------------------------------------


@dataclass(frozen=True)
class AngelescoReport:
    a: float
    tol: float
    offending: dict

    @property
    def ok(self):
        return not any(self.offending.values())

    def to_dict(self):
        return {
            "a": self.a,
            "tol": self.tol,
            "ok": self.ok,
            "offending": {k: [[repr(z.real), repr(z.imag)] for z in v] for k, v in self.offending.items()},
        }


def angelesco_localization(zero_sets, a, tol=1e-6):
    """Check root locations for a disjoint-support pair (``a < 0``).

    ``zero_sets`` holds the zeros of ``(q0, q1, q2)``.  Roots of ``q1`` must be
    real and lie in ``[-1, a]``, those of ``q2`` in ``[-a, 1]``, and those of
    ``q0`` on the imaginary axis, all up to ``tol``.
    """
    a = float(Fraction(a) if not isinstance(a, float) else a)
    if a >= 0:
        raise ValueError("localization applies only to a < 0 (disjoint supports)")
    z0, z1, z2 = (_complex(zs) for zs in zero_sets)

    def bad_segment(Z, lo, hi):
        return [z for z in Z if abs(z.imag) > tol or not lo - tol <= z.real <= hi + tol]

    offending = {
        "q0": [z for z in z0 if abs(z.real) > tol],
        "q1": bad_segment(z1, -1.0, a),
        "q2": bad_segment(z2, -a, 1.0),
    }
    return AngelescoReport(a, tol, offending)


# --- convergence rates and descriptive metrics ------------------------------------


class RateFit(NamedTuple):
    slope: float
    intercept: float
    expected: float | None

    @property
    def relative_error(self):
        if self.expected is None:
            return None
        return abs(self.slope - self.expected) / abs(self.expected)


def rate_fit(ns, errors, z=None, model=None, floor=0):
    """Least-squares slope of ``log(error)`` against ``n``.

    With ``z`` given, ``expected`` is ``-2 * green(z)``, the geometric rate
    predicted for a function whose singular set is the model segment.

    Raises
    ------
    ValueError
        With fewer than 6 probes, or an error at or below ``floor`` (the fit
        would only measure round-off).
    """
    ns = np.asarray(list(ns), dtype=float)
    errors = list(errors)
    if len(errors) < 6 or len(errors) != len(ns):
        raise ValueError("need at least 6 aligned (n, error) probes")
    if any(not e > floor for e in errors):
        raise ValueError("errors must exceed the noise floor")
    logs = np.array([float(gmpy2.log(mpfr(e))) for e in errors])
    slope, intercept = np.polyfit(ns, logs, 1)
    expected = None
    if z is not None:
        expected = -2 * float((model or EquilibriumModel()).green(z))
    return RateFit(float(slope), float(intercept), expected)


def lens_fraction(zs, threshold=0.05):
    """Fraction of roots with ``|Im z| > threshold``."""
    Z = _complex(zs)
    return float(np.mean(np.abs(Z.imag) > threshold)) if len(Z) else 0.0
