"""Simultaneous polynomial root finding (Aberth-Ehrlich) in multiprecision."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import gmpy2
import numpy as np
from gmpy2 import mpc, mpfr

from .errors import ConvergenceError
from .numerics import Polynomial, as_object_array

__all__ = ["ZeroSet", "find_roots", "fujiwara_bound", "initial_approximations"]

MAX_ITER = 500

_abs = np.frompyfunc(abs, 1, 1)


@dataclass(frozen=True, eq=False)
class ZeroSet:
    """Labelled multiset of roots with per-root residuals.

    ``residuals[k]`` is ``|p(roots[k])|`` divided by the largest coefficient
    magnitude; ``multiplicity_flags[k]`` marks roots that have another root
    closer than ``cluster_eps``.
    """

    label: str
    roots: list
    residuals: list
    multiplicity_flags: list
    bits: int = 0
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.roots)

    def as_complex(self):
        """Roots as a complex128 array (for plotting and coarse statistics)."""
        return np.array([complex(z) for z in self.roots], dtype=complex)

    def relabel(self, label):
        return ZeroSet(label, self.roots, self.residuals, self.multiplicity_flags, self.bits, self.meta)


def fujiwara_bound(coeffs):
    """Fujiwara's bound on the root moduli of ``sum c_k z**k``."""
    d = len(coeffs) - 1
    lead = abs(coeffs[d])
    terms = []
    for j in range(1, d + 1):
        c = abs(coeffs[d - j]) / lead
        if j == d:
            c = c / 2
        if c > 0:
            terms.append(gmpy2.root(c, j))
    return 2 * max(terms) if terms else mpfr(0)


def _log2abs(c):
    return float(gmpy2.log2(abs(c))) if c != 0 else -math.inf


def _upper_hull(points):
    hull = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (p[0] - x1) * (y2 - y1) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def initial_approximations(coeffs, seed=0):
    """Starting points on circles from the Newton polygon of ``log|c_k|``.

    Each edge of the upper convex hull of ``(k, log2|c_k|)`` spanning ``m``
    indices contributes ``m`` equally spaced points on a circle whose radius
    is the edge's slope, capped by the Fujiwara bound.  Angles carry a
    seed-dependent offset.
    """
    d = len(coeffs) - 1
    pts = [(k, _log2abs(c)) for k, c in enumerate(coeffs) if c != 0]
    hull = _upper_hull(pts)
    cap = fujiwara_bound(coeffs)
    rng = np.random.default_rng(seed)
    sigma = 0.7 + 0.1 * rng.random()
    out = []
    two_pi = 2 * gmpy2.const_pi()
    for (k1, y1), (k2, y2) in zip(hull, hull[1:]):
        m = k2 - k1
        radius = gmpy2.exp2(mpfr((y1 - y2) / m))
        radius = min(radius, cap)
        for j in range(m):
            theta = two_pi * j / m + two_pi * k1 / d + sigma
            out.append(radius * mpc(gmpy2.cos(theta), gmpy2.sin(theta)))
    return as_object_array(out)


def _horner_pair(coeffs, z):
    """``p(z)`` and ``p'(z)`` for an object array of points."""
    p = coeffs[-1] * np.ones(len(z), dtype=object)
    dp = 0 * p
    for c in coeffs[-2::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _horner_abs(abscoeffs, r):
    acc = abscoeffs[-1] * np.ones(len(r), dtype=object)
    for c in abscoeffs[-2::-1]:
        acc = acc * r + c
    return acc


def _aberth(coeffs, z, ctx, max_iter):
    d = len(coeffs) - 1
    abscoeffs = _abs(coeffs)
    step_tol = ctx.eps(0.5)
    round_tol = 8 * d * ctx.eps(1)
    active = np.ones(d, dtype=bool)
    one = mpfr(1)
    for it in range(1, max_iter + 1):
        idx = np.nonzero(active)[0]
        za = z[idx]
        p, dp = _horner_pair(coeffs, za)
        diff = za[:, None] - z[None, :]
        diff[np.arange(len(idx)), idx] = one
        inv = 1 / diff
        inv[np.arange(len(idx)), idx] = 0
        sums = inv.sum(axis=1)
        newton = p / dp
        w = newton / (1 - newton * sums)
        mag = _abs(za)
        small_step = _abs(w) <= step_tol * np.maximum(mag, one)
        at_noise = _abs(p) <= round_tol * _horner_abs(abscoeffs, mag)
        z[idx] = za - w
        done = np.asarray(small_step | at_noise, dtype=bool)
        active[idx[done]] = False
        if not active.any():
            return z, it
    p, _ = _horner_pair(coeffs, z)
    worst = max(abs(v) for v in p) / max(abscoeffs)
    raise ConvergenceError(worst, max_iter)


def _polish(coeffs, z):
    p, dp = _horner_pair(coeffs, z)
    out = z.copy()
    for k in range(len(z)):
        if dp[k] == 0:
            continue
        cand = z[k] - p[k] / dp[k]
        pc, _ = _horner_pair(coeffs, as_object_array([cand]))
        if abs(pc[0]) <= abs(p[k]):
            out[k] = cand
    return out


def find_roots(p, ctx, label="", max_iter=MAX_ITER):
    """All roots of ``p`` by Aberth-Ehrlich iteration.

    Leading coefficients below ``zero_tol * max|c|`` are dropped (roots at
    infinity); low-order coefficients below the same threshold are recorded
    as exact roots at the origin.  The iteration stops per root once its
    correction is below ``2**(-bits/2)`` relative, or ``|p|`` is at the
    rounding level; one guarded Newton step follows.

    Raises
    ------
    ValueError
        If nothing of positive degree remains after stripping.
    ConvergenceError
        If some root is still moving after ``max_iter`` sweeps.
    """
    coeffs = p.coeffs if isinstance(p, Polynomial) else as_object_array(p)
    with ctx.activate():
        coeffs = as_object_array(mpc(c) for c in coeffs)
        scale = max(abs(c) for c in coeffs)
        if scale == 0:
            raise ValueError("zero polynomial has no roots")
        tol = ctx.zero_tol * scale
        top = max(k for k, c in enumerate(coeffs) if abs(c) > tol)
        low = min(k for k, c in enumerate(coeffs) if abs(c) > tol)
        if top < 1:
            raise ValueError("polynomial has degree < 1 after stripping")
        core = coeffs[low : top + 1]
        roots = []
        if len(core) > 1:
            z0 = initial_approximations(core, ctx.seed)
            z, _ = _aberth(core, z0, ctx, max_iter)
            roots = list(_polish(core, z))
        roots = [mpc(0)] * low + roots
        roots = sorted(roots, key=lambda r: (float(r.real), float(r.imag)))
        zs = as_object_array(roots)
        pv, _ = _horner_pair(coeffs[: top + 1], zs)
        residuals = [abs(v) / scale for v in pv]
        flags = _cluster_flags(roots, ctx)
    return ZeroSet(label, roots, residuals, flags, ctx.bits)


def cluster_eps(ctx):
    return ctx.eps(1 / 8)


def _cluster_flags(roots, ctx):
    eps = cluster_eps(ctx)
    flags = []
    for i, r in enumerate(roots):
        lim = eps * max(mpfr(1), abs(r))
        flags.append(any(abs(r - s) < lim for j, s in enumerate(roots) if j != i))
    return flags
