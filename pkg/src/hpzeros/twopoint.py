"""Two-point diagonal Padé approximants at the origin and infinity.

Find ``P, Q`` of degree ``<= n`` with ``R = Q f - P`` satisfying

* ``R = O(z**n)`` at the origin, using the germ ``f0`` (``n`` conditions), and
* ``R = O(1/z)`` at infinity, using the germ ``f_inf`` (``n + 1`` conditions).

``split="footnote"`` moves one condition to the origin: ``O(z**(n+1))`` there
and ``O(1)`` at infinity.  Columns hold ``P`` then ``Q``, both ascending; rows
list the origin conditions by increasing power, then the infinity conditions
from ``z**n`` downwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from gmpy2 import mpfr

from .errors import PrecisionExhausted, SeriesTruncated
from .germs import build_germ
from .linsys import nullvector
from .numerics import INF, ORIGIN, PrecisionContext, Polynomial, abs_series, polynomial_series

__all__ = ["TwoPointProblem", "TwoPointPair", "twopoint_build_matrix", "twopoint_solve"]

EXTRA_TERMS = 4
SPLITS = ("displayed", "footnote")


@dataclass(frozen=True)
class TwoPointProblem:
    """Germ pair ``{f0, f_inf}`` with interpolation weights fixed at (1/2, 1/2)."""

    f0: object
    f_inf: object
    weights: tuple = (Fraction(1, 2), Fraction(1, 2))

    def __post_init__(self):
        if tuple(Fraction(w) for w in self.weights) != (Fraction(1, 2), Fraction(1, 2)):
            raise ValueError("only the symmetric weights (1/2, 1/2) are supported")


@dataclass(frozen=True, eq=False)
class TwoPointPair:
    """``B_n = p/q`` with residuals certified separately on both windows."""

    n: int
    p: Polynomial
    q: Polynomial
    residual0: object
    residual_inf: object
    scale0: object
    scale_inf: object
    counts: tuple
    bits: int
    meta: dict = field(default_factory=dict)

    @property
    def polys(self):
        return (self.p, self.q)

    def __call__(self, z):
        return self.p(z) / self.q(z)


def _counts(n, split):
    if split not in SPLITS:
        raise ValueError(f"split must be one of {SPLITS}")
    return (n, n + 1) if split == "displayed" else (n + 1, n)


def _windows(n, split):
    at0, atinf = _counts(n, split)
    return list(range(at0)), list(range(n, n - atinf, -1))


def twopoint_build_matrix(g0, ginf, n, split="displayed"):
    """``(2n+1) x (2n+2)`` matrix of the interpolation conditions."""
    if g0.center != ORIGIN or ginf.center != INF:
        raise ValueError("need a germ at the origin and a germ at infinity")
    w0, winf = _windows(n, split)
    if w0 and not g0.available(w0[-1]):
        raise SeriesTruncated(f"origin germ must be known through z**{w0[-1]}")
    if winf and not ginf.available(winf[-1] - n):
        raise SeriesTruncated(f"germ at infinity must be known through z**{winf[-1] - n}")
    size = n + 1
    M = np.empty((len(w0) + len(winf), 2 * size), dtype=object)
    zero, minus = mpfr(0), mpfr(-1)
    r = 0
    for germ, window in ((g0, w0), (ginf, winf)):
        for m in window:
            for i in range(size):
                M[r, i] = minus if m == i else zero
                M[r, size + i] = germ.coeff(m - i)
            r += 1
    return M


def _remainder(p, q, germ):
    order = germ.order
    ps = polynomial_series(p, germ.center, order)
    qs = polynomial_series(q, germ.center, order)
    R = qs * germ - ps
    major = abs_series(qs) * abs_series(germ) + abs_series(ps)
    return R, major


def _check(R, major, window):
    if not window:
        return mpfr(0), mpfr(1)
    return max(abs(R.coeff(m)) for m in window), max(major.coeff(m) for m in window)


def twopoint_solve_series(g0, ginf, n, ctx, split="displayed"):
    with ctx.activate():
        M = twopoint_build_matrix(g0, ginf, n, split)
    v = nullvector(M, ctx)
    size = n + 1
    w0, winf = _windows(n, split)
    with ctx.activate():
        p, q = Polynomial(v[:size]), Polynomial(v[size:])
        res0, scale0 = _check(*_remainder(p, q, g0), w0)
        resi, scalei = _check(*_remainder(p, q, ginf), winf)
        for res, scale in ((res0, scale0), (resi, scalei)):
            if res > ctx.zero_tol * scale:
                raise PrecisionExhausted(res, ctx.bits)
    return TwoPointPair(n, p, q, res0, resi, scale0, scalei, (len(w0), len(winf)), ctx.bits)


def twopoint_solve(prob, n, ctx=None, split="displayed"):
    """Two-point Padé approximant ``B_n`` for ``prob``.

    ``prob.f0``/``prob.f_inf`` may be FunctionSpecs (expanded at each
    attempted precision, one doubling allowed) or ready-made GermSeries.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    ctx = ctx or PrecisionContext.for_degree(n)
    if not hasattr(prob.f0, "family"):
        return twopoint_solve_series(prob.f0, prob.f_inf, n, ctx, split)
    order = n + 2 + EXTRA_TERMS
    last = None
    for attempt in (ctx, ctx.doubled()):
        with attempt.activate():
            g0 = build_germ(prob.f0, ORIGIN, order)
            ginf = build_germ(prob.f_inf, INF, order)
        try:
            return twopoint_solve_series(g0, ginf, n, attempt, split)
        except PrecisionExhausted as exc:
            last = exc
    raise last
