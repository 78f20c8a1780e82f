"""Diagonal Padé approximants ``[n/n]`` at infinity.

``p0 + p1 f = O(z**-(n+1))`` with ``deg p0, deg p1 <= n``; the approximant is
``-p0/p1``.  Rows enforce the coefficients of ``z**m``, ``m = n, ..., -n``;
columns hold ``p0`` then ``p1``, both ascending.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpc, mpfr

from .errors import PrecisionExhausted, SeriesTruncated
from .germs import build_germ
from .linsys import nullvector
from .numerics import INF, GermSeries, PrecisionContext, Polynomial, abs_series, polynomial_series

__all__ = ["PadePair", "pade_build_matrix", "pade_solve", "pade_error_probe"]

EXTRA_TERMS = 4
DEFAULT_PROBES = (2, 1 + 1j, -3j)


@dataclass(frozen=True, eq=False)
class PadePair:
    """``p0``, ``p1`` with ``[n/n] = -p0/p1``; never reduced to lowest terms."""

    n: int
    p0: Polynomial
    p1: Polynomial
    remainder_coeffs: list
    residual: object
    scale: object
    bits: int
    meta: dict = field(default_factory=dict)

    @property
    def polys(self):
        return (self.p0, self.p1)

    def __call__(self, z):
        return -self.p0(z) / self.p1(z)


def _window(n):
    return range(n, -n - 1, -1)


def pade_build_matrix(s, n):
    """``(2n+1) x (2n+2)`` matrix of the linearised Padé conditions."""
    if s.center != INF:
        raise ValueError("Padé germs must be expanded at infinity")
    if not s.available(-2 * n):
        raise SeriesTruncated(f"series must be known through z**-{2 * n}")
    size = n + 1
    rows = list(_window(n))
    M = np.empty((len(rows), 2 * size), dtype=object)
    zero, one = mpfr(0), mpfr(1)
    for r, m in enumerate(rows):
        for i in range(size):
            M[r, i] = one if m == i else zero
            M[r, size + i] = s.coeff(m - i)
    return M


def _certify(p0, p1, s, n):
    order = s.order
    a = polynomial_series(p0, INF, order)
    b = polynomial_series(p1, INF, order)
    R = a + b * s
    major = abs_series(a) + abs_series(b) * abs_series(s)
    window = list(_window(n))
    residual = max(abs(R.coeff(m)) for m in window)
    scale = max(major.coeff(m) for m in window)
    tail = []
    m = -n - 1
    while R.available(m) and len(tail) < EXTRA_TERMS:
        tail.append(R.coeff(m))
        m -= 1
    return residual, scale, tail


def _solve_series(s, n, ctx):
    with ctx.activate():
        M = pade_build_matrix(s, n)
    v = nullvector(M, ctx)
    size = n + 1
    with ctx.activate():
        p0, p1 = Polynomial(v[:size]), Polynomial(v[size:])
        residual, scale, tail = _certify(p0, p1, s, n)
        if residual > ctx.zero_tol * scale:
            raise PrecisionExhausted(residual, ctx.bits)
    return PadePair(n, p0, p1, tail, residual, scale, ctx.bits)


def pade_solve(f, n, ctx=None):
    """Diagonal Padé approximant of order ``n``.

    Parameters
    ----------
    f : FunctionSpec or GermSeries
        A spec is expanded at each attempted precision, allowing one
        precision doubling; a raw series is solved once at ``ctx``.
    n : int
    ctx : PrecisionContext, optional

    Raises
    ------
    NonGenericError, PrecisionExhausted
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    ctx = ctx or PrecisionContext.for_degree(n)
    if isinstance(f, GermSeries):
        return _solve_series(f, n, ctx)
    order = 2 * n + 1 + EXTRA_TERMS
    last = None
    for attempt in (ctx, ctx.doubled()):
        with attempt.activate():
            s = build_germ(f, INF, order)
        try:
            return _solve_series(s, n, attempt)
        except PrecisionExhausted as exc:
            last = exc
    raise last


def pade_error_probe(pair, z, f_value, ctx=None):
    """``|f(z) - [n/n](z)|`` for a caller-supplied exact value ``f(z)``.

    Raises
    ------
    ZeroDivisionError
        If ``|p1(z)|`` is below ``zero_tol`` times the size of ``p1``: the
        probe sits on a pole.
    """
    ctx = ctx or PrecisionContext(pair.bits)
    with ctx.activate():
        z = mpc(z)
        den = pair.p1(z)
        if abs(den) <= ctx.zero_tol * pair.p1.max_norm():
            raise ZeroDivisionError("probe point lands on a pole of the approximant")
        return abs(mpc(f_value) + pair.p0(z) / den)
