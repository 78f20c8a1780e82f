"""Type I Hermite-Padé polynomials for the collection ``[1, f1, f2]`` at infinity.

The unknowns are the coefficients of ``q0, q1, q2`` (degree ``<= n``) such that
``R = q0 + q1 f1 + q2 f2 = O(z**-(2n+2))``.  Equivalently the coefficients of
``z**m`` in ``R`` vanish for ``m = n, n-1, ..., -(2n+1)``: ``3n + 2``
homogeneous equations in ``3n + 3`` unknowns.

Matrix layout (fixed, so that matrices are reproducible):

* row ``r`` enforces the coefficient of ``z**(n - r)``;
* columns ``0..n`` hold ``q0`` in ascending powers, then ``q1``, then ``q2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpfr

from .errors import PrecisionExhausted, SeriesTruncated
from .germs import build_germ
from .linsys import nullvector
from .numerics import INF, PrecisionContext, Polynomial, abs_series, polynomial_series

__all__ = ["HPTriple", "hp_build_matrix", "hp_solve", "hp_solve_series", "hp_remainder"]

EXTRA_TERMS = 4


@dataclass(frozen=True, eq=False)
class HPTriple:
    """Solution of the type I problem plus diagnostics.

    Attributes
    ----------
    n : int
    q0, q1, q2 : Polynomial
    remainder_coeffs : list
        Coefficients of ``z**-(2n+2)``, ``z**-(2n+3)``, ... of the remainder,
        i.e. just beyond the enforced window.
    residual : mpfr
        Largest enforced remainder coefficient, recomputed by series
        multiplication.
    scale : mpfr
        Largest coefficientwise sum of absolute contributions in the window.
    bits : int
        Precision actually used.
    """

    n: int
    q0: Polynomial
    q1: Polynomial
    q2: Polynomial
    remainder_coeffs: list
    residual: object
    scale: object
    bits: int
    meta: dict = field(default_factory=dict)

    @property
    def polys(self):
        return (self.q0, self.q1, self.q2)


def _window(n):
    return range(n, -(2 * n + 1) - 1, -1)


def hp_build_matrix(s1, s2, n):
    """``(3n+2) x (3n+3)`` coefficient matrix of the type I conditions.

    Raises
    ------
    SeriesTruncated
        If either series is not known through ``z**-(3n+1)``.
    """
    for s in (s1, s2):
        if s.center != INF:
            raise ValueError("Hermite-Padé germs must be expanded at infinity")
        if not s.available(-(3 * n + 1)):
            raise SeriesTruncated(f"series must be known through z**-{3 * n + 1}")
    size = n + 1
    rows = list(_window(n))
    M = np.empty((len(rows), 3 * size), dtype=object)
    zero = mpfr(0)
    one = mpfr(1)
    for r, m in enumerate(rows):
        for i in range(size):
            M[r, i] = one if m == i else zero
            M[r, size + i] = s1.coeff(m - i)
            M[r, 2 * size + i] = s2.coeff(m - i)
    return M


def hp_remainder(polys, germs):
    """Series of ``q0 + q1 f1 + q2 f2`` and of its absolute-value majorant."""
    order = min(g.order for g in germs)
    total = polynomial_series(polys[0], INF, order)
    majorant = abs_series(total)
    for q, g in zip(polys[1:], germs):
        qs = polynomial_series(q, INF, order)
        total = total + qs * g
        majorant = majorant + abs_series(qs) * abs_series(g)
    return total, majorant


def _certify(polys, germs, n):
    R, major = hp_remainder(polys, germs)
    window = list(_window(n))
    residual = max(abs(R.coeff(m)) for m in window)
    scale = max(major.coeff(m) for m in window)
    tail = []
    m = -(2 * n + 2)
    while R.available(m) and len(tail) < EXTRA_TERMS:
        tail.append(R.coeff(m))
        m -= 1
    return residual, scale, tail


def hp_solve_series(s1, s2, n, ctx):
    """Solve from explicit series (no precision retry is possible).

    Raises
    ------
    NonGenericError
        Kernel of dimension two or more.
    PrecisionExhausted
        Residual above ``zero_tol * scale``.
    """
    with ctx.activate():
        M = hp_build_matrix(s1, s2, n)
    v = nullvector(M, ctx)
    size = n + 1
    with ctx.activate():
        polys = tuple(Polynomial(v[j * size : (j + 1) * size]) for j in range(3))
        residual, scale, tail = _certify(polys, (s1, s2), n)
        if residual > ctx.zero_tol * scale:
            raise PrecisionExhausted(residual, ctx.bits)
    return HPTriple(n, *polys, tail, residual, scale, ctx.bits)


def hp_solve(spec1, spec2, n, ctx=None):
    """Type I Hermite-Padé polynomials of degree ``<= n`` for ``[1, f1, f2]``.

    Germs are rebuilt at each attempted precision; on a residual failure the
    precision is doubled once before giving up.

    Parameters
    ----------
    spec1, spec2 : FunctionSpec
    n : int
    ctx : PrecisionContext, optional
        Defaults to ``PrecisionContext.for_degree(n)``.

    Returns
    -------
    HPTriple
        Normalised so the largest-magnitude coefficient of ``(q0, q1, q2)``
        equals 1.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    ctx = ctx or PrecisionContext.for_degree(n)
    order = 3 * n + 2 + EXTRA_TERMS
    last = None
    for attempt in (ctx, ctx.doubled()):
        with attempt.activate():
            s1 = build_germ(spec1, INF, order)
            s2 = build_germ(spec2, INF, order)
        try:
            return hp_solve_series(s1, s2, n, attempt)
        except PrecisionExhausted as exc:
            last = exc
    raise last
