"""Arbitrary-precision kernel: precision policy, dense polynomials, truncated series.

Scalars are plain :mod:`gmpy2` values (``mpfr`` for real data, ``mpc`` for
complex data) held in numpy object arrays, so elementwise numpy operations
dispatch straight to MPFR/MPC.  Every operation rounds at the precision of the
active gmpy2 context; use :meth:`PrecisionContext.activate` to set it.

Exact rationals are :class:`fractions.Fraction`.  Exact complex rationals
(branch points, series parameters) are ``(re, im)`` tuples of fractions.
"""

from __future__ import annotations

import dataclasses
import numbers
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np
from gmpy2 import mpc, mpfr, mpq

from .errors import SeriesTruncated

__all__ = [
    "INF",
    "ORIGIN",
    "PrecisionContext",
    "default_bits",
    "to_big",
    "to_rational",
    "exact_complex",
    "zeros",
    "is_real_array",
    "Polynomial",
    "poly_eval",
    "GermSeries",
    "series_add",
    "series_mul",
    "binomial_coefficients",
    "binomial_series",
    "series_binomial_pow",
]

INF = "inf"
ORIGIN = "origin"

MIN_BITS = 128


def default_bits(n):
    """Working precision for a degree-``n`` problem: ``max(512, 24 n)`` bits."""
    return max(512, 24 * int(n))


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision and tolerance policy.

    Parameters
    ----------
    bits : int
        Mantissa precision in bits, at least 128.
    zero_tol : mpfr, optional
        Magnitude below which a residual counts as zero.  Defaults to
        ``2**(-bits/4)``.
    seed : int
        Seed for the deterministic perturbations used by the root finder.
    """

    bits: int = 512
    zero_tol: object = None
    seed: int = 0

    def __post_init__(self):
        if int(self.bits) < MIN_BITS:
            raise ValueError(f"bits must be >= {MIN_BITS}, got {self.bits}")
        object.__setattr__(self, "bits", int(self.bits))
        if self.zero_tol is None:
            tol = gmpy2.mul_2exp(mpfr(1), -(self.bits // 4))
        else:
            tol = mpfr(self.zero_tol)
        if not 0 < tol < 1:
            raise ValueError("zero_tol must lie in (0, 1)")
        object.__setattr__(self, "zero_tol", tol)

    @classmethod
    def for_degree(cls, n, seed=0):
        return cls(bits=default_bits(n), seed=seed)

    def with_bits(self, bits):
        return dataclasses.replace(self, bits=bits, zero_tol=None)

    def doubled(self):
        return self.with_bits(2 * self.bits)

    @property
    def rank_tol(self):
        """Relative pivot size below which a column counts as dependent.

        ``zero_tol**3`` (``2**(-3*bits/4)`` by default): interpolation
        systems are graded, and pivots legitimately fall well below
        ``zero_tol`` while staying far above rounding level.
        """
        return self.zero_tol**3

    def eps(self, fraction=1):
        """``2**(-bits * fraction)`` as an mpfr (e.g. ``fraction=1/2``)."""
        return gmpy2.mul_2exp(mpfr(1), -int(self.bits * fraction))

    def activate(self):
        """Context manager making ``bits`` the gmpy2 working precision."""
        return gmpy2.context(gmpy2.get_context(), precision=self.bits)


# --- scalars ----------------------------------------------------------------


def to_rational(x):
    """Parse ``x`` (int, Fraction, decimal string, ``"p/q"``) into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, mpq):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def exact_complex(x):
    """Exact complex rational ``(re, im)`` from a number, string or pair."""
    if isinstance(x, tuple | list):
        re, im = x
        return to_rational(re), to_rational(im)
    if isinstance(x, complex):
        return to_rational(x.real), to_rational(x.imag)
    return to_rational(x), Fraction(0)


def _mpfr_exact(q):
    return mpfr(mpq(q.numerator, q.denominator))


def to_big(x):
    """Round ``x`` once to an mpfr/mpc at the active precision.

    Exact complex pairs with zero imaginary part and all real inputs become
    mpfr; everything else becomes mpc.
    """
    if isinstance(x, Fraction):
        return _mpfr_exact(x)
    if isinstance(x, tuple | list):
        re, im = exact_complex(x)
        if im == 0:
            return _mpfr_exact(re)
        return mpc(_mpfr_exact(re), _mpfr_exact(im))
    if isinstance(x, mpc):
        return mpc(x)
    if isinstance(x, complex):
        return mpc(x)
    if isinstance(x, str):
        return _mpfr_exact(Fraction(x))
    if isinstance(x, numbers.Integral):
        return mpfr(int(x))
    return mpfr(x)


def zeros(n, real=True):
    """Object array of ``n`` big zeros."""
    out = np.empty(n, dtype=object)
    out[:] = [mpfr(0) if real else mpc(0) for _ in range(n)]
    return out


def as_object_array(values):
    values = list(values)
    out = np.empty(len(values), dtype=object)
    out[:] = values
    return out


def is_real_array(values):
    return all(not isinstance(v, mpc) or v.imag == 0 for v in np.ravel(values))


def real_array(values):
    """Drop exactly-zero imaginary parts, returning an mpfr object array."""
    return as_object_array([v.real if isinstance(v, mpc) else v for v in np.ravel(values)])


# --- polynomials --------------------------------------------------------------


class Polynomial:
    """Dense polynomial; ``coeffs[k]`` multiplies ``z**k``.

    Coefficients are mpfr or mpc values.  Instances are treated as immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = as_object_array(coeffs)
        if len(c) == 0:
            c = zeros(1)
        self.coeffs = c

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"Polynomial(degree={self.degree()}, stored={len(self.coeffs)})"

    def __call__(self, z):
        return poly_eval(self, z)

    def degree(self, tol=0):
        """Highest index with ``|coeff| > tol``; -1 for the zero polynomial."""
        for k in range(len(self.coeffs) - 1, -1, -1):
            if abs(self.coeffs[k]) > tol:
                return k
        return -1

    def max_norm(self):
        return max(abs(c) for c in self.coeffs)

    def is_real(self):
        return is_real_array(self.coeffs)

    def trimmed(self, tol=0):
        d = self.degree(tol)
        return Polynomial(self.coeffs[: max(d, 0) + 1])

    def derivative(self):
        if len(self.coeffs) == 1:
            return Polynomial(zeros(1))
        k = np.arange(1, len(self.coeffs), dtype=object)
        return Polynomial(self.coeffs[1:] * k)

    def scaled(self, c):
        return Polynomial(self.coeffs * c)

    def __neg__(self):
        return Polynomial(-self.coeffs)

    def __add__(self, other):
        n = max(len(self), len(other))
        a = np.concatenate([self.coeffs, zeros(n - len(self))])
        b = np.concatenate([other.coeffs, zeros(n - len(other))])
        return Polynomial(a + b)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Polynomial(np.convolve(self.coeffs, other.coeffs))
        return self.scaled(other)

    __rmul__ = __mul__

    @classmethod
    def from_roots(cls, roots):
        p = cls([mpfr(1)])
        for r in roots:
            p = p * cls([-r, mpfr(1)])
        return p


def poly_eval(p, z):
    """Horner evaluation of ``p`` at ``z`` (scalar or object array)."""
    coeffs = p.coeffs if isinstance(p, Polynomial) else p
    acc = coeffs[-1] * 1
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc


# --- truncated series ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GermSeries:
    """Truncated expansion of a germ in its local variable ``t``.

    ``t = 1/z`` at ``center == "inf"`` and ``t = z`` at ``center == "origin"``.
    The germ is ``sum(coeffs[k] * t**(offset + k))`` known modulo
    ``t**order`` where ``order = offset + length``.  A Markov function at
    infinity therefore has ``offset == 1`` and ``coeffs[0]`` equal to the
    total mass of its measure.
    """

    center: str
    coeffs: np.ndarray
    offset: int = 0

    def __post_init__(self):
        if self.center not in (INF, ORIGIN):
            raise ValueError(f"unknown center {self.center!r}")
        object.__setattr__(self, "coeffs", as_object_array(self.coeffs))

    @property
    def length(self):
        return len(self.coeffs)

    @property
    def order(self):
        return self.offset + self.length

    def is_real(self):
        return is_real_array(self.coeffs)

    def _index(self, power):
        t_power = -power if self.center == INF else power
        return t_power - self.offset

    def coeff(self, power):
        """Coefficient of ``z**power``."""
        k = self._index(power)
        if k < 0:
            return mpfr(0)
        if k >= self.length:
            raise SeriesTruncated(f"z**{power} lies beyond the truncation order {self.order}")
        return self.coeffs[k]

    def available(self, power):
        return self._index(power) < self.length

    def truncated(self, order):
        """Keep terms ``t**j`` with ``j < order``."""
        keep = max(0, min(self.length, order - self.offset))
        return GermSeries(self.center, self.coeffs[:keep], self.offset)

    def map(self, fn):
        return GermSeries(self.center, as_object_array(fn(c) for c in self.coeffs), self.offset)

    def __add__(self, other):
        if isinstance(other, GermSeries):
            return series_add(self, other)
        return series_add(self, GermSeries(self.center, [to_big(other)], 0).padded(self.order))

    __radd__ = __add__

    def __neg__(self):
        return GermSeries(self.center, -self.coeffs, self.offset)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GermSeries):
            return series_mul(self, other)
        return GermSeries(self.center, self.coeffs * other, self.offset)

    __rmul__ = __mul__

    def padded(self, order):
        """Exact series (a polynomial in ``t``) padded with zeros up to ``order``."""
        extra = order - self.order
        if extra <= 0:
            return self
        real = self.is_real()
        return GermSeries(self.center, np.concatenate([self.coeffs, zeros(extra, real)]), self.offset)


def series_add(a, b):
    """Coefficientwise sum; the result is known to the smaller order."""
    if a.center != b.center:
        raise ValueError(f"center mismatch: {a.center} vs {b.center}")
    offset = min(a.offset, b.offset)
    order = min(a.order, b.order)
    n = max(order - offset, 0)
    real = a.is_real() and b.is_real()
    out = zeros(n, real)
    for s in (a, b):
        lo = s.offset - offset
        take = max(0, min(s.length, n - lo))
        out[lo : lo + take] = out[lo : lo + take] + s.coeffs[:take]
    return GermSeries(a.center, out, offset)


def series_mul(a, b):
    """Cauchy product truncated to the order both factors support."""
    if a.center != b.center:
        raise ValueError(f"center mismatch: {a.center} vs {b.center}")
    n = min(a.length, b.length)
    if n == 0:
        return GermSeries(a.center, [], a.offset + b.offset)
    prod = np.convolve(a.coeffs[:n], b.coeffs[:n])[:n]
    return GermSeries(a.center, prod, a.offset + b.offset)


def binomial_coefficients(alpha, count):
    """Exact ``C(alpha, k)`` for ``k < count`` as Fractions."""
    alpha = to_rational(alpha)
    out = [Fraction(1)]
    for k in range(1, count):
        out.append(out[-1] * (alpha - k + 1) / k)
    return out[:count]


def _exact_powers(c, count):
    re, im = c
    out = [(Fraction(1), Fraction(0))]
    for _ in range(1, count):
        pr, pi = out[-1]
        out.append((pr * re - pi * im, pr * im + pi * re))
    return out


def binomial_series(c, alpha, length, center=INF, step=1):
    """Series of ``(1 + c t**step)**alpha`` with value 1 at ``t = 0``.

    ``c`` may be an exact complex rational (tuple) or any rational-like
    number, in which case every coefficient ``C(alpha, k) c**k`` is formed
    exactly and rounded once.  A big-float ``c`` is also accepted; then only
    ``C(alpha, k)`` is exact.
    """
    nterms = (length - 1) // step + 1 if length > 0 else 0
    binom = binomial_coefficients(alpha, nterms)
    exact = isinstance(c, tuple | list | Fraction | int | str)
    coeffs = zeros(length)
    if exact:
        cc = exact_complex(c)
        real = cc[1] == 0
        if not real:
            coeffs = zeros(length, real=False)
        for k, (b, (pr, pi)) in enumerate(zip(binom, _exact_powers(cc, nterms))):
            coeffs[k * step] = to_big((b * pr, b * pi)) if not real else to_big(b * pr)
    else:
        power = mpfr(1)
        real = not isinstance(c, mpc) or c.imag == 0
        if not real:
            coeffs = zeros(length, real=False)
        for k, b in enumerate(binom):
            coeffs[k * step] = to_big(b) * power
            power = power * c
    return GermSeries(center, coeffs, 0)


def series_binomial_pow(u, alpha):
    """``u**alpha`` for a series with ``u = 1 + h`` at ``t = 0``.

    Uses the exact binomial expansion when ``h`` is a single monomial and the
    J.C.P. Miller recurrence ``k w_k = sum_j ((alpha + 1) j - k) u_j w_{k-j}``
    otherwise.

    Raises
    ------
    ValueError
        If the series does not start with the constant 1.
    """
    if u.offset != 0 or u.length == 0:
        raise ValueError("series must start with a constant term")
    prec = gmpy2.get_context().precision
    if abs(u.coeffs[0] - 1) > gmpy2.mul_2exp(mpfr(1), -(prec // 2)):
        raise ValueError("leading coefficient must equal 1")
    alpha = to_rational(alpha)
    length = u.length
    nonzero = [k for k in range(1, length) if u.coeffs[k] != 0]
    if not nonzero:
        return GermSeries(u.center, [to_big(1)] + [u.coeffs[0] * 0] * (length - 1), 0)
    if len(nonzero) == 1:
        step = nonzero[0]
        return binomial_series(u.coeffs[step], alpha, length, u.center, step)
    p, q = alpha.numerator, alpha.denominator
    real = u.is_real()
    w = zeros(length, real)
    w[0] = to_big(1)
    uc = u.coeffs
    for k in range(1, length):
        j = np.arange(1, k + 1, dtype=object)
        weights = (p + q) * j - q * k
        w[k] = np.dot(weights * uc[1 : k + 1], w[k - 1 :: -1]) / (q * k)
    return GermSeries(u.center, w, 0)


def polynomial_series(p, center, order):
    """Exact expansion of a polynomial in the local variable at ``center``."""
    coeffs = p.coeffs if isinstance(p, Polynomial) else as_object_array(p)
    if center == INF:
        return GermSeries(INF, coeffs[::-1], -(len(coeffs) - 1)).padded(order)
    return GermSeries(center, coeffs, 0).padded(order)


def abs_series(s):
    """Coefficientwise magnitudes, used to scale residual checks."""
    return GermSeries(s.center, as_object_array(abs(c) for c in s.coeffs), s.offset)
