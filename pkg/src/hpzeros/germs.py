"""Series expansions of the test functions at infinity and at the origin.

Families
--------
``markov_log``
    Cauchy transform of Lebesgue measure on ``E_1 = [-1, a]`` (``index=1``)
    or ``E_2 = [-a, 1]`` (``index=2``), i.e. ``log((z+1)/(z-a))`` and
    ``log((z+a)/(z-1))``.
``markov_root2`` / ``markov_root3``
    ``((z-a)/(z+1))**alpha`` and ``((z-1)/(z+a))**alpha`` with ``alpha``
    1/2 or 1/3, normalised to 1 at infinity.
``algebraic_product``
    ``f**d = lead * prod((z - a_j)**(d*alpha_j))`` where ``d`` is the common
    denominator of the exponents, plus an additive ``shift``.
``two_point_ratio``
    ``((z-a_1)/(z-a_2))**alpha``, the two-point case of the above.

Branches: at infinity the germ is ``lead**(1/d) * z**sum(alpha) *
prod((1 - a_j/z)**alpha_j)`` with principal ``lead**(1/d)``; at the origin its
value is the principal ``d``-th root of ``f(0)**d``.  ``branch_tag = k``
multiplies either germ by ``exp(2 pi i k / d)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
from gmpy2 import mpc, mpfr

from .numerics import (
    INF,
    ORIGIN,
    GermSeries,
    as_object_array,
    binomial_series,
    exact_complex,
    to_big,
    to_rational,
)

__all__ = [
    "FAMILIES",
    "FunctionSpec",
    "markov_moments",
    "germ_case1",
    "germ_case2",
    "germ_case3",
    "germ_case_root",
    "log_ratio_series",
    "germ_algebraic",
    "build_germ",
    "evaluate",
]

FAMILIES = ("markov_log", "markov_root2", "markov_root3", "algebraic_product", "two_point_ratio")
CASE_FAMILIES = {"markov_log": 1, "markov_root2": 2, "markov_root3": 3}
ROOT_EXPONENT = {"markov_root2": Fraction(1, 2), "markov_root3": Fraction(1, 3)}


def _fmt_rational(q):
    return str(q)


def _fmt_complex(c):
    return [str(c[0]), str(c[1])]


@dataclass(frozen=True)
class FunctionSpec:
    """Description of one test function; the unit of every preset.

    Use the :meth:`case`, :meth:`algebraic` and :meth:`ratio` constructors
    rather than filling the fields by hand.
    """

    family: str
    a: Fraction | None = None
    index: int = 1
    branch_points: tuple = ()
    exponents: tuple = ()
    lead: tuple = (Fraction(1), Fraction(0))
    shift: Fraction = Fraction(0)
    branch_tag: int = 0
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family in CASE_FAMILIES:
            a = to_rational(self.a)
            if not -1 < a < 1:
                raise ValueError(f"parameter a must lie in (-1, 1), got {a}")
            if self.index not in (1, 2):
                raise ValueError("index must be 1 or 2")
            object.__setattr__(self, "a", a)
        else:
            pts = tuple(exact_complex(p) for p in self.branch_points)
            exps = tuple(to_rational(e) for e in self.exponents)
            if len(pts) != len(exps) or not pts:
                raise ValueError("branch_points and exponents must be non-empty and aligned")
            object.__setattr__(self, "branch_points", pts)
            object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "lead", exact_complex(self.lead))
        object.__setattr__(self, "shift", to_rational(self.shift))

    # constructors

    @classmethod
    def case(cls, case, a, index):
        """Case 1 (log), 2 (square root) or 3 (cube root) function number ``index``."""
        family = {1: "markov_log", 2: "markov_root2", 3: "markov_root3"}[case]
        return cls(family=family, a=to_rational(a), index=index)

    @classmethod
    def algebraic(cls, points, exponents, lead=1, shift=0, branch_tag=0):
        return cls(
            family="algebraic_product",
            branch_points=tuple(points),
            exponents=tuple(exponents),
            lead=lead,
            shift=shift,
            branch_tag=branch_tag,
        )

    @classmethod
    def ratio(cls, a1, a2, alpha, branch_tag=0):
        alpha = to_rational(alpha)
        return cls(
            family="two_point_ratio",
            branch_points=(a1, a2),
            exponents=(alpha, -alpha),
            branch_tag=branch_tag,
        )

    # derived data

    @property
    def case_number(self):
        return CASE_FAMILIES.get(self.family)

    @property
    def support(self):
        """Real support interval of a Markov-type family."""
        if self.case_number is None:
            raise ValueError("only Markov families have a real support")
        return (Fraction(-1), self.a) if self.index == 1 else (-self.a, Fraction(1))

    @property
    def root_order(self):
        """Common denominator ``d`` of the exponents."""
        if self.case_number is not None:
            return {1: 1, 2: 2, 3: 3}[self.case_number]
        return math.lcm(*(e.denominator for e in self.exponents))

    @property
    def singular_points(self):
        """Branch points as exact complex pairs."""
        if self.case_number is not None:
            lo, hi = self.support
            return ((lo, Fraction(0)), (hi, Fraction(0)))
        return self.branch_points

    def is_real(self):
        if self.case_number is not None:
            return True
        pts = sorted(self.branch_points)
        conj = sorted((re, -im) for re, im in self.branch_points)
        return pts == conj and self.lead[1] == 0 and self.branch_tag % self.root_order == 0

    # serialization

    def to_dict(self):
        out = {"family": self.family}
        if self.case_number is not None:
            out.update(a=_fmt_rational(self.a), index=self.index)
        else:
            out.update(
                branch_points=[_fmt_complex(p) for p in self.branch_points],
                exponents=[_fmt_rational(e) for e in self.exponents],
                lead=_fmt_complex(self.lead),
                shift=_fmt_rational(self.shift),
            )
        out["branch_tag"] = self.branch_tag
        return out

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        family = data.pop("family")
        if family in CASE_FAMILIES:
            return cls(
                family=family,
                a=Fraction(data["a"]),
                index=int(data.get("index", 1)),
                branch_tag=int(data.get("branch_tag", 0)),
            )
        return cls(
            family=family,
            branch_points=tuple(tuple(p) for p in data["branch_points"]),
            exponents=tuple(data["exponents"]),
            lead=tuple(data.get("lead", ("1", "0"))),
            shift=data.get("shift", "0"),
            branch_tag=int(data.get("branch_tag", 0)),
        )

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


# --- exact complex-rational helpers -------------------------------------------------


def _cmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _cinv(x):
    norm = x[0] * x[0] + x[1] * x[1]
    if norm == 0:
        raise ZeroDivisionError("inverse of zero")
    return (x[0] / norm, -x[1] / norm)


def _cpow(x, k):
    if k < 0:
        return _cpow(_cinv(x), -k)
    out = (Fraction(1), Fraction(0))
    for _ in range(k):
        out = _cmul(out, x)
    return out


def _root_of_unity(k, d):
    k %= d
    if k == 0:
        return None
    if 2 * k == d:
        return mpfr(-1)
    return gmpy2.root_of_unity(d, k)


def _principal_root(value, d):
    if d == 1:
        return value
    z = mpc(value)
    if z == 0:
        return mpfr(0)
    root = z ** (mpfr(1) / d)
    return root.real if value_is_positive_real(z) else root


def value_is_positive_real(z):
    return z.imag == 0 and z.real > 0


# --- moments and Markov germs -----------------------------------------------------


WEIGHTS = {"lebesgue": None, "root_half": Fraction(1, 2), "root_third": Fraction(1, 3)}


def markov_moments(support, weight, count, orientation=1):
    """Power moments ``int x**k dmu(x)`` for ``k < count``.

    Parameters
    ----------
    support : (lo, hi)
        Rational endpoints with ``lo < hi``.
    weight : {"lebesgue", "root_half", "root_third"}
        ``root_*`` weights are the normalised Jacobi-type densities
        ``sin(pi alpha)/pi * ((hi - x)/(x - lo))**alpha`` (``orientation=1``)
        or with the ratio inverted (``orientation=-1``), alpha = 1/2 or 1/3.
        Their total mass is ``alpha (hi - lo)``.
    count : int
    orientation : {1, -1}

    Returns
    -------
    ndarray of mpfr
        Lebesgue moments are exact rationals rounded once; root-weight
        moments are read off the binomial series of
        ``((z - hi)/(z - lo))**alpha``.
    """
    lo, hi = (to_rational(x) for x in support)
    if not lo < hi:
        raise ValueError("support must satisfy lo < hi")
    if count < 1:
        raise ValueError("count must be positive")
    if weight not in WEIGHTS:
        raise ValueError(f"unsupported weight {weight!r}")
    alpha = WEIGHTS[weight]
    if alpha is None:
        return as_object_array(
            to_big((hi ** (k + 1) - lo ** (k + 1)) / (k + 1)) for k in range(count)
        )
    if orientation == 1:
        s = binomial_series(-hi, alpha, count + 1) * binomial_series(-lo, -alpha, count + 1)
        sign = -1
    elif orientation == -1:
        s = binomial_series(-lo, alpha, count + 1) * binomial_series(-hi, -alpha, count + 1)
        sign = 1
    else:
        raise ValueError("orientation must be 1 or -1")
    return as_object_array(sign * s.coeffs[k + 1] for k in range(count))


def _check_case(a, index):
    a = to_rational(a)
    if not -1 < a < 1:
        raise ValueError(f"parameter a must lie in (-1, 1), got {a}")
    if index not in (1, 2):
        raise ValueError("index must be 1 or 2")
    return a


def germ_case1(a, index, order):
    """Cauchy transform of Lebesgue measure on ``E_index``, known mod ``t**order``."""
    a = _check_case(a, index)
    lo, hi = (Fraction(-1), a) if index == 1 else (-a, Fraction(1))
    count = max(order - 1, 0)
    coeffs = markov_moments((lo, hi), "lebesgue", count) if count else []
    return GermSeries(INF, coeffs, 1)


def log_ratio_series(a, index, order):
    """Series of ``log((z-a)/(z+1))`` (index 1) or ``log((z-1)/(z+a))`` (index 2).

    Both are the negatives of the corresponding Cauchy transforms.
    """
    a = _check_case(a, index)
    coeffs = []
    for k in range(1, order):
        if index == 1:
            c = -((-1) ** (k + 1) + a**k) / k
        else:
            c = -((-1) ** (k + 1) * a**k + 1) / k
        coeffs.append(to_big(Fraction(c)))
    return GermSeries(INF, coeffs, 1)


def germ_case_root(a, index, alpha, order):
    """``((z-a)/(z+1))**alpha`` (index 1) or ``((z-1)/(z+a))**alpha`` (index 2) at infinity."""
    a = _check_case(a, index)
    alpha = to_rational(alpha)
    if index == 1:
        num, den = -a, Fraction(1)
    else:
        num, den = Fraction(-1), a
    return binomial_series(num, alpha, order) * binomial_series(den, -alpha, order)


def germ_case2(a, index, order):
    return germ_case_root(a, index, Fraction(1, 2), order)


def germ_case3(a, index, order):
    return germ_case_root(a, index, Fraction(1, 3), order)


# --- algebraic germs --------------------------------------------------------------


def _leading_constant(spec, center):
    d = spec.root_order
    if center == INF:
        base = spec.lead
    else:
        base = spec.lead
        for p, e in zip(spec.branch_points, spec.exponents):
            if p == (0, 0):
                raise ValueError("expansion center coincides with a branch point")
            base = _cmul(base, _cpow((-p[0], -p[1]), int(e * d)))
    value = _principal_root(to_big(base), d)
    omega = _root_of_unity(spec.branch_tag, d)
    return value if omega is None else value * omega


def germ_algebraic(spec, center, order):
    """Germ of an ``algebraic_product``/``two_point_ratio`` spec at ``center``.

    The result is known modulo ``t**order``.

    Raises
    ------
    ValueError
        If the center is a branch point, or the exponents do not sum to an
        integer at infinity (the germ would not be single-valued there).
    """
    if spec.case_number is not None:
        raise ValueError("use germ_case* for Markov families")
    if center == INF:
        total = sum(spec.exponents, Fraction(0))
        if total.denominator != 1:
            raise ValueError(f"exponent sum {total} is not an integer; no germ at infinity")
        offset = -int(total)
        count = max(order - offset, 0)
        series = GermSeries(INF, [to_big(1)] + [mpfr(0)] * max(count - 1, 0), 0).truncated(count)
        for p, e in zip(spec.branch_points, spec.exponents):
            series = series * binomial_series((-p[0], -p[1]), e, count, INF)
        series = GermSeries(INF, series.coeffs, offset)
    elif center == ORIGIN:
        series = GermSeries(ORIGIN, [to_big(1)] + [mpfr(0)] * max(order - 1, 0), 0).truncated(order)
        for p, e in zip(spec.branch_points, spec.exponents):
            if p == (0, 0):
                raise ValueError("expansion center coincides with a branch point")
            series = series * binomial_series(_cmul((-1, 0), _cinv(p)), e, order, ORIGIN)
    else:
        raise ValueError(f"unsupported center {center!r}")
    series = series * _leading_constant(spec, center)
    if spec.shift:
        shift = GermSeries(center, [to_big(spec.shift)], 0).padded(series.order)
        series = series + shift
    return series


def build_germ(spec, center, order):
    """Dispatch on ``spec.family``; Markov families exist at infinity only."""
    if spec.case_number is not None:
        if center != INF:
            raise ValueError("Markov-family germs are built at infinity only")
        if spec.case_number == 1:
            return germ_case1(spec.a, spec.index, order)
        return germ_case_root(spec.a, spec.index, ROOT_EXPONENT[spec.family], order)
    return germ_algebraic(spec, center, order)


def evaluate(spec, z):
    """Closed-form value of the germ-at-infinity branch at the point ``z``.

    Markov families use principal branches, which continue the germ at
    infinity to the whole plane minus the support.  Algebraic families use
    the product of principal powers of ``1 - a_j/z``; this is the right
    branch wherever none of these factors crosses the negative axis, in
    particular for ``|z| > max |a_j|``.
    """
    z = mpc(z)
    if spec.case_number == 1:
        lo, hi = spec.support
        return gmpy2.log((z - to_big(lo)) / (z - to_big(hi)))
    if spec.case_number in (2, 3):
        alpha = ROOT_EXPONENT[spec.family]
        if spec.index == 1:
            w = (z - to_big(spec.a)) / (z + 1)
        else:
            w = (z - 1) / (z + to_big(spec.a))
        return w ** (mpfr(alpha.numerator) / alpha.denominator)
    value = _leading_constant(spec, INF)
    total = sum(spec.exponents, Fraction(0))
    value = value * z ** int(total)
    for p, e in zip(spec.branch_points, spec.exponents):
        value = value * (1 - to_big(p) / z) ** (mpfr(e.numerator) / e.denominator)
    return value + to_big(spec.shift)
