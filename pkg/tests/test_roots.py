import math

import mpmath
import pytest
from gmpy2 import mpc, mpfr
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from hpzeros.errors import ConvergenceError
from hpzeros.numerics import Polynomial, PrecisionContext
from hpzeros.roots import ZeroSet, find_roots, fujiwara_bound, initial_approximations

CTX = PrecisionContext(256)


def chebyshev_t(n):
    with CTX.activate():
        a, b = Polynomial([mpfr(1)]), Polynomial([mpfr(0), mpfr(1)])
        x2 = Polynomial([mpfr(0), mpfr(2)])
        for _ in range(n - 1):
            a, b = b, x2 * b - a
        return b


def test_chebyshev_roots_match_oracle():
    zs = find_roots(chebyshev_t(8), CTX, "T8")
    ref = oracle.chebyshev_roots(8, dps=80)
    with mpmath.workdps(80):
        assert max(abs(oracle.to_mp(z) - r) for z, r in zip(zs.roots, ref)) < mpmath.mpf(10) ** -70
    assert zs.label == "T8" and len(zs) == 8 and zs.bits == 256
    assert not any(zs.multiplicity_flags)
    assert all(r < 2**-240 for r in zs.residuals)


def test_triple_root_is_flagged():
    with CTX.activate():
        p = Polynomial.from_roots([mpfr(1)] * 3)
    zs = find_roots(p, CTX)
    assert all(zs.multiplicity_flags)
    assert max(abs(z - 1) for z in zs.roots) < 1e-20


def test_roots_at_origin_and_infinity_are_stripped():
    with CTX.activate():
        p = Polynomial([mpfr(0), mpfr(0), mpfr(-2), mpfr(1), mpfr(0)])
    zs = find_roots(p, CTX)
    assert len(zs) == 3
    assert sum(1 for z in zs.roots if z == 0) == 2
    assert any(abs(z - 2) < 2**-240 for z in zs.roots)


def test_constant_polynomial():
    with pytest.raises(ValueError):
        find_roots(Polynomial([mpfr(3)]), CTX)
    with pytest.raises(ValueError):
        find_roots(Polynomial([mpfr(0), mpfr(0)]), CTX)


def test_convergence_error():
    with pytest.raises(ConvergenceError):
        find_roots(chebyshev_t(12), CTX, max_iter=1)


def test_sorted_output_and_complex_view():
    with CTX.activate():
        p = Polynomial.from_roots([mpc(0, 1), mpc(0, -1), mpfr(-3)])
    zs = find_roots(p, CTX)
    keys = [(float(z.real), float(z.imag)) for z in zs.roots]
    assert keys == sorted(keys)
    assert zs.as_complex().dtype == complex
    assert zs.relabel("x").label == "x" and zs.relabel("x").roots is zs.roots


def test_fujiwara_bound():
    with CTX.activate():
        p = Polynomial.from_roots([mpfr(5), mpfr(-1), mpc(0, 2)])
        assert fujiwara_bound(p.coeffs) >= 5


def test_starting_points_count_and_cap():
    with CTX.activate():
        p = Polynomial.from_roots([mpfr(k) for k in range(1, 7)])
        z0 = initial_approximations(p.coeffs, seed=1)
        cap = fujiwara_bound(p.coeffs)
        assert len(z0) == 6
        assert all(abs(z) <= cap * (1 + 2**-200) for z in z0)


small_roots = st.lists(
    st.tuples(st.integers(-40, 40), st.integers(-40, 40)).map(lambda t: complex(t[0] / 8, t[1] / 8)),
    min_size=1,
    max_size=7,
    unique=True,
)


@settings(max_examples=30, deadline=None)
@given(small_roots)
def test_vieta_round_trip(roots):
    with CTX.activate():
        p = Polynomial.from_roots([mpc(r) for r in roots])
        zs = find_roots(p, CTX)
        assert len(zs) == len(roots)
        # Elementary symmetric functions: sum and product of the roots.
        assert abs(sum(zs.roots) + p.coeffs[-2] / p.coeffs[-1]) < 2**-200
        prod = mpc(1)
        for z in zs.roots:
            prod *= z
        sign = (-1) ** len(roots)
        assert abs(prod - sign * p.coeffs[0] / p.coeffs[-1]) < 2**-200 * max(1, abs(prod))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**31))
def test_seed_does_not_change_the_answer(seed):
    p = chebyshev_t(9)
    a = find_roots(p, CTX)
    b = find_roots(p, PrecisionContext(256, seed=seed))
    assert max(abs(x - y) for x, y in zip(a.roots, b.roots)) < 2**-230


def test_complex_coefficients():
    with CTX.activate():
        p = Polynomial([mpc(0, -1), mpfr(0), mpfr(1)])
    zs = find_roots(p, CTX)
    s = 1 / math.sqrt(2)
    got = sorted((round(float(z.real), 12), round(float(z.imag), 12)) for z in zs.roots)
    assert got == [(round(-s, 12), round(-s, 12)), (round(s, 12), round(s, 12))]


def test_zero_set_is_a_plain_record():
    zs = ZeroSet("q", [mpc(1)], [mpfr(0)], [False], 128)
    assert len(zs) == 1 and zs.meta == {}
