"""The reference oracles themselves, pinned to hand-derived and frozen values."""

from fractions import Fraction as F

import mpmath
import numpy as np
import pytest

import oracle


def test_exact_hp_n0():
    assert oracle.exact_hp(F(1, 5), 0) == ([0], [1], [-1])


def test_exact_hp_frozen_n1():
    q0, q1, q2 = oracle.exact_hp(F(1, 5), 1)
    assert q0 == [1, 0]
    assert q1 == [F(-7, 24), F(-5, 12)]
    assert q2 == [F(7, 24), F(-5, 12)]


def test_exact_hp_frozen_n2():
    q0, q1, q2 = oracle.exact_hp(F(1, 2), 2)
    assert q0 == [1, 0, 0]
    assert q1 == [F(-10, 21), F(-5, 21), F(8, 21)]
    assert q2 == [F(10, 21), F(-5, 21), F(-8, 21)]
    roots = np.roots([float(c) for c in reversed(q1)])
    assert np.all(np.abs(roots.imag) < 1e-12)


@pytest.mark.parametrize("n", range(5))
def test_exact_kernel_annihilates(n):
    rows = oracle.exact_hp_matrix(F(2, 5), n)
    v = oracle.exact_kernel(rows)
    assert all(sum(r * x for r, x in zip(row, v)) == 0 for row in rows)


def test_moments_closed_form():
    assert oracle.case1_moments(F(1, 5), 3, 1) == [F(6, 5), F(-12, 25), F(42, 125)]
    assert oracle.case1_moments(F(1, 5), 2, 2) == [F(6, 5), F(12, 25)]


def test_chebyshev_roots():
    with mpmath.workdps(60):
        (only,) = oracle.chebyshev_roots(1)
        assert abs(only) < mpmath.mpf(10) ** -55
        lo, hi = oracle.chebyshev_roots(2)
        assert abs(hi - mpmath.sqrt(2) / 2) < mpmath.mpf(10) ** -55
        assert abs(lo + hi) < mpmath.mpf(10) ** -55


def test_green_segment():
    with mpmath.workdps(40):
        assert abs(oracle.green_segment(2) - mpmath.log(2 + mpmath.sqrt(3))) < mpmath.mpf(10) ** -35
    assert oracle.green_segment(-2) == oracle.green_segment(2)
    assert oracle.green_segment(1j) > 0
    with pytest.raises(ValueError):
        oracle.green_segment(0.5)


def test_case_series_matches_binomial_closed_form():
    # (1 - a t)**(1/2) (1 + t)**(-1/2) at a = 1/5: 1 - 3/5 t + 21/50 t**2 + ...
    with mpmath.workdps(30):
        c = oracle.case_series(2, F(1, 5), 1, 3, 30)
        assert abs(c[1] + mpmath.mpf(3) / 5) < 1e-25
        assert abs(c[2] - mpmath.mpf(21) / 50) < 1e-25
