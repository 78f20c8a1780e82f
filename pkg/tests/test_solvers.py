"""Hermite-Padé, Padé and two-point Padé solvers on small inputs."""

from fractions import Fraction as F

import gmpy2
import numpy as np
import pytest
from gmpy2 import mpc, mpfr

import oracle
from hpzeros import (
    FunctionSpec,
    PrecisionContext,
    TwoPointProblem,
    find_roots,
    hp_build_matrix,
    hp_solve,
    pade_error_probe,
    pade_solve,
    twopoint_solve,
)
from hpzeros.errors import SeriesTruncated
from hpzeros.germs import build_germ, markov_moments
from hpzeros.hermite_pade import hp_solve_series
from hpzeros.numerics import INF, ORIGIN, GermSeries
from hpzeros.pade import pade_build_matrix
from hpzeros.twopoint import twopoint_build_matrix

CTX = PrecisionContext(256)


def lebesgue_series(order):
    with CTX.activate():
        return GermSeries(INF, markov_moments((-1, 1), "lebesgue", order - 1), 1)


class TestHermitePade:
    def test_matrix_matches_oracle_layout(self):
        a, n = F(2, 5), 3
        with CTX.activate():
            specs = [FunctionSpec.case(1, a, i) for i in (1, 2)]
            s1, s2 = (build_germ(s, INF, 3 * n + 2) for s in specs)
            M = hp_build_matrix(s1, s2, n)
        ref = oracle.exact_hp_matrix(a, n)
        assert M.shape == (3 * n + 2, 3 * n + 3)
        with CTX.activate():
            assert all(abs(M[i, j] - mpfr(ref[i][j].numerator) / ref[i][j].denominator) < 2**-250 for i in range(M.shape[0]) for j in range(M.shape[1]))

    def test_short_series_is_rejected(self):
        with CTX.activate():
            s = build_germ(FunctionSpec.case(1, "1/5", 1), INF, 6)
        with pytest.raises(SeriesTruncated):
            hp_build_matrix(s, s, 3)

    def test_needs_germs_at_infinity(self):
        g = GermSeries(ORIGIN, [mpfr(1)] * 20)
        with pytest.raises(ValueError):
            hp_build_matrix(g, g, 2)

    def test_negative_degree(self):
        with pytest.raises(ValueError):
            hp_solve(FunctionSpec.case(1, "1/5", 1), FunctionSpec.case(1, "1/5", 2), -1)

    @pytest.mark.parametrize("case", (1, 2, 3))
    def test_certified_and_normalized(self, case):
        t = hp_solve(FunctionSpec.case(case, "5/8", 1), FunctionSpec.case(case, "5/8", 2), 10)
        assert t.bits == 512
        assert t.residual <= PrecisionContext(512).zero_tol * t.scale
        assert max(abs(c) for p in t.polys for c in p.coeffs) == 1
        assert len(t.remainder_coeffs) == 4
        assert all(len(p) == 11 for p in t.polys)

    @pytest.mark.parametrize("case,a", ((1, "1/5"), (2, "2/5"), (3, "4/5")))
    def test_remainder_is_not_degenerate(self, case, a):
        t = hp_solve(FunctionSpec.case(case, a, 1), FunctionSpec.case(case, a, 2), 40)
        assert abs(t.remainder_coeffs[0]) > PrecisionContext(t.bits).zero_tol * t.scale

    def test_series_entry_point(self):
        with CTX.activate():
            s1 = build_germ(FunctionSpec.case(2, "1/5", 1), INF, 20)
            s2 = build_germ(FunctionSpec.case(2, "1/5", 2), INF, 20)
        t = hp_solve_series(s1, s2, 4, CTX)
        assert t.residual <= CTX.zero_tol * t.scale

    def test_oracle_q1_roots_real(self):
        t = hp_solve(FunctionSpec.case(1, "1/2", 1), FunctionSpec.case(1, "1/2", 2), 2)
        zs = find_roots(t.q1, PrecisionContext(t.bits))
        assert all(abs(z.imag) < 2**-200 for z in zs.roots)


class TestPade:
    def test_lebesgue_one_one(self):
        pair = pade_solve(lebesgue_series(8), 1, CTX)
        with CTX.activate():
            p0, p1 = pair.p0.coeffs, pair.p1.coeffs
            ratio = p0[0] / p1[1]
            assert abs(ratio + 2) < 2**-250
            assert abs(p0[1]) < 2**-250 and abs(p1[0]) < 2**-250

    def test_matrix_shape(self):
        M = pade_build_matrix(lebesgue_series(12), 4)
        assert M.shape == (9, 10)

    def test_short_series(self):
        with pytest.raises(SeriesTruncated):
            pade_build_matrix(lebesgue_series(4), 4)

    def test_probe_on_pole(self):
        pair = pade_solve(lebesgue_series(8), 1, CTX)
        with pytest.raises(ZeroDivisionError):
            pade_error_probe(pair, 0, 0)

    def test_probe_value(self):
        pair = pade_solve(lebesgue_series(8), 1, CTX)
        with CTX.activate():
            f = gmpy2.log(mpfr(3) / 1)
            err = pade_error_probe(pair, 2, f)
            assert abs(err - abs(f - 1)) < 2**-240

    def test_approximant_is_callable(self):
        pair = pade_solve(lebesgue_series(8), 1, CTX)
        with CTX.activate():
            assert abs(pair(mpc(4, 0)) - mpfr(1) / 2) < 2**-250

    def test_spec_input_retries_with_precision(self):
        spec = FunctionSpec.algebraic([(-1, 0), (1, 0)], ["-1/2", "-1/2"])
        pair = pade_solve(spec, 8)
        assert pair.residual <= PrecisionContext(pair.bits).zero_tol * pair.scale


class TestTwoPoint:
    RATIONAL = FunctionSpec.ratio((F(1, 2), 0), (-2, 0), 1)

    def test_counts(self):
        tp = twopoint_solve(TwoPointProblem(self.RATIONAL, self.RATIONAL), 1, CTX)
        assert tp.counts == (1, 2)
        tp = twopoint_solve(TwoPointProblem(self.RATIONAL, self.RATIONAL), 1, CTX, "footnote")
        assert tp.counts == (2, 1)

    def test_unknown_split(self):
        with pytest.raises(ValueError):
            twopoint_solve(TwoPointProblem(self.RATIONAL, self.RATIONAL), 1, CTX, "other")

    def test_weights(self):
        with pytest.raises(ValueError):
            TwoPointProblem(self.RATIONAL, self.RATIONAL, weights=(F(1, 3), F(2, 3)))

    def test_matrix_shape_and_centers(self):
        with CTX.activate():
            g0 = build_germ(self.RATIONAL, ORIGIN, 8)
            gi = build_germ(self.RATIONAL, INF, 8)
        assert twopoint_build_matrix(g0, gi, 3).shape == (7, 8)
        with pytest.raises(ValueError):
            twopoint_build_matrix(gi, g0, 3)

    def test_short_series(self):
        with CTX.activate():
            g0 = build_germ(self.RATIONAL, ORIGIN, 2)
            gi = build_germ(self.RATIONAL, INF, 8)
        with pytest.raises(SeriesTruncated):
            twopoint_build_matrix(g0, gi, 4)

    def test_series_input(self):
        with CTX.activate():
            g0 = build_germ(self.RATIONAL, ORIGIN, 8)
            gi = build_germ(self.RATIONAL, INF, 8)
        tp = twopoint_solve(TwoPointProblem(g0, gi), 1, CTX)
        with CTX.activate():
            z = mpfr(5)
            assert abs(tp(z) - (z - mpfr(0.5)) / (z + 2)) < 2**-240

    def test_ratio_germs_certified(self):
        r0 = FunctionSpec.ratio(("9/10", "-11/10"), ("1/10", "1/5"), "1/4")
        ri = FunctionSpec.ratio(("9/10", "-11/10"), ("1/10", "1/5"), "1/4", branch_tag=2)
        tp = twopoint_solve(TwoPointProblem(r0, ri), 12)
        tol = PrecisionContext(tp.bits).zero_tol
        assert tp.residual0 <= tol * tp.scale0
        assert tp.residual_inf <= tol * tp.scale_inf
        assert np.all([len(p) == 13 for p in tp.polys])
