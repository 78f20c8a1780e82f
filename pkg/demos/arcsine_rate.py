"""Geometric convergence of Padé approximants to 1/sqrt(z**2 - 1).

The error at z decays like exp(-2 n g(z)), with g the Green function of the
complement of [-1, 1].  The poles are the Chebyshev nodes, so their
distribution is the arcsine law.

    python demos/arcsine_rate.py
"""

import gmpy2
from gmpy2 import mpfr

from hpzeros import FunctionSpec, PrecisionContext, analysis, find_roots, pade_error_probe, pade_solve

F = FunctionSpec.algebraic([(-1, 0), (1, 0)], ["-1/2", "-1/2"])


def main():
    ctx = PrecisionContext(512)
    ns = list(range(10, 41, 5))
    for z in (2, 10):
        errors = []
        for n in ns:
            pair = pade_solve(F, n, ctx)
            with ctx.activate():
                errors.append(pade_error_probe(pair, z, 1 / gmpy2.sqrt(mpfr(z * z - 1))))
        fit = analysis.rate_fit(ns, errors, z=z)
        print(f"z={z}: fitted slope {fit.slope:.4f}, predicted {fit.expected:.4f}, relative error {fit.relative_error:.1e}")
    pair = pade_solve(F, 60)
    poles = find_roots(pair.p1, PrecisionContext(pair.bits), "poles")
    print(f"n=60 poles: Kolmogorov-Smirnov distance to the arcsine law {analysis.ks_arcsine(poles):.4f}")


if __name__ == "__main__":
    main()
