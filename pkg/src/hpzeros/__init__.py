"""Hermite-Padé, Padé and two-point Padé polynomials in multiprecision.

Typical use::

    from hpzeros import FunctionSpec, hp_solve, find_roots, PrecisionContext

    f1 = FunctionSpec.case(1, "1/5", 1)
    f2 = FunctionSpec.case(1, "1/5", 2)
    triple = hp_solve(f1, f2, n=40)
    zeros = find_roots(triple.q2, PrecisionContext(triple.bits), "q2")
"""

from .analysis import (
    DoubletReport,
    EquilibriumModel,
    angelesco_localization,
    check_conjugate_symmetry,
    check_reflection_pairing,
    detect_froissart,
    estimate_chebotarev,
    ks_arcsine,
    lens_fraction,
    rate_fit,
)
from .errors import ConvergenceError, HPError, NonGenericError, PrecisionExhausted, SeriesTruncated
from .germs import FunctionSpec, build_germ, evaluate, markov_moments
from .hermite_pade import HPTriple, hp_build_matrix, hp_solve
from .linsys import nullvector, nullvector_exact
from .numerics import INF, ORIGIN, GermSeries, Polynomial, PrecisionContext, poly_eval
from .pade import PadePair, pade_error_probe, pade_solve
from .roots import ZeroSet, find_roots
from .twopoint import TwoPointPair, TwoPointProblem, twopoint_solve

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DoubletReport",
    "EquilibriumModel",
    "FunctionSpec",
    "GermSeries",
    "HPError",
    "HPTriple",
    "INF",
    "NonGenericError",
    "ORIGIN",
    "PadePair",
    "Polynomial",
    "PrecisionContext",
    "PrecisionExhausted",
    "SeriesTruncated",
    "TwoPointPair",
    "TwoPointProblem",
    "ZeroSet",
    "angelesco_localization",
    "build_germ",
    "check_conjugate_symmetry",
    "check_reflection_pairing",
    "detect_froissart",
    "estimate_chebotarev",
    "evaluate",
    "find_roots",
    "hp_build_matrix",
    "hp_solve",
    "ks_arcsine",
    "lens_fraction",
    "markov_moments",
    "nullvector",
    "nullvector_exact",
    "pade_error_probe",
    "pade_solve",
    "poly_eval",
    "rate_fit",
    "twopoint_solve",
]
