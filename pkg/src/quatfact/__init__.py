"""Factorization of bivariate quaternionic polynomials into univariate linear factors."""

from .bifactor import (EnumerationEntry, EnumerationReport, SplitRemainder,
                       cofactor_factorize, enumerate_factorizations, equivalent,
                       factor_linear_in, norm_split, s_equivalent,
                       strip_real_content, t_equivalent, verify_factorization)
from .duallift import (LiftSolution, LiftSystem, build_lift_system, solve_lift,
                       verify_lift)
from .errors import (DegenerateRemainder, DidNotConverge, DifferentPolynomials,
                     DivisibleByM, MismatchedPolynomials, NFCViolated, NoFlip,
                     NonMonicDivisor, NonRealResidue, NotRankOne, OddRealRoot,
                     ParseError, QuatFactError, StateBudgetExceeded, ZeroDivisor,
                     ZeroRemainder)
from .exprparse import parse_poly
from .quaternion import DEFAULT_EPS, DualQuaternion, Quaternion
from .quatpoly import (QuatPoly, div_real_exact, divides_real, divrem_linear_left,
                       divrem_linear_right, divrem_real, norm_poly,
                       real_content_split)
from .realpoly import (QuadraticFactorTuple, RealBiPoly, RealPoly, clustered_roots,
                       divrem, quadratic_factors, roots, separable_split)
from .unifactor import (Factorization, LinearFactor, bennett_flip,
                        factor_univariate, left_factor, peel_right_factor,
                        quaternion_linear_factors, right_factor)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_EPS", "Quaternion", "DualQuaternion",
    "RealPoly", "RealBiPoly", "QuadraticFactorTuple",
    "roots", "clustered_roots", "quadratic_factors", "divrem", "separable_split",
    "QuatPoly", "norm_poly", "divrem_real", "divides_real", "div_real_exact",
    "divrem_linear_left", "divrem_linear_right", "real_content_split",
    "LinearFactor", "Factorization", "right_factor", "left_factor",
    "peel_right_factor", "factor_univariate", "quaternion_linear_factors",
    "bennett_flip",
    "SplitRemainder", "factor_linear_in", "cofactor_factorize",
    "enumerate_factorizations", "EnumerationEntry", "EnumerationReport",
    "verify_factorization", "strip_real_content", "norm_split",
    "equivalent", "t_equivalent", "s_equivalent",
    "LiftSystem", "LiftSolution", "build_lift_system", "solve_lift", "verify_lift",
    "parse_poly",
    "QuatFactError", "ZeroDivisor", "DidNotConverge", "OddRealRoot",
    "NonMonicDivisor", "NotRankOne", "NonRealResidue", "DivisibleByM",
    "ZeroRemainder", "DegenerateRemainder", "NoFlip", "NFCViolated",
    "StateBudgetExceeded", "DifferentPolynomials", "MismatchedPolynomials",
    "ParseError",
]
