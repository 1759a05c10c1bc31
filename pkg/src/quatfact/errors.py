"""Exception hierarchy shared by all quatfact modules."""


class QuatFactError(Exception):
    """Base class for all errors raised by this package."""


class ZeroDivisor(QuatFactError):
    """Inversion of a (dual) quaternion whose norm is numerically zero."""


class DidNotConverge(QuatFactError):
    """Root finding exhausted its iteration budget."""


class OddRealRoot(QuatFactError):
    """A real root of odd multiplicity was found where only even ones are legal."""


class NonMonicDivisor(QuatFactError):
    """Division with remainder requires a monic divisor."""


class NotRankOne(QuatFactError):
    """Coefficient matrix of a norm polynomial is not separable (rank > 1).

    Carries the worst offending 2x2 minor so callers can report it.
    """

    def __init__(self, message, minor_index=None, minor_value=None, scale=None):
        super().__init__(message)
        self.minor_index = minor_index
        self.minor_value = minor_value
        self.scale = scale


class NonRealResidue(QuatFactError):
    """A polynomial expected to be real has imaginary parts above tolerance."""


class DivisibleByM(QuatFactError):
    """Right-factor extraction got a polynomial still divisible by the norm factor."""


class ZeroRemainder(QuatFactError):
    """Division left a numerically zero remainder where a nonzero one is required."""


class DegenerateRemainder(QuatFactError):
    """A remainder violates the degree/shape guarantees of the factorization theory."""


class NoFlip(QuatFactError):
    """Bennett flip of a conjugate factor pair (a real quadratic) is undefined."""


class NFCViolated(QuatFactError):
    """The norm polynomial does not split into univariate factors."""

    def __init__(self, message, cause=None):
        super().__init__(message)
        self.cause = cause


class StateBudgetExceeded(QuatFactError):
    """Equivalence search hit its state cap; the question is undecided."""


class DifferentPolynomials(QuatFactError):
    """Two factorizations that were compared do not represent the same polynomial."""


class MismatchedPolynomials(QuatFactError):
    """Lift construction requires two factorizations of the same polynomial."""


class ParseError(QuatFactError):
    """Malformed polynomial text or JSON input."""
