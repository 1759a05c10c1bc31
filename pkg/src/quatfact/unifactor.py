"""Factorization of univariate quaternionic polynomials into linear factors.

A nonconstant polynomial in H[v] factors as unit * (v - h_1) ... (v - h_k).
Right factors are peeled one at a time: for a monic quadratic factor M of
the norm polynomial, the remainder S of division by M is linear, S = a(v - h),
and (v - h) is the unique right factor with norm M.  Choosing a different
order of the norm's quadratic factors yields a different factorization; for
k distinct quadratics there are k! of them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateRemainder, DivisibleByM, NoFlip, ZeroRemainder
from .quaternion import DEFAULT_EPS, Quaternion
from .quatpoly import (QuatPoly, divides_real, divrem_linear_right, divrem_real,
                       norm_poly, polish_linear_factor, real_content_split)
from .realpoly import RealPoly, clustered_roots, quadratic_factors


@dataclass(frozen=True)
class LinearFactor:
    """The monic linear polynomial var - h."""

    var: str
    h: Quaternion

    def as_poly(self) -> QuatPoly:
        return QuatPoly.linear(self.var, self.h)

    def norm_quadratic(self) -> RealPoly:
        """norm(var - h) = var**2 - 2 Re(h) var + norm(h)."""
        return RealPoly.quadratic(self.var, -2.0 * self.h.w, self.h.norm())

    def conj(self) -> "LinearFactor":
        return LinearFactor(self.var, self.h.conj())

    def as_dict(self):
        return {"var": self.var, "h": self.h.as_list()}

    @classmethod
    def from_dict(cls, data) -> "LinearFactor":
        return cls(data["var"], Quaternion.from_list(data["h"]))


@dataclass(frozen=True)
class Factorization:
    """unit * product(factors) represents K * q for the factored polynomial q.

    K is the real cofactor of the multiplication technique and defaults to
    the constant one, in which case the product is q itself.
    """

    unit: Quaternion
    K: RealPoly
    factors: tuple

    def product(self) -> QuatPoly:
        acc = QuatPoly.constant(self.unit)
        for f in self.factors:
            acc = acc * f.as_poly()
        return acc

    def k_is_one(self, eps: float = DEFAULT_EPS) -> bool:
        return self.K.is_one(eps)

    def factors_in(self, var: str) -> tuple:
        return tuple(f for f in self.factors if f.var == var)

    def as_dict(self):
        return {
            "unit": self.unit.as_list(),
            "K": self.K.as_dict(),
            "factors": [f.as_dict() for f in self.factors],
        }

    @classmethod
    def from_dict(cls, data) -> "Factorization":
        return cls(
            Quaternion.from_list(data["unit"]),
            RealPoly.from_dict(data["K"]),
            tuple(LinearFactor.from_dict(f) for f in data["factors"]),
        )

    @classmethod
    def from_factors(cls, factors, unit=None, K=None) -> "Factorization":
        factors = tuple(factors)
        if unit is None:
            unit = Quaternion(1.0)
        if K is None:
            var = factors[0].var if factors else "t"
            K = RealPoly.one(var)
        return cls(unit, K, factors)


def right_factor(q: QuatPoly, m: RealPoly, eps: float = DEFAULT_EPS) -> Quaternion:
    """The unique h such that (var - h) right-divides q and norm(var - h) = m.

    Requires m to be a monic quadratic dividing the norm of q while q itself
    is not divisible by m; the latter is what makes h unique.  Bivariate
    inputs work too: the remainder of q by m is a(var - h) with a in the
    ring of polynomials in the other variable, and h is read off from any
    sufficiently large coefficient of a.
    """
    var = m.var
    if m.degree() != 2 or not m.is_monic(eps):
        raise ValueError(f"norm factor must be a monic quadratic, got {m!r}")
    if divides_real(q, m, eps):
        raise DivisibleByM(f"{m!r} divides the polynomial; strip it first")
    _, rem = divrem_real(q, m, eps)
    if rem.max_coeff_norm() <= eps * max(1.0, q.max_coeff_norm()):
        raise ZeroRemainder("remainder vanished unexpectedly")
    lead_slice = rem.coeff_in(var, 1)
    const_slice = rem.coeff_in(var, 0)
    if lead_slice.max_coeff_norm() <= eps * rem.max_coeff_norm():
        raise DegenerateRemainder(
            "remainder is independent of the factor variable; "
            "the norm factor does not divide norm(q)")
    other = "s" if var == "t" else "t"
    axis = 1 if var == "t" else 0
    pivot = max(lead_slice.coeffs, key=lambda key: lead_slice.coeffs[key].magnitude())
    a = lead_slice.coeffs[pivot]
    b = const_slice.coeff_in(other, pivot[axis]).coeff(0, 0)
    h = polish_linear_factor(q, var, -(a.inverse(0.0) * b), "right")
    _, check = divrem_linear_right(q, var, h)
    if check.max_coeff_norm() > max(eps, 1e-8) * max(1.0, q.max_coeff_norm()):
        raise DegenerateRemainder(
            f"no right factor with norm {m!r} "
            f"(division residual {check.max_coeff_norm():.3e})")
    return h


def left_factor(q: QuatPoly, m: RealPoly, eps: float = DEFAULT_EPS) -> Quaternion:
    """Left analogue of right_factor, via the conjugate polynomial."""
    return right_factor(q.conj(), m, eps).conj()


def peel_right_factor(q: QuatPoly, h: Quaternion, var: str,
                      eps: float = DEFAULT_EPS) -> QuatPoly:
    """Quotient q / (var - h) on the right; the division must be exact."""
    quo, rem = divrem_linear_right(q, var, h)
    if rem.max_coeff_norm() > eps * max(1.0, q.max_coeff_norm()):
        raise DegenerateRemainder(
            f"(var - h) with h={h!r} is not a right factor "
            f"(residual {rem.max_coeff_norm():.3e})")
    return quo


def quaternion_linear_factors(f: RealPoly, eps: float = DEFAULT_EPS) -> list:
    """Monic linear factors over H whose product is the monic real poly f.

    Real roots r contribute (v - r) per multiplicity; a conjugate complex
    pair z, conj(z) contributes (v - h)(v - conj(h)) with h = Re(z) + Im(z) i.
    """
    if f.degree() < 1:
        raise ValueError("constant polynomials have no linear factors")
    if not f.is_monic(eps):
        raise ValueError("expected a monic polynomial")
    factors = []
    for z, mult in sorted(clustered_roots(f, eps), key=lambda e: (e[0].real, e[0].imag)):
        if z.imag == 0.0:
            factors.extend([LinearFactor(f.var, Quaternion(z.real))] * mult)
        elif z.imag > 0:
            h = Quaternion(z.real, z.imag)
            factors.extend([LinearFactor(f.var, h), LinearFactor(f.var, h.conj())] * mult)
    return factors


def factor_univariate(q: QuatPoly, order, eps: float = DEFAULT_EPS) -> Factorization:
    """Factor a nonconstant univariate polynomial with the given norm-factor order.

    ``order`` is a permutation of the quadratic factors of the norm of the
    real-content-free part of q; the i-th extracted right factor has norm
    order[i].  Real content is factored separately and leads the result.
    """
    var = q.sole_variable()
    deg = q.deg_in(var)
    if deg < 1:
        raise ValueError("cannot factor a constant polynomial")
    unit = q.coeff_in(var, deg).coeff(0, 0)
    current = unit.inverse(eps) * q

    nrm = norm_poly(current, max(eps, 1e-7))
    uni = _uni_from_bi(nrm, var)
    candidates = quadratic_factors(uni, eps)
    content, current = real_content_split(current, candidates.factors, eps)

    extracted = []
    for m in order:
        h = right_factor(current, m, eps)
        current = peel_right_factor(current, h, var, eps)
        extracted.append(LinearFactor(var, h))
    tail = current.coeff(0, 0)
    if current.deg_in(var) > 0 or not tail.approx_eq(Quaternion(1.0), 1e-6):
        raise DegenerateRemainder(
            "order did not exhaust the polynomial; check it matches the norm factors")
    factors = []
    if content.degree() >= 1:
        factors.extend(quaternion_linear_factors(content, eps))
    factors.extend(reversed(extracted))
    return Factorization(unit, RealPoly.one(var), tuple(factors))


def bennett_flip(h1: Quaternion, h2: Quaternion, eps: float = DEFAULT_EPS):
    """The second factorization (v - k1)(v - k2) of (v - h1)(v - h2).

    Swaps the two norm quadratics.  Undefined when h2 = conj(h1): the
    product is then a real quadratic with a whole sphere of factorizations.
    """
    gap = h1.conj() - h2
    scale = max(1.0, h1.magnitude(), h2.magnitude())
    if gap.magnitude() <= eps * scale:
        raise NoFlip("factors are conjugate; the product is a real quadratic")
    k2 = -(gap.inverse(0.0) * (h1 * h2 - h1 * h1.conj()))
    k1 = h1 + h2 - k2
    return k1, k2


def _uni_from_bi(bi, var: str) -> RealPoly:
    """Collapse a bivariate real poly that only involves ``var`` to a RealPoly."""
    arr = bi.coeffs
    if var == "t":
        if arr.shape[1] > 1:
            raise ValueError("polynomial is not univariate in t")
        return RealPoly("t", tuple(arr[:, 0]))
    if arr.shape[0] > 1:
        raise ValueError("polynomial is not univariate in s")
    return RealPoly("s", tuple(arr[0, :]))
