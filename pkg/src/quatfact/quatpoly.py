"""Polynomials over the quaternions with central indeterminates t and s.

``QuatPoly`` is a sparse monomial map (t_degree, s_degree) -> Quaternion.
The indeterminates commute with all coefficients and with each other;
coefficient multiplication stays noncommutative.  Univariate polynomials
are the specializations with one degree pinned to zero.

Division with remainder by a monic *real* univariate polynomial views the
dividend as a polynomial in that variable with coefficients in the ring of
quaternionic polynomials in the other variable; since the divisor is
central and monic this is ordinary long division.
"""

from __future__ import annotations

import numpy as np

from .errors import NonMonicDivisor, NonRealResidue, ZeroRemainder
from .quaternion import DEFAULT_EPS, Quaternion
from .realpoly import RealBiPoly, RealPoly

_ZERO = Quaternion()
_TRIM = 1e-12


class QuatPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        terms = {}
        scale = 0.0
        if coeffs:
            for key, q in coeffs.items():
                scale = max(scale, q.magnitude())
        cutoff = _TRIM * scale
        if coeffs:
            for (i, j), q in coeffs.items():
                if q.magnitude() > cutoff:
                    terms[(int(i), int(j))] = q
        self.coeffs = terms

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> "QuatPoly":
        return cls()

    @classmethod
    def constant(cls, q) -> "QuatPoly":
        if isinstance(q, (int, float)):
            q = Quaternion(float(q))
        return cls({(0, 0): q})

    @classmethod
    def term(cls, i: int, j: int, q: Quaternion) -> "QuatPoly":
        return cls({(i, j): q})

    @classmethod
    def variable(cls, var: str) -> "QuatPoly":
        key = (1, 0) if var == "t" else (0, 1)
        return cls({key: Quaternion(1.0)})

    @classmethod
    def linear(cls, var: str, h: Quaternion) -> "QuatPoly":
        """Monic linear factor var - h."""
        key = (1, 0) if var == "t" else (0, 1)
        return cls({key: Quaternion(1.0), (0, 0): -h})

    @classmethod
    def from_real(cls, p: RealPoly) -> "QuatPoly":
        terms = {}
        for k, c in enumerate(p.coeffs):
            if c:
                key = (k, 0) if p.var == "t" else (0, k)
                terms[key] = Quaternion(c)
        return cls(terms)

    @classmethod
    def from_real_bi(cls, p: RealBiPoly) -> "QuatPoly":
        terms = {}
        rows, cols = p.coeffs.shape
        for i in range(rows):
            for j in range(cols):
                c = p.coeffs[i, j]
                if c:
                    terms[(i, j)] = Quaternion(float(c))
        return cls(terms)

    # -- structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int, j: int) -> Quaternion:
        return self.coeffs.get((i, j), _ZERO)

    def bidegree(self):
        """(deg_t, deg_s); (-1, -1) for the zero polynomial."""
        if not self.coeffs:
            return (-1, -1)
        return (max(i for i, _ in self.coeffs), max(j for _, j in self.coeffs))

    def deg_in(self, var: str) -> int:
        if not self.coeffs:
            return -1
        idx = 0 if var == "t" else 1
        return max(key[idx] for key in self.coeffs)

    def coeff_in(self, var: str, k: int) -> "QuatPoly":
        """Coefficient of var**k, a polynomial in the other variable."""
        terms = {}
        if var == "t":
            for (i, j), q in self.coeffs.items():
                if i == k:
                    terms[(0, j)] = q
        else:
            for (i, j), q in self.coeffs.items():
                if j == k:
                    terms[(i, 0)] = q
        return QuatPoly(terms)

    def is_univariate_in(self, var: str) -> bool:
        other = "s" if var == "t" else "t"
        return self.deg_in(other) <= 0

    def sole_variable(self) -> str:
        """The variable of a univariate polynomial (defaults to 't' for constants)."""
        if self.deg_in("s") > 0:
            if self.deg_in("t") > 0:
                raise ValueError("polynomial is genuinely bivariate")
            return "s"
        return "t"

    def max_coeff_norm(self) -> float:
        return max((q.magnitude() for q in self.coeffs.values()), default=0.0)

    def lc_grlex(self) -> Quaternion:
        """Leading coefficient in graded lexicographic order (t before s)."""
        if not self.coeffs:
            return _ZERO
        key = max(self.coeffs, key=lambda ij: (ij[0] + ij[1], ij[0]))
        return self.coeffs[key]

    def is_monic(self, eps: float = DEFAULT_EPS) -> bool:
        return (self.lc_grlex() - Quaternion(1.0)).magnitude() <= eps

    # -- arithmetic --------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.coeffs)
        for key, q in other.coeffs.items():
            acc = terms.get(key)
            terms[key] = q if acc is None else acc + q
        return QuatPoly(terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return QuatPoly({key: -q for key, q in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return QuatPoly({key: q * other for key, q in self.coeffs.items()})
        if isinstance(other, (int, float)):
            return QuatPoly({key: q * other for key, q in self.coeffs.items()})
        other = _coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for (i1, j1), a in self.coeffs.items():
            for (i2, j2), b in other.coeffs.items():
                key = (i1 + i2, j1 + j2)
                prod = a * b
                acc = terms.get(key)
                terms[key] = prod if acc is None else acc + prod
        return QuatPoly(terms)

    def __rmul__(self, other):
        if isinstance(other, Quaternion):
            return QuatPoly({key: other * q for key, q in self.coeffs.items()})
        if isinstance(other, (int, float)):
            return self * other
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self

    def conj(self) -> "QuatPoly":
        return QuatPoly({key: q.conj() for key, q in self.coeffs.items()})

    def eval_real(self, t: float, s: float) -> Quaternion:
        """Evaluate at a real point; real points are central, so products map to products."""
        acc = Quaternion()
        for (i, j), q in self.coeffs.items():
            acc = acc + q * (t ** i * s ** j)
        return acc

    def approx_eq(self, other: "QuatPoly", eps: float = DEFAULT_EPS) -> bool:
        scale = max(1.0, self.max_coeff_norm(), other.max_coeff_norm())
        return (self - other).max_coeff_norm() <= eps * scale

    # -- reality -----------------------------------------------------

    def imag_norm(self) -> float:
        return max((Quaternion(0, q.x, q.y, q.z).magnitude()
                    for q in self.coeffs.values()), default=0.0)

    def real_part_bi(self) -> RealBiPoly:
        dt, ds = self.bidegree()
        if dt < 0:
            return RealBiPoly([[0.0]])
        arr = np.zeros((dt + 1, ds + 1))
        for (i, j), q in self.coeffs.items():
            arr[i, j] = q.w
        return RealBiPoly(arr)

    def real_component(self, which: int) -> RealBiPoly:
        """One of the four real component polynomials (0 -> 1, 1 -> i, ...)."""
        dt, ds = self.bidegree()
        if dt < 0:
            return RealBiPoly([[0.0]])
        arr = np.zeros((dt + 1, ds + 1))
        for (i, j), q in self.coeffs.items():
            arr[i, j] = (q.w, q.x, q.y, q.z)[which]
        return RealBiPoly(arr)

    def as_dict(self):
        items = sorted(self.coeffs.items())
        return {"terms": [{"t": i, "s": j, "c": q.as_list()} for (i, j), q in items]}

    @classmethod
    def from_dict(cls, data) -> "QuatPoly":
        terms = {}
        for entry in data["terms"]:
            key = (int(entry["t"]), int(entry["s"]))
            q = Quaternion.from_list(entry["c"])
            terms[key] = terms.get(key, _ZERO) + q
        return cls(terms)

    def __repr__(self):
        if not self.coeffs:
            return "QuatPoly(0)"
        parts = []
        for (i, j), q in sorted(self.coeffs.items()):
            mono = "".join(p for p in (f"t^{i}" if i else "", f"s^{j}" if j else "") if p)
            parts.append(f"({q.w:g},{q.x:g},{q.y:g},{q.z:g}){mono}")
        return "QuatPoly(" + " + ".join(parts) + ")"


def _coerce(value):
    if isinstance(value, QuatPoly):
        return value
    if isinstance(value, Quaternion):
        return QuatPoly.constant(value)
    if isinstance(value, (int, float)):
        return QuatPoly.constant(float(value))
    if isinstance(value, RealPoly):
        return QuatPoly.from_real(value)
    return None


def norm_poly(q: QuatPoly, eps: float = DEFAULT_EPS) -> RealBiPoly:
    """The real polynomial conj(q) * q.

    The product is real up to rounding; the imaginary residue is checked
    against tolerance and discarded.
    """
    prod = q.conj() * q
    scale = max(1.0, prod.max_coeff_norm())
    if prod.imag_norm() > eps * scale:
        raise NonRealResidue(
            f"imaginary residue {prod.imag_norm():.3e} exceeds {eps * scale:.3e}")
    return prod.real_part_bi()


def divrem_real(q: QuatPoly, m: RealPoly, eps: float = DEFAULT_EPS):
    """Division with remainder of q by a monic real univariate m.

    Returns (T, S) with q = T*m + S and deg(S) < deg(m) in m's variable.
    """
    if m.is_zero() or not m.is_monic(eps):
        raise NonMonicDivisor(f"divisor {m!r} is not monic")
    d = m.degree()
    if d == 0:
        return q, QuatPoly.zero()
    in_t = m.var == "t"
    axis = 0 if in_t else 1
    rem = dict(q.coeffs)
    quo = {}
    top = max((key[axis] for key in rem), default=-1)
    for k in range(top, d - 1, -1):
        level = [key for key in rem if key[axis] == k]
        for key in level:
            c = rem.pop(key)
            base = (key[0] - d, key[1]) if in_t else (key[0], key[1] - d)
            acc = quo.get(base)
            quo[base] = c if acc is None else acc + c
            for r, mc in enumerate(m.coeffs[:-1]):
                if mc == 0.0:
                    continue
                tgt = (base[0] + r, base[1]) if in_t else (base[0], base[1] + r)
                cur = rem.get(tgt, _ZERO)
                rem[tgt] = cur - c * mc
    return QuatPoly(quo), QuatPoly(rem)


def divides_real(q: QuatPoly, m: RealPoly, eps: float = DEFAULT_EPS) -> bool:
    """True when the remainder of q by m vanishes relative to q's size."""
    _, rem = divrem_real(q, m, eps)
    return rem.max_coeff_norm() <= eps * max(1.0, q.max_coeff_norm())


def div_real_exact(q: QuatPoly, m: RealPoly, eps: float = DEFAULT_EPS) -> QuatPoly:
    """Quotient q / m for a known real divisor; remainder must vanish."""
    quo, rem = divrem_real(q, m, eps)
    if rem.max_coeff_norm() > eps * max(1.0, q.max_coeff_norm()):
        raise ZeroRemainder(
            f"remainder norm {rem.max_coeff_norm():.3e} not negligible; "
            f"{m!r} does not divide the polynomial")
    return quo


def divrem_linear_right(q: QuatPoly, var: str, h: Quaternion):
    """Split off the monic right factor (var - h): q = Q' * (var - h) + r."""
    axis = 0 if var == "t" else 1
    n = q.deg_in(var)
    if n < 1:
        return QuatPoly.zero(), q
    levels = [dict() for _ in range(n + 1)]
    for key, c in q.coeffs.items():
        levels[key[axis]][key[1 - axis]] = c
    quo_levels = [dict() for _ in range(n)]
    carry = levels[n]
    for k in range(n - 1, -1, -1):
        quo_levels[k] = carry
        nxt = dict(levels[k])
        for o, c in carry.items():
            prev = nxt.get(o, _ZERO)
            nxt[o] = prev + c * h
        carry = nxt
    quo = {}
    for k, lev in enumerate(quo_levels):
        for o, c in lev.items():
            key = (k, o) if var == "t" else (o, k)
            quo[key] = c
    rem = {}
    for o, c in carry.items():
        key = (0, o) if var == "t" else (o, 0)
        rem[key] = c
    return QuatPoly(quo), QuatPoly(rem)


def divrem_linear_left(q: QuatPoly, var: str, h: Quaternion):
    """Split off the monic left factor (var - h): q = (var - h) * Q' + r."""
    axis = 0 if var == "t" else 1
    n = q.deg_in(var)
    if n < 1:
        return QuatPoly.zero(), q
    levels = [dict() for _ in range(n + 1)]
    for key, c in q.coeffs.items():
        levels[key[axis]][key[1 - axis]] = c
    quo_levels = [dict() for _ in range(n)]
    carry = levels[n]
    for k in range(n - 1, -1, -1):
        quo_levels[k] = carry
        nxt = dict(levels[k])
        for o, c in carry.items():
            prev = nxt.get(o, _ZERO)
            nxt[o] = prev + h * c
        carry = nxt
    quo = {}
    for k, lev in enumerate(quo_levels):
        for o, c in lev.items():
            key = (k, o) if var == "t" else (o, k)
            quo[key] = c
    rem = {}
    for o, c in carry.items():
        key = (0, o) if var == "t" else (o, 0)
        rem[key] = c
    return QuatPoly(quo), QuatPoly(rem)


def polish_linear_factor(q: QuatPoly, var: str, h: Quaternion, side: str,
                         steps: int = 3) -> Quaternion:
    """Newton-refine h so that (var - h) divides q on the given side.

    Extraction from remainder corners loses accuracy when two norm factors
    nearly coincide; a few Gauss-Newton steps against the actual division
    residual restore it.  Returns the best iterate found.
    """
    div = divrem_linear_right if side == "right" else divrem_linear_left
    other = "s" if var == "t" else "t"
    width = q.deg_in(other) + 1

    def residual(cand):
        _, rem = div(q, var, cand)
        vec = np.zeros(4 * width)
        for (i, j), c in rem.coeffs.items():
            k = j if var == "t" else i
            vec[4 * k : 4 * k + 4] = c.as_list()
        return vec

    best = h
    best_vec = residual(h)
    best_norm = float(np.linalg.norm(best_vec))
    current, current_vec = h, best_vec
    delta = 1e-7 * max(1.0, h.magnitude())
    basis = (Quaternion(delta), Quaternion(0, delta),
             Quaternion(0, 0, delta), Quaternion(0, 0, 0, delta))
    for _ in range(steps):
        if best_norm <= 1e-14 * max(1.0, q.max_coeff_norm()):
            break
        jac = np.column_stack([
            (residual(current + b) - current_vec) / delta for b in basis])
        step, *_ = np.linalg.lstsq(jac, -current_vec, rcond=None)
        current = current + Quaternion(*step)
        current_vec = residual(current)
        norm = float(np.linalg.norm(current_vec))
        if norm < best_norm:
            best, best_vec, best_norm = current, current_vec, norm
        else:
            break
    return best


def real_content_split(q: QuatPoly, candidates, eps: float = DEFAULT_EPS):
    """Largest real polynomial factor of q built from candidate quadratics.

    Each monic quadratic candidate is divided out repeatedly while it
    divides all four components; squared-linear candidates additionally
    probe their linear root, catching odd leftover multiplicities.
    Returns (content, primitive) with q = content * primitive and no
    candidate dividing the primitive part.
    """
    factors = list(candidates)
    if not factors:
        return RealPoly.one("t"), q
    var = factors[0].var
    content = RealPoly.one(var)
    current = q
    for cand in factors:
        if not cand.is_monic(eps) or cand.degree() != 2:
            raise ValueError(f"candidate {cand!r} is not a monic quadratic")
        while divides_real(current, cand, eps):
            current = div_real_exact(current, cand, eps)
            content = content * cand
        b, c = cand.coeffs[1], cand.coeffs[0]
        disc = b * b - 4.0 * c
        if disc >= -1e-7 * max(1.0, b * b, abs(c)):
            root1 = (-b + max(disc, 0.0) ** 0.5) / 2.0
            root2 = (-b - max(disc, 0.0) ** 0.5) / 2.0
            probes = [root1] if abs(root1 - root2) <= 1e-9 * max(1.0, abs(root1)) else [root1, root2]
            for r in probes:
                lin = RealPoly.linear(var, r)
                while divides_real(current, lin, eps):
                    current = div_real_exact(current, lin, eps)
                    content = content * lin
    return content, current
