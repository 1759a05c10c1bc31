"""Univariate factorizations of bivariate quaternionic polynomials.

Two cooperating factorization routines live here.

``factor_linear_in`` handles polynomials of degree at most one in a chosen
variable (say s).  For each monic quadratic factor M(t) of the norm's
t-part it divides with remainder, U = T*M + S, and splits the bilinear
remainder S: depending on which corner products vanish, a monic linear
t-factor comes off on the left or the right, and M is consumed.  What
survives is a single linear s-polynomial sandwiched between the extracted
t-factors.

``cofactor_factorize`` reduces the general case to the linear one.  Given
an ordering (M_1, ..., M_n) of the quadratic factors of the norm's s-part,
it repeatedly divides by M_i, fully factors the remainder (linear in s),
and forces the remainder's left block (t-factors and one s-factor) to be a
left factor of U -- at the price of multiplying by the real norm K_i of
the t-block.  Cancelling the K_i factors that happen to divide the updated
cofactor keeps the accumulated real multiplier K as small as possible;
when the input admits a plain univariate factorization, some ordering
drives K all the way down to 1.

Equivalence of factorizations is decided by a breadth-first search over
the two elementary rewrite operations: swapping adjacent commuting factors
and Bennett-flipping adjacent same-variable pairs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (DegenerateRemainder, DifferentPolynomials, NFCViolated,
                     NotRankOne, StateBudgetExceeded)
from .quaternion import DEFAULT_EPS, Quaternion
from .quatpoly import (QuatPoly, div_real_exact, divides_real, divrem_linear_left,
                       divrem_linear_right, divrem_real, norm_poly,
                       polish_linear_factor, real_content_split)
from .realpoly import RealPoly, quadratic_factors, separable_split
from .unifactor import Factorization, LinearFactor, bennett_flip, quaternion_linear_factors

VERIFY_GATE = 1e-8
_STATE_BUDGET = 10_000
_HASH_QUANTUM = 1e-6

_ONE = Quaternion(1.0)


def _other(var: str) -> str:
    return "s" if var == "t" else "t"


@dataclass(frozen=True)
class SplitRemainder:
    """Corner coefficients of a bilinear remainder S, plus the split test values.

    s00, s10, s01, s11 multiply 1, d, v, d*v where d is the division
    variable and v the linear one.  When s11 is invertible the split is
    decided by q = -s10 * s11**-1 and p = s00 - s10 * s11**-1 * s01:
    p = 0 sends the d-factor to the right, otherwise to the left.
    """

    s00: Quaternion
    s10: Quaternion
    s01: Quaternion
    s11: Quaternion
    q: Quaternion | None
    p: Quaternion | None

    @classmethod
    def from_poly(cls, rem: QuatPoly, div_var: str, lin_var: str) -> "SplitRemainder":
        def pick(d_deg, v_deg):
            key = (d_deg, v_deg) if div_var == "t" else (v_deg, d_deg)
            return rem.coeff(*key)

        s00, s10 = pick(0, 0), pick(1, 0)
        s01, s11 = pick(0, 1), pick(1, 1)
        if s11.norm() == 0.0:
            return cls(s00, s10, s01, s11, None, None)
        inv = s11.inverse(0.0)
        return cls(s00, s10, s01, s11, -(s10 * inv), s00 - s10 * inv * s01)


def _split_step(urem: SplitRemainder, eps: float):
    """Classify the remainder: 'univariate', 'right' or 'left' split."""
    scale = max(urem.s00.magnitude(), urem.s10.magnitude(),
                urem.s01.magnitude(), urem.s11.magnitude())
    if max(urem.s01.magnitude(), urem.s11.magnitude()) <= eps * scale:
        return "univariate"
    if urem.s11.magnitude() <= eps * scale:
        raise DegenerateRemainder(
            "bilinear remainder has no invertible corner; "
            "norm split is violated")
    inv_mag = 1.0 / urem.s11.magnitude()
    p_scale = (urem.s00.magnitude()
               + urem.s10.magnitude() * inv_mag * urem.s01.magnitude())
    if urem.p.magnitude() <= eps * max(1e-30, p_scale):
        return "right"
    return "left"


def _core_linear_factorize(q: QuatPoly, mseq, lin_var: str, eps: float):
    """Peel div-var factors off a polynomial linear in ``lin_var``.

    ``mseq`` lists monic quadratics in the division variable whose product
    is the div-var part of the norm.  Returns monic left factors, the
    linear middle polynomial, and monic right factors, with
    q = prod(F_l) * U * prod(F_r).

    The candidate factor with norm m comes from the corners of the
    bilinear remainder; whether it splits off on the left or the right is
    validated against the actual division residual, with the classical
    p = 0 corner test as the tiebreak.  The working polynomial is always
    replaced by the division quotient, which keeps rounding errors from
    compounding through the recombination formulas.
    """
    div_var = _other(lin_var)
    f_left: list[Quaternion] = []
    f_right: list[Quaternion] = []
    u = q
    for m in mseq:
        _, s_rem = divrem_real(u, m, eps)
        if s_rem.max_coeff_norm() <= eps * max(1.0, u.max_coeff_norm()):
            raise DegenerateRemainder(
                f"division by {m!r} left no remainder; a real factor is present")
        split = SplitRemainder.from_poly(s_rem, div_var, lin_var)
        kind = _split_step(split, eps)
        u_scale = max(1.0, u.max_coeff_norm())
        if kind == "univariate":
            if split.s10.magnitude() <= eps * s_rem.max_coeff_norm():
                raise DegenerateRemainder("constant remainder cannot carry the norm factor")
            h = polish_linear_factor(u, div_var, -(split.s10.inverse(0.0) * split.s00),
                                     "right")
            quo, rem = divrem_linear_right(u, div_var, h)
            if rem.max_coeff_norm() > 1e-6 * u_scale:
                raise DegenerateRemainder(
                    f"extracted factor fails to divide (residual {rem.max_coeff_norm():.3e})")
            f_right.insert(0, h)
            u = quo
            continue
        h_right = polish_linear_factor(u, div_var, -(split.s11.inverse(0.0) * split.s01),
                                       "right")
        h_left = polish_linear_factor(u, div_var, -(split.s01 * split.s11.inverse(0.0)),
                                      "left")
        quo_r, rem_r = divrem_linear_right(u, div_var, h_right)
        quo_l, rem_l = divrem_linear_left(u, div_var, h_left)
        res_r = rem_r.max_coeff_norm() / u_scale
        res_l = rem_l.max_coeff_norm() / u_scale
        if res_r <= res_l / 100.0:
            choose_right = True
        elif res_l <= res_r / 100.0:
            choose_right = False
        else:
            choose_right = kind == "right"
        if min(res_r, res_l) > 1e-6:
            raise DegenerateRemainder(
                f"neither side divides for norm factor {m!r} "
                f"(residuals {res_r:.3e} / {res_l:.3e})")
        if choose_right:
            f_right.insert(0, h_right)
            u = quo_r
        else:
            f_left.append(h_left)
            u = quo_l
    if u.deg_in(div_var) > 0 or u.deg_in(lin_var) > 1:
        raise DegenerateRemainder(
            f"leftover polynomial has bidegree {u.bidegree()}; expected a linear tail")
    return f_left, u, f_right


def _internal_order(factors):
    """Deterministic consumption order for norm factors chosen internally.

    Sorted by rising |linear coefficient| with the positive sign first on
    ties; this reproduces the conventional representative factorizations.
    Keys are quantized so that values equal up to rounding noise tie.
    """
    def key(f):
        b, c = f.coeffs[1], f.coeffs[0]
        return (round(abs(b), 9), -b, round(c, 9))

    return sorted(factors, key=key)


def _norm_split(q: QuatPoly, eps: float):
    try:
        return separable_split(norm_poly(q, max(eps, 1e-9)), eps)
    except NotRankOne as exc:
        raise NFCViolated(
            f"norm polynomial is not separable: {exc}", cause=exc) from exc


def norm_split(q: QuatPoly, eps: float = DEFAULT_EPS):
    """The norm polynomial split as (P(t), R(s)); raises NFCViolated otherwise."""
    return _norm_split(q, eps)


def _split_linear_tail(u: QuatPoly, lin_var: str, eps: float):
    """Write a linear polynomial as (lin_var - h) * a; h is None for constants."""
    div_var = _other(lin_var)
    if u.deg_in(div_var) > 0:
        raise DegenerateRemainder("tail polynomial still involves the division variable")
    a = u.coeff_in(lin_var, 1).coeff(0, 0)
    b = u.coeff_in(lin_var, 0).coeff(0, 0)
    if a.magnitude() <= eps * max(1.0, u.max_coeff_norm()):
        return None, b
    return -(b * a.inverse(0.0)), a


def _factor_linear_full(q: QuatPoly, lin_var: str, eps: float, order=None):
    """Content-aware full factorization of a polynomial linear in lin_var.

    Returns (content, F_l, U, F_r) with
    q = content * prod(F_l) * U * prod(F_r), content a real polynomial in
    the division variable and U linear in lin_var.
    """
    div_var = _other(lin_var)
    div_part, lin_part = _norm_split(q, eps)
    part = div_part if div_var == "t" else lin_part
    if part.degree() >= 2:
        candidates = quadratic_factors(part.monic(), eps)
        content, prim = real_content_split(q, candidates.factors, eps)
    else:
        content, prim = RealPoly.one(div_var), q
    if content.degree() >= 1:
        div_part, lin_part = _norm_split(prim, eps)
        part = div_part if div_var == "t" else lin_part
    if order is None:
        if part.degree() >= 2:
            order = _internal_order(quadratic_factors(part.monic(), eps).factors)
        else:
            order = []
    f_left, u, f_right = _core_linear_factorize(prim, order, lin_var, eps)
    return content, f_left, u, f_right


def factor_linear_in(q: QuatPoly, order, linear_var: str = "s",
                     eps: float = DEFAULT_EPS):
    """Factor a polynomial of degree <= 1 in ``linear_var``.

    ``order`` lists the monic quadratic factors of the other variable's
    norm part in consumption order.  Returns (F_l, U, F_r): tuples of monic
    linear factors and the linear middle polynomial, with
    q = prod(F_l) * U * prod(F_r).  The input must be free of real
    polynomial factors; its norm must split into univariate parts.
    """
    if q.deg_in(linear_var) > 1:
        raise ValueError(f"polynomial has degree > 1 in {linear_var}")
    _norm_split(q, eps)
    div_var = _other(linear_var)
    f_left, u, f_right = _core_linear_factorize(q, list(order), linear_var, eps)
    left = tuple(LinearFactor(div_var, h) for h in f_left)
    right = tuple(LinearFactor(div_var, h) for h in f_right)
    return left, u, right


def _push_unit_left(factors, a: Quaternion):
    """Rewrite (prod factors) * a as a * (prod factors'); returns factors'.

    Each monic factor v - h turns into v - a**-1 h a.
    """
    if (a - _ONE).magnitude() == 0.0:
        return list(factors)
    inv = a.inverse(0.0)
    return [LinearFactor(f.var, inv * f.h * a) for f in factors]


def _push_unit_right(a: Quaternion, factors):
    """Rewrite a * (prod factors) as (prod factors') * a; returns factors'.

    Each monic factor v - h turns into v - a h a**-1.
    """
    if (a - _ONE).magnitude() == 0.0:
        return list(factors)
    inv = a.inverse(0.0)
    return [LinearFactor(f.var, a * f.h * inv) for f in factors]


def cofactor_factorize(q: QuatPoly, order, eps: float = DEFAULT_EPS):
    """Multiply q by a real polynomial K so that K*q splits into linear factors.

    ``order`` is a permutation of the monic quadratic factors of one
    univariate part of the norm; ordering by s-factors produces K in t and
    vice versa.  Returns (K, factorization) where the factorization's
    monic linear factors and leading unit reproduce K*q; K = 1 signals
    that q itself admits a univariate factorization with this ordering.

    The input must have no real polynomial factor; the norm polynomial
    must split into univariate parts (otherwise NFCViolated).
    """
    order = list(order)
    lead = q.lc_grlex()
    if lead.is_zero(eps):
        raise ValueError("cannot factor the zero polynomial")
    monic_input = (lead - _ONE).magnitude() <= 1e-12
    current = q if monic_input else lead.inverse(0.0) * q
    _norm_split(current, eps)

    if order:
        ovar = order[0].var
        for m in order:
            if m.var != ovar:
                raise ValueError("order mixes variables")
            if m.degree() != 2 or not m.is_monic(eps):
                raise ValueError(f"order entry {m!r} is not a monic quadratic")
    else:
        # No order entries: the input is univariate (or constant) and is
        # treated as linear in the missing variable.
        ovar = _other(q.sole_variable())
    kvar = _other(ovar)

    k_parts: list[RealPoly] = []
    out: list[LinearFactor] = []
    u = current
    for m in order[:-1] if order else []:
        t_quo, s_rem = divrem_real(u, m, eps)
        if s_rem.max_coeff_norm() <= eps * max(1.0, u.max_coeff_norm()):
            raise DegenerateRemainder(
                f"{m!r} divides the polynomial; real factors must be stripped first")
        content, f_left, tail, f_right = _factor_linear_full(s_rem, ovar, eps)
        h_mid, a_mid = _split_linear_tail(tail, ovar, eps)
        if h_mid is None:
            raise DegenerateRemainder("remainder lost its linear part; norm split violated")
        # G collects everything right of the extracted block, including
        # the unit of the linear tail and the remainder's real content.
        g = QuatPoly.constant(a_mid)
        for h in f_right:
            g = g * QuatPoly.linear(kvar, h)
        g = g * QuatPoly.from_real(content)
        ki = [RealPoly.quadratic(kvar, -2.0 * h.w, h.norm()) for h in f_left]
        pre = QuatPoly.linear(ovar, h_mid).conj()
        for h in reversed(f_left):
            pre = pre * QuatPoly.linear(kvar, h).conj()
        gk = g
        for part in ki:
            gk = gk * QuatPoly.from_real(part)
        u = pre * t_quo + gk
        for part in ki:
            if divides_real(u, part, eps):
                u = div_real_exact(u, part, eps)
            else:
                k_parts.append(part)
        out.extend(LinearFactor(kvar, h) for h in f_left)
        out.append(LinearFactor(ovar, h_mid))

    content, f_left, tail, f_right = _factor_linear_full(u, ovar, eps)
    h_mid, a_mid = _split_linear_tail(tail, ovar, eps)
    out.extend(LinearFactor(kvar, h) for h in f_left)
    if h_mid is not None:
        out.append(LinearFactor(ovar, h_mid))
    trailing: list[LinearFactor] = [LinearFactor(kvar, h) for h in f_right]
    if content.degree() >= 1:
        trailing.extend(quaternion_linear_factors(content, eps))
    # The tail splits as (ovar - h_mid) * a_mid (or the bare constant
    # a_mid); slide the unit to the global front through monic factors.
    out.extend(_push_unit_right(a_mid, trailing))
    factors = _push_unit_left(out, a_mid)
    unit = (_ONE if monic_input else lead) * a_mid

    k_poly = RealPoly.one(kvar)
    for part in k_parts:
        k_poly = k_poly * part
    fact = Factorization(unit, k_poly, tuple(factors))
    residual = verify_factorization(q, fact)
    if residual > VERIFY_GATE:
        raise DegenerateRemainder(
            f"factorization residual {residual:.3e} exceeds {VERIFY_GATE:g}")
    return k_poly, fact


def strip_real_content(q: QuatPoly, eps: float = DEFAULT_EPS):
    """Split q = content_t * content_s * primitive against the norm's factors.

    The candidate divisors are the quadratic factors of the two univariate
    norm parts (the square of any real factor divides the norm), so the
    returned primitive part carries no real polynomial factor.
    """
    p_part, r_part = _norm_split(q, eps)
    content_t, content_s = RealPoly.one("t"), RealPoly.one("s")
    prim = q
    if p_part.degree() >= 2:
        tup = quadratic_factors(p_part.monic(), eps)
        content_t, prim = real_content_split(prim, tup.factors, eps)
    if r_part.degree() >= 2:
        tup = quadratic_factors(r_part.monic(), eps)
        content_s, prim = real_content_split(prim, tup.factors, eps)
    return content_t, content_s, prim


def verify_factorization(q: QuatPoly, fact: Factorization) -> float:
    """Relative residual of unit * prod(factors) against K * q."""
    prod = fact.product()
    target = QuatPoly.from_real(fact.K) * q
    denom = target.max_coeff_norm()
    diff = (prod - target).max_coeff_norm()
    if denom == 0.0:
        return 0.0 if diff == 0.0 else float("inf")
    return diff / denom


# -- enumeration over factor orderings -------------------------------


@dataclass(frozen=True)
class EnumerationEntry:
    variable: str
    order: tuple
    K: RealPoly
    factorization: Factorization
    k_is_one: bool
    class_id: int | None

    def as_record(self):
        return {
            "var": self.variable,
            "order": list(self.order),
            "K": self.K.as_dict(),
            "unit": self.factorization.unit.as_list(),
            "factors": [f.as_dict() for f in self.factorization.factors],
            "k_is_one": self.k_is_one,
            "class": self.class_id,
        }


@dataclass(frozen=True)
class EnumerationReport:
    entries: tuple

    def k_one_entries(self):
        return [e for e in self.entries if e.k_is_one]

    def num_k_one(self) -> int:
        return len(self.k_one_entries())

    def num_classes(self) -> int:
        ids = {e.class_id for e in self.entries if e.class_id is not None}
        return len(ids)

    def as_records(self):
        return [e.as_record() for e in self.entries]


def enumerate_factorizations(q: QuatPoly, variables=("s", "t"),
                             eps: float = DEFAULT_EPS) -> EnumerationReport:
    """Run the cofactor factorization for every ordering of the norm factors.

    For each requested variable role, all distinct permutations of that
    variable's quadratic norm factors are tried.  Entries with K = 1 are
    grouped into equivalence classes under adjacent commuting swaps and
    Bennett flips.  The number of classes never exceeds min(m, n)! for a
    polynomial of bidegree (m, n).
    """
    p_part, r_part = _norm_split(q, eps)
    entries: list[EnumerationEntry] = []
    for var in variables:
        part = r_part if var == "s" else p_part
        if part.degree() < 2:
            continue
        tup = quadratic_factors(part.monic(), eps)
        seen = set()
        for perm in itertools.permutations(range(len(tup))):
            key = tuple(tuple(round(c, 9) for c in tup[i].coeffs) for i in perm)
            if key in seen:
                continue
            seen.add(key)
            k_poly, fact = cofactor_factorize(q, [tup[i] for i in perm], eps)
            entries.append(EnumerationEntry(var, tuple(perm), k_poly, fact,
                                            k_poly.is_one(1e-8), None))
    # group the K = 1 entries into equivalence classes
    reps: list[tuple[int, Factorization]] = []
    classed: list[EnumerationEntry] = []
    for entry in entries:
        cid = None
        if entry.k_is_one:
            for known_id, rep in reps:
                if equivalent(rep, entry.factorization, eps=eps):
                    cid = known_id
                    break
            if cid is None:
                cid = len(reps)
                reps.append((cid, entry.factorization))
        classed.append(EnumerationEntry(entry.variable, entry.order, entry.K,
                                        entry.factorization, entry.k_is_one, cid))
    return EnumerationReport(tuple(classed))


# -- equivalence ------------------------------------------------------


def _require_same_polynomial(f1: Factorization, f2: Factorization, eps: float):
    if not f1.product().approx_eq(f2.product(), max(eps, 1e-8)):
        raise DifferentPolynomials("factorizations do not multiply to the same polynomial")


def t_equivalent(f1: Factorization, f2: Factorization, eps: float = DEFAULT_EPS) -> bool:
    """True when the ordered s-factor norm sequences agree pairwise."""
    return _norm_sequence_equal(f1, f2, "s", eps)


def s_equivalent(f1: Factorization, f2: Factorization, eps: float = DEFAULT_EPS) -> bool:
    """Mirror of t_equivalent: compares the ordered t-factor norms."""
    return _norm_sequence_equal(f1, f2, "t", eps)


def _norm_sequence_equal(f1, f2, var, eps):
    _require_same_polynomial(f1, f2, eps)
    n1 = [f.norm_quadratic() for f in f1.factors_in(var)]
    n2 = [f.norm_quadratic() for f in f2.factors_in(var)]
    if len(n1) != len(n2):
        return False
    return all(a.approx_eq(b, max(eps, 1e-7)) for a, b in zip(n1, n2))


def _state_key(factors):
    out = []
    for f in factors:
        h = f.h
        out.append((f.var, round(h.w / _HASH_QUANTUM), round(h.x / _HASH_QUANTUM),
                    round(h.y / _HASH_QUANTUM), round(h.z / _HASH_QUANTUM)))
    return tuple(out)


def _states_match(fa, fb, tol) -> bool:
    if len(fa) != len(fb):
        return False
    return all(a.var == b.var and a.h.approx_eq(b.h, tol) for a, b in zip(fa, fb))


def _neighbor_states(factors, eps):
    for idx in range(len(factors) - 1):
        a, b = factors[idx], factors[idx + 1]
        if a.h.commutes_with(b.h, max(eps, 1e-9)):
            yield factors[:idx] + (b, a) + factors[idx + 2:]
        if a.var == b.var and (a.h.conj() - b.h).magnitude() > 1e-9 * max(
                1.0, a.h.magnitude(), b.h.magnitude()):
            k1, k2 = bennett_flip(a.h, b.h, eps)
            yield factors[:idx] + (LinearFactor(a.var, k1), LinearFactor(a.var, k2)) \
                + factors[idx + 2:]


def equivalent(f1: Factorization, f2: Factorization, eps: float = DEFAULT_EPS) -> bool:
    """Decide equivalence by searching the rewrite graph breadth first.

    The elementary operations are swapping adjacent commuting factors and
    replacing an adjacent same-variable pair by its Bennett flip.  Factor
    norms are invariant under both, so the reachable set is finite; a
    10000-state budget guards against numerical drift.
    """
    _require_same_polynomial(f1, f2, eps)
    if len(f1.factors) != len(f2.factors):
        return False
    tol = max(eps, 1e-6)
    start = tuple(f1.factors)
    goal = tuple(f2.factors)
    if _states_match(start, goal, tol):
        return True
    visited = {_state_key(start)}
    frontier = [start]
    while frontier:
        nxt = []
        for state in frontier:
            for neighbor in _neighbor_states(state, eps):
                key = _state_key(neighbor)
                if key in visited:
                    continue
                if _states_match(neighbor, goal, tol):
                    return True
                visited.add(key)
                if len(visited) > _STATE_BUDGET:
                    raise StateBudgetExceeded(
                        f"equivalence search exceeded {_STATE_BUDGET} states")
                nxt.append(neighbor)
        frontier = nxt
    return False
