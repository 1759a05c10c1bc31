import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quatfact import (NonMonicDivisor, NotRankOne, OddRealRoot, RealBiPoly,
                      RealPoly, divrem, quadratic_factors, roots, separable_split)

S2 = math.sqrt(2.0)


def test_roots_t2_plus_1():
    got = sorted(roots(RealPoly("t", (1, 0, 1))), key=lambda z: z.imag)
    assert got[0] == pytest.approx(-1j, abs=1e-12)
    assert got[1] == pytest.approx(1j, abs=1e-12)


def test_roots_t4_plus_1():
    got = roots(RealPoly("t", (1, 0, 0, 0, 1)))
    expected = {complex(c, s) for c in (S2 / 2, -S2 / 2) for s in (S2 / 2, -S2 / 2)}
    for r in got:
        assert min(abs(r - e) for e in expected) < 1e-10


def test_roots_two_quadratics():
    p = RealPoly("t", (2, 0, 1)) * RealPoly("t", (3, 0, 1)) * (1 / 2)
    got = roots(p.monic())
    expected = [2 ** 0.5 * 1j, -(2 ** 0.5) * 1j, 3 ** 0.5 * 1j, -(3 ** 0.5) * 1j]
    for e in expected:
        assert min(abs(r - e) for r in got) < 1e-10


def test_roots_rejects_constants():
    with pytest.raises(ValueError):
        roots(RealPoly("t", (3,)))


class TestQuadraticFactors:
    def test_s4_plus_1_order_and_values(self):
        tup = quadratic_factors(RealPoly("s", (1, 0, 0, 0, 1)))
        assert len(tup) == 2
        assert tup[0].approx_eq(RealPoly("s", (1, -S2, 1)), 1e-9)
        assert tup[1].approx_eq(RealPoly("s", (1, S2, 1)), 1e-9)

    def test_product_of_two_quadratics(self):
        p = RealPoly("s", (2, 0, 1)) * RealPoly("s", (3, 0, 1))
        tup = quadratic_factors(p)
        assert tup[0].approx_eq(RealPoly("s", (2, 0, 1)), 1e-9)
        assert tup[1].approx_eq(RealPoly("s", (3, 0, 1)), 1e-9)

    def test_quartic_real_root_block(self):
        p = RealPoly("t", (1, -4, 6, -4, 1))  # (t-1)^4
        tup = quadratic_factors(p)
        assert len(tup) == 2
        for f in tup:
            assert f.approx_eq(RealPoly("t", (1, -2, 1)), 1e-7)
        assert (tup.product() - p).max_abs() <= 1e-10

    def test_repeated_irreducible(self):
        p = RealPoly("t", (1, 0, 1)) * RealPoly("t", (1, 0, 1)) * RealPoly("t", (2, -2, 1))
        tup = quadratic_factors(p)
        assert len(tup) == 3
        assert (tup.product() - p).max_abs() <= 1e-9 * p.max_abs()

    def test_odd_real_root_rejected(self):
        p = RealPoly("t", (-1, 1)) * RealPoly("t", (1, 0, 1)) * RealPoly("t", (2, 1))
        with pytest.raises(OddRealRoot):
            quadratic_factors(p)

    def test_odd_degree_rejected(self):
        with pytest.raises(OddRealRoot):
            quadratic_factors(RealPoly("t", (0, 1)))

    def test_leading_scalar_preserved(self):
        p = RealPoly("t", (1, 0, 1)) * 3.5
        tup = quadratic_factors(p)
        assert tup.lead == pytest.approx(3.5)
        assert (tup.product() - p).max_abs() <= 1e-9 * p.max_abs()

    def test_reconstruction_random_mixes(self):
        rng = random.Random(7)
        for _ in range(30):
            factors = []
            for _ in range(rng.randrange(1, 7)):
                b = rng.uniform(-2, 2)
                c = b * b / 4 + rng.uniform(0.1, 4)  # negative discriminant
                factors.append(RealPoly("t", (c, b, 1)))
            if rng.random() < 0.3:
                factors.append(factors[-1])  # repeated factor
            if rng.random() < 0.3:
                r = rng.uniform(-2, 2)
                factors.append(RealPoly("t", (r * r, -2 * r, 1)))  # (t-r)^2
            factors = factors[:6]
            lead = rng.uniform(0.5, 2)
            p = RealPoly("t", (lead,))
            for f in factors:
                p = p * f
            tup = quadratic_factors(p)
            assert len(tup) == len(factors)
            residual = (tup.product() - p).max_abs() / max(1.0, p.max_abs())
            assert residual <= 1e-8


class TestDivrem:
    def test_linear_divisor(self):
        quo, rem = divrem(RealPoly("t", (1, 0, 1)), RealPoly("t", (-1, 1)))
        assert quo.approx_eq(RealPoly("t", (1, 1)))
        assert rem.approx_eq(RealPoly("t", (2,)))

    def test_cyclotomic_split(self):
        quo, rem = divrem(RealPoly("s", (1, 0, 0, 0, 1)), RealPoly("s", (1, S2, 1)))
        # (s^2 - sqrt2 s + 1)(s^2 + sqrt2 s + 1) = s^4 + 1
        assert quo.approx_eq(RealPoly("s", (1, -S2, 1)), 1e-12)
        assert rem.max_abs() <= 1e-12

    def test_divide_by_one(self):
        p = RealPoly("t", (3, 2, 1))
        quo, rem = divrem(p, RealPoly.one("t"))
        assert quo.approx_eq(p)
        assert rem.is_zero()

    def test_nonmonic_rejected(self):
        with pytest.raises(NonMonicDivisor):
            divrem(RealPoly("t", (1, 1)), RealPoly("t", (1, 2)))

    @given(st.lists(st.floats(-10, 10), min_size=1, max_size=9),
           st.lists(st.floats(-10, 10), min_size=1, max_size=4))
    def test_reconstruction(self, pc, dc):
        p = RealPoly("t", tuple(pc))
        d = RealPoly("t", tuple(dc) + (1.0,))
        quo, rem = divrem(p, d)
        back = quo * d + rem
        assert (back - p).max_abs() <= 1e-9 * max(1.0, p.max_abs(), d.max_abs() ** 2)
        assert rem.degree() < d.degree()


class TestSeparableSplit:
    def test_product_form(self):
        n = RealBiPoly.from_separable(RealPoly("t", (1, 0, 0, 0, 1)),
                                      RealPoly("s", (1, 0, 0, 0, 1)))
        p, r = separable_split(n)
        assert p.approx_eq(RealPoly("t", (1, 0, 0, 0, 1)))
        assert r.approx_eq(RealPoly("s", (1, 0, 0, 0, 1)))

    def test_t2_plus_s2_fails(self):
        n = RealBiPoly([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
        with pytest.raises(NotRankOne) as err:
            separable_split(n)
        assert err.value.minor_value == pytest.approx(1.0)

    def test_leading_scalar_folds_into_p(self):
        n = RealBiPoly.from_separable(RealPoly("t", (2, 0, 4)), RealPoly("s", (3, 3)))
        p, r = separable_split(n)
        assert r.is_monic()
        assert RealBiPoly.from_separable(p, r).approx_eq(n, 1e-9)

    def test_roundtrip_random_rank_one(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            a = rng.normal(size=rng.integers(1, 6))
            b = rng.normal(size=rng.integers(1, 6))
            a[-1] = a[-1] if abs(a[-1]) > 0.1 else 1.0
            b[-1] = b[-1] if abs(b[-1]) > 0.1 else 1.0
            n = RealBiPoly(np.outer(a, b))
            p, r = separable_split(n)
            assert RealBiPoly.from_separable(p, r).approx_eq(n, 1e-8)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            separable_split(RealBiPoly([[0.0]]))


def test_bipoly_eval_and_nonnegativity():
    n = RealBiPoly.from_separable(RealPoly("t", (1, 0, 1)), RealPoly("s", (2, 0, 1)))
    rng = random.Random(3)
    for _ in range(50):
        t0, s0 = rng.uniform(-3, 3), rng.uniform(-3, 3)
        assert n(t0, s0) >= -1e-12 * n.max_abs()
