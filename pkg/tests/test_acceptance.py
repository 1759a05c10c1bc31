"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest -v -s tests/test_acceptance.py`` to see the lines inline.
"""

import itertools
import math
import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

import golden
from conftest import random_quaternion, random_rotation_like
from quatfact import (LinearFactor, QuatPoly, Quaternion, RealPoly, bennett_flip,
                      build_lift_system, cofactor_factorize,
                      enumerate_factorizations, equivalent, norm_poly,
                      quadratic_factors, solve_lift, t_equivalent,
                      verify_factorization, verify_lift)

S2 = math.sqrt(2.0)


@contextmanager
def criterion(number, label):
    try:
        yield
    except BaseException:
        print(f"FAIL criterion {number}: {label}")
        raise
    print(f"PASS criterion {number}: {label}")


def check_factors(fact, pairs, tol=1e-8):
    assert len(fact.factors) == len(pairs)
    for factor, (var, h) in zip(fact.factors, pairs):
        assert factor.var == var
        for got, want in zip(factor.h.as_list(), h.as_list()):
            assert abs(got - want) <= tol


def test_criterion_1_beauregard_identity():
    with criterion(1, "six-factor identity for the irreducible degree-(2,2) polynomial"):
        start = time.perf_counter()
        k_poly, fact = cofactor_factorize(
            golden.beauregard(),
            [RealPoly("s", (1, S2, 1)), RealPoly("s", (1, -S2, 1))])
        elapsed = time.perf_counter() - start
        assert k_poly.approx_eq(RealPoly("t", (1, 0, 1)), 1e-8)
        check_factors(fact, golden.EQ5_PAIRS, tol=1e-8)
        assert verify_factorization(golden.beauregard(), fact) <= 1e-8
        assert elapsed < 1.0


def test_criterion_2_all_four_multiples():
    with criterion(2, "both s-orders and both t-orders reproduce the four known identities"):
        cases = [
            ([RealPoly("s", (1, S2, 1)), RealPoly("s", (1, -S2, 1))],
             RealPoly("t", (1, 0, 1)), golden.EQ5_PAIRS),
            ([RealPoly("s", (1, -S2, 1)), RealPoly("s", (1, S2, 1))],
             RealPoly("t", (1, 0, 1)), golden.EX38_SECOND_PAIRS),
            ([RealPoly("t", (1, -S2, 1)), RealPoly("t", (1, S2, 1))],
             RealPoly("s", (1, 0, 1)), golden.EX38_THIRD_PAIRS),
            ([RealPoly("t", (1, S2, 1)), RealPoly("t", (1, -S2, 1))],
             RealPoly("s", (1, 0, 1)), golden.EX38_FOURTH_PAIRS),
        ]
        for order, expected_k, pairs in cases:
            k_poly, fact = cofactor_factorize(golden.beauregard(), order)
            assert k_poly.approx_eq(expected_k, 1e-8)
            check_factors(fact, pairs, tol=1e-8)


def test_criterion_3_cofactor_simplification():
    with criterion(3, "one ordering leaves a quadratic cofactor, the other cancels it"):
        q = golden.example35()
        k_long, fact_long = cofactor_factorize(
            q, [RealPoly("s", (3, 0, 1)), RealPoly("s", (2, 0, 1))])
        assert k_long.approx_eq(golden.EX35_K, 1e-8)
        check_factors(fact_long, golden.EX35_LONG_PAIRS, tol=1e-8)
        k_one, fact_one = cofactor_factorize(
            q, [RealPoly("s", (2, 0, 1)), RealPoly("s", (3, 0, 1))])
        assert k_one.is_one(1e-8)
        check_factors(fact_one, golden.EX410_PAIRS, tol=1e-8)


def test_criterion_4_enumeration_counts():
    with criterion(4, "enumeration class counts: 2, 1, and none"):
        report = enumerate_factorizations(golden.remarkable())
        assert report.num_classes() == 2

        report = enumerate_factorizations(golden.sixfact())
        k_one = report.k_one_entries()
        assert len(k_one) >= 6
        assert report.num_classes() == 1

        report = enumerate_factorizations(golden.beauregard())
        assert {e.variable for e in report.entries} == {"s", "t"}
        assert report.num_k_one() == 0


def test_criterion_5_equivalence_relations():
    with criterion(5, "t-equivalence and equivalence behave as required"):
        fa = golden.factorization(golden.TWOREP_A_PAIRS)
        fb = golden.factorization(golden.TWOREP_B_PAIRS)
        assert t_equivalent(fa, fb)
        assert equivalent(fa, fb)

        report = enumerate_factorizations(golden.sixfact(), variables=("s",))
        facts = [e.factorization for e in report.entries if e.k_is_one]
        assert len(facts) == 6
        for f1, f2 in itertools.combinations(facts, 2):
            assert not t_equivalent(f1, f2)
            assert equivalent(f1, f2)


def test_criterion_6_dual_lift():
    with criterion(6, "dual-quaternion lift: dimension four and family membership"):
        start = time.perf_counter()
        f1 = golden.factorization(golden.REMARKABLE_G_PAIRS)
        f2 = golden.factorization(golden.REMARKABLE_H_PAIRS)
        system = build_lift_system(f1, f2)
        solution = solve_lift(system, rank_tol=1e-10)
        elapsed = time.perf_counter() - start
        assert solution.dimension == 4
        for name, vec in golden.LIFT_FAMILY.items():
            assert solution.membership_residual(vec) <= 1e-8, name
        for row in solution.basis:
            assert verify_lift(f1, f2, row) <= 1e-8
        assert elapsed < 1.0


def test_criterion_7_property_suite():
    with criterion(7, "randomized property suite inside its time budget"):
        start = time.perf_counter()
        rng = random.Random(20260810)

        # (a) norm multiplicativity: quaternions and polynomials
        for _ in range(1000):
            a, b = random_quaternion(rng), random_quaternion(rng)
            lhs = (a * b).norm()
            rhs = a.norm() * b.norm()
            assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(lhs), abs(rhs))
        for _ in range(200):
            pa = _random_poly(rng)
            pb = _random_poly(rng)
            lhs = norm_poly(pa * pb, 1e-7)
            rhs = norm_poly(pa, 1e-7) * norm_poly(pb, 1e-7)
            assert lhs.approx_eq(rhs, 1e-8)

        # (b) + (c) round trip with verification of every permutation output
        for _ in range(200):
            kt, ks = rng.randrange(1, 4), rng.randrange(1, 4)
            pairs = ([("t", random_rotation_like(rng)) for _ in range(kt)]
                     + [("s", random_rotation_like(rng)) for _ in range(ks)])
            rng.shuffle(pairs)
            seed = golden.factorization(pairs)
            q = seed.product()
            report = enumerate_factorizations(q, variables=("s",))
            for entry in report.entries:
                assert verify_factorization(q, entry.factorization) <= 1e-8
            assert any(entry.k_is_one and equivalent(entry.factorization, seed)
                       for entry in report.entries)

        # (d) Bennett flip: product equality and norm swap
        flips = 0
        while flips < 1000:
            h1, h2 = random_rotation_like(rng), random_rotation_like(rng)
            if (h1.conj() - h2).magnitude() < 1e-6:
                continue
            k1, k2 = bennett_flip(h1, h2)
            lhs = QuatPoly.linear("t", h1) * QuatPoly.linear("t", h2)
            rhs = QuatPoly.linear("t", k1) * QuatPoly.linear("t", k2)
            assert lhs.approx_eq(rhs, 1e-8)
            assert LinearFactor("t", k2).norm_quadratic().approx_eq(
                LinearFactor("t", h1).norm_quadratic(), 1e-8)
            assert LinearFactor("t", k1).norm_quadratic().approx_eq(
                LinearFactor("t", h2).norm_quadratic(), 1e-8)
            flips += 1

        # (e) quadratic-block reconstruction for nonnegative polynomials
        for _ in range(100):
            factors = []
            for _ in range(rng.randrange(1, 6)):
                b = rng.uniform(-3, 3)
                c = b * b / 4 + rng.uniform(0.05, 5)
                factors.append(RealPoly("t", (c, b, 1)))
            if rng.random() < 0.25:
                factors.append(factors[-1])
            if rng.random() < 0.25:
                r = rng.uniform(-2, 2)
                factors.append(RealPoly("t", (r * r, -2 * r, 1)))
            factors = factors[:6]
            p = RealPoly("t", (rng.uniform(0.5, 2.0),))
            for f in factors:
                p = p * f
            tup = quadratic_factors(p)
            residual = (tup.product() - p).max_abs() / max(1.0, p.max_abs())
            assert residual <= 1e-8
            assert len(tup) == len(factors)

        elapsed = time.perf_counter() - start
        assert elapsed < 60.0


def _random_poly(rng):
    terms = {}
    for i in range(rng.randrange(1, 4) + 1):
        for j in range(rng.randrange(1, 4) + 1):
            terms[(i, j)] = random_quaternion(rng)
    return QuatPoly(terms)
