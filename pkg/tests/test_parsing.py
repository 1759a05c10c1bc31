import math

import pytest

import golden
from quatfact import ParseError, QuatPoly, Quaternion, parse_poly

I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)
K = Quaternion(0, 0, 0, 1)


@pytest.mark.parametrize("text, expected", [
    ("i*j", QuatPoly.constant(K)),
    ("j*i", QuatPoly.constant(-K)),
    ("t - i", QuatPoly.linear("t", I)),
    ("2*t*s", QuatPoly.term(1, 1, Quaternion(2))),
    ("t^2 + 1", QuatPoly.term(2, 0, Quaternion(1)) + QuatPoly.constant(Quaternion(1))),
    ("-t", QuatPoly.term(1, 0, Quaternion(-1))),
    ("6/5", QuatPoly.constant(Quaternion(1.2))),
    ("2jt", QuatPoly.term(1, 0, 2 * J)),
    ("(1+i)(1+j)", QuatPoly.constant(Quaternion(1, 1, 1, 1))),
    ("i^2", QuatPoly.constant(Quaternion(-1))),
    ("t^0", QuatPoly.constant(Quaternion(1))),
])
def test_basic_forms(text, expected):
    assert parse_poly(text).approx_eq(expected, 1e-12)


def test_noncommutative_order_respected():
    assert parse_poly("i*j - j*i").approx_eq(QuatPoly.constant(2 * K), 1e-12)


def test_beauregard_structure():
    b = parse_poly(golden.BEAUREGARD_TEXT)
    assert b.coeff(2, 2).approx_eq(Quaternion(1))
    assert b.coeff(0, 2).approx_eq(-I)
    assert b.coeff(1, 1).approx_eq(2 * J)
    assert b.coeff(2, 0).approx_eq(I)
    assert b.coeff(0, 0).approx_eq(Quaternion(-1))


def test_juxtaposition_binds_tighter_than_addition():
    assert parse_poly("1 + 2t").approx_eq(
        QuatPoly.constant(Quaternion(1)) + QuatPoly.term(1, 0, Quaternion(2)))


def test_decimal_and_exponent_literals():
    got = parse_poly("0.5t + 1e2")
    assert got.coeff(1, 0).approx_eq(Quaternion(0.5))
    assert got.coeff(0, 0).approx_eq(Quaternion(100.0))


@pytest.mark.parametrize("bad", [
    "", "t +", "(t", "t^-1", "t^1.5", "x + 1", "1/(t)", "1/i", "1/0", "3..5",
])
def test_rejects_malformed(bad):
    with pytest.raises(ParseError):
        parse_poly(bad)


def test_matches_term_map_roundtrip():
    b = parse_poly(golden.BEAUREGARD_TEXT)
    again = QuatPoly.from_dict(b.as_dict())
    assert again.approx_eq(b, 1e-15)
