"""Plain-text parser for quaternionic polynomial expressions.

Accepts expressions like ``(t^2 - i)*s^2 + (2*j*t)*s + (i*t^2 - 1)`` with
the quaternion units i, j, k, the indeterminates t and s, decimal number
literals, and the operators + - * / ^ and parentheses.  Juxtaposition
multiplies and binds tighter than addition; products are evaluated left
to right, which matters because coefficient multiplication does not
commute.  Division is only defined by real constants.
"""

from __future__ import annotations

from .errors import ParseError
from .quaternion import Quaternion
from .quatpoly import QuatPoly

_UNITS = {
    "i": Quaternion(0.0, 1.0, 0.0, 0.0),
    "j": Quaternion(0.0, 0.0, 1.0, 0.0),
    "k": Quaternion(0.0, 0.0, 0.0, 1.0),
}
_VARS = ("t", "s")


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, pos))
            pos += 1
            continue
        if ch.isdigit() or ch == ".":
            start = pos
            while pos < n and (text[pos].isdigit() or text[pos] == "."):
                pos += 1
            if pos < n and text[pos] in "eE":
                probe = pos + 1
                if probe < n and text[probe] in "+-":
                    probe += 1
                if probe < n and text[probe].isdigit():
                    pos = probe
                    while pos < n and text[pos].isdigit():
                        pos += 1
            lit = text[start:pos]
            try:
                value = float(lit)
            except ValueError as exc:
                raise ParseError(f"bad number literal {lit!r} at {start}") from exc
            tokens.append(("num", value, start))
            continue
        if ch in _UNITS or ch in _VARS:
            tokens.append(("sym", ch, pos))
            pos += 1
            continue
        raise ParseError(f"unexpected character {ch!r} at position {pos}")
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.idx = 0

    def peek(self):
        return self.tokens[self.idx]

    def next(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r} at position {tok[2]}, got {tok[0]!r}")
        return tok

    def parse_expr(self) -> QuatPoly:
        acc = self.parse_term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.parse_term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def parse_term(self) -> QuatPoly:
        acc = self.parse_factor()
        while True:
            kind = self.peek()[0]
            if kind in ("*", "/"):
                op = self.next()[0]
                rhs = self.parse_factor()
                acc = acc * rhs if op == "*" else self._divide(acc, rhs)
            elif kind in ("num", "sym", "("):
                acc = acc * self.parse_factor()
            else:
                return acc

    def _divide(self, lhs: QuatPoly, rhs: QuatPoly) -> QuatPoly:
        pos = self.peek()[2]
        if rhs.bidegree() > (0, 0):
            raise ParseError(f"division by a non-constant near position {pos}")
        c = rhs.coeff(0, 0)
        if abs(c.x) + abs(c.y) + abs(c.z) > 0.0 or c.w == 0.0:
            raise ParseError(f"division only by nonzero real constants near position {pos}")
        return lhs * (1.0 / c.w)

    def parse_factor(self) -> QuatPoly:
        sign = 1.0
        while self.peek()[0] in ("+", "-"):
            if self.next()[0] == "-":
                sign = -sign
        base = self.parse_atom()
        if self.peek()[0] == "^":
            self.next()
            tok = self.expect("num")
            exponent = tok[1]
            if exponent != int(exponent) or exponent < 0:
                raise ParseError(f"exponent must be a nonnegative integer at {tok[2]}")
            power = QuatPoly.constant(1.0)
            for _ in range(int(exponent)):
                power = power * base
            base = power
        return base if sign > 0 else -base

    def parse_atom(self) -> QuatPoly:
        kind, value, pos = self.next()
        if kind == "num":
            return QuatPoly.constant(value)
        if kind == "sym":
            if value in _UNITS:
                return QuatPoly.constant(_UNITS[value])
            return QuatPoly.variable(value)
        if kind == "(":
            inner = self.parse_expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {kind!r} at position {pos}")


def parse_poly(text: str) -> QuatPoly:
    """Parse an expression in t, s, i, j, k into a quaternionic polynomial."""
    if not text.strip():
        raise ParseError("empty polynomial expression")
    parser = _Parser(_tokenize(text))
    result = parser.parse_expr()
    parser.expect("end")
    return result
