"""Parser for polynomial / generating-function expressions.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := power (('*' | '/') power | <juxtaposed '(' or '['> power)*
    power  := '-' power | atom ('^' exponent)?
    atom   := number | name | '(' expr ')' | '[' expr ']'
    exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'

Division is only allowed by products of monomials and factors ``(1 - X^m)``;
that keeps every parsed value a finite sum of :class:`RationalGF` summands.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Polynomial, RationalGF, UsageError, VarTable, _num, gf_sum

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass
class _Tok:
    kind: str  # num | name | op | end
    text: str
    pos: int


def tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1):
            toks.append(_Tok("num", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3):
            if m.group(3) not in "+-*/^()[]":
                raise UsageError(f"unexpected character {m.group(3)!r} at position {m.start(3)}")
            toks.append(_Tok("op", m.group(3), m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


@dataclass
class _Value:
    parts: list
    # value == coef * X^mono * prod(1 - X^m) when known
    fac: tuple | None = field(default=None)


class _Parser:
    def __init__(self, text: str, table: VarTable):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.table = table

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, text: str | None = None) -> _Tok:
        tok = self.toks[self.i]
        if text is not None and tok.text != text:
            where = "end of input" if tok.kind == "end" else repr(tok.text)
            raise UsageError(f"expected {text!r} but found {where} at position {tok.pos}")
        self.i += 1
        return tok

    def const(self, c) -> _Value:
        zero = self.table.zero()
        return _Value([RationalGF(Polynomial.constant(self.table, c))], (Fraction(c), zero, []))

    def parse(self) -> _Value:
        v = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise UsageError(f"unexpected {tok.text!r} at position {tok.pos}")
        return v

    def expr(self) -> _Value:
        v = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            w = self.term()
            if op == "-":
                w = _Value([-p for p in w.parts])
            v = _Value(v.parts + w.parts)
        return v

    def term(self) -> _Value:
        v = self.power()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.take()
                v = self.mul(v, self.power())
            elif tok.kind == "op" and tok.text == "/":
                self.take()
                start = self.peek().pos
                v = self.div(v, self.power(), start)
            elif tok.kind == "op" and tok.text in "([":
                v = self.mul(v, self.power())
            else:
                return v

    def power(self) -> _Value:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.take()
            v = self.power()
            fac = None
            if v.fac is not None:
                fac = (-v.fac[0], v.fac[1], v.fac[2])
            return _Value([-p for p in v.parts], fac)
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            k = self.exponent()
            return self.raise_to(base, k)
        return base

    def exponent(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text == "(":
            self.take()
            sign = -1 if self._maybe("-") else 1
            num = int(self.take_kind("num").text)
            den = 1
            if self._maybe("/"):
                den = int(self.take_kind("num").text)
                if den == 0:
                    raise UsageError(f"zero exponent denominator at position {tok.pos}")
            self.take(")")
            return _num(Fraction(sign * num, den))
        sign = -1 if self._maybe("-") else 1
        return sign * int(self.take_kind("num").text)

    def _maybe(self, text: str) -> bool:
        tok = self.peek()
        if tok.kind == "op" and tok.text == text:
            self.take()
            return True
        return False

    def take_kind(self, kind: str) -> _Tok:
        tok = self.peek()
        if tok.kind != kind:
            where = "end of input" if tok.kind == "end" else repr(tok.text)
            raise UsageError(f"expected a {kind} but found {where} at position {tok.pos}")
        return self.take()

    def atom(self) -> _Value:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            return self.const(int(tok.text))
        if tok.kind == "name":
            self.take()
            e = self.table.unit(tok.text)
            return _Value([RationalGF(Polynomial.monomial(self.table, e))], (Fraction(1), e, []))
        if tok.kind == "op" and tok.text in "([":
            close = ")" if tok.text == "(" else "]"
            self.take()
            v = self.expr()
            self.take(close)
            if v.fac is None:
                v.fac = self.recognize(v)
            return v
        where = "end of input" if tok.kind == "end" else repr(tok.text)
        raise UsageError(f"unexpected {where} at position {tok.pos}")

    def recognize(self, v: _Value):
        """Spot values of the form c*X^e or c*X^e*(1 - X^m)."""
        if len(v.parts) == 0:
            return None
        try:
            g = gf_sum(v.parts, normalize=False)
        except UsageError:
            return None
        if g.denominator:
            return None
        terms = g.numerator.terms
        zero = self.table.zero()
        if len(terms) == 1:
            (e, c), = terms.items()
            return (Fraction(c), e, [])
        if len(terms) == 2:
            (e1, c1), (e2, c2) = terms.items()
            if c1 != -c2:
                return None
            if e2 == zero or (e1 != zero and c2 > 0):
                (e1, c1), (e2, c2) = (e2, c2), (e1, c1)
            m = tuple(_num(b - a) for a, b in zip(e1, e2))
            return (Fraction(c1), e1, [m])
        return None

    def mul(self, a: _Value, b: _Value) -> _Value:
        parts = [p * q for p in a.parts for q in b.parts]
        fac = None
        if a.fac is not None and b.fac is not None:
            fac = (
                a.fac[0] * b.fac[0],
                tuple(_num(x + y) for x, y in zip(a.fac[1], b.fac[1])),
                a.fac[2] + b.fac[2],
            )
        return _Value(parts, fac)

    def div(self, a: _Value, b: _Value, pos: int) -> _Value:
        if b.fac is None:
            raise UsageError(
                f"divisor at position {pos} is not a product of monomials and (1 - X^m) factors"
            )
        c, mono, factors = b.fac
        if c == 0:
            raise UsageError(f"division by zero at position {pos}")
        inv = tuple(-x for x in mono)
        parts = []
        for p in a.parts:
            num = p.numerator.shift(inv) * _num(1 / c)
            parts.append(RationalGF(num, p.denominator + tuple(factors)))
        fac = None
        if a.fac is not None and not factors:
            fac = (a.fac[0] / c, tuple(_num(x + y) for x, y in zip(a.fac[1], inv)), a.fac[2])
        return _Value(parts, fac)

    def raise_to(self, base: _Value, k) -> _Value:
        if base.fac is not None and not base.fac[2] and base.fac[0] == 1:
            e = tuple(_num(x * k) for x in base.fac[1])
            return _Value([RationalGF(Polynomial.monomial(self.table, e))], (Fraction(1), e, []))
        if not isinstance(k, int):
            raise UsageError("fractional powers are only allowed on monomials")
        if k < 0:
            one = self.const(1)
            return self.div(one, self.raise_to(base, -k), 0)
        out = self.const(1)
        for _ in range(k):
            out = self.mul(out, base)
        return out


def names_in(text: str) -> list[str]:
    """Variable names used in an expression, sorted (the default table order)."""
    return sorted({t.text for t in tokenize(text) if t.kind == "name"})


def parse_summands(text: str, table: VarTable | None = None) -> list[RationalGF]:
    table = table or VarTable(tuple(names_in(text)))
    return _Parser(text, table).parse().parts


def parse_gf(text: str, table: VarTable | None = None) -> RationalGF:
    """Parse to a single RationalGF (summands over their common denominator)."""
    table = table or VarTable(tuple(names_in(text)))
    parts = _Parser(text, table).parse().parts
    return gf_sum(parts, normalize=False)


def parse_polynomial(text: str, table: VarTable | None = None) -> Polynomial:
    g = parse_gf(text, table)
    if g.denominator:
        raise UsageError("expected a polynomial, found a denominator")
    return g.numerator
