"""Text grammar for polynomials and rational functions.

Shared by the CLI and the expression re-loader: integer/rational
coefficients, operators ``+ - * / ^``, one distinguished variable
(default ``x``), parentheses, and the generator symbols of a declared
field tower.  ``/`` builds rational functions; ``parse_poly`` insists
the result is a polynomial.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .ratfunc import RationalFunction
from .towers import TowerField
from .unipoly import UniPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^()]))")


def tokenize(text: str):
    """Split into ('int', n) / ('name', s) / ('op', c) tokens."""
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise ParseError(f"unexpected character {rest[0]!r} in {text!r}")
        pos = m.end()
        if m.group(1) is not None:
            out.append(("int", int(m.group(1))))
        elif m.group(2) is not None:
            out.append(("name", m.group(2)))
        else:
            out.append(("op", m.group(3)))
    return out


class _Parser:
    """Recursive descent over a token list; values are RationalFunctions."""

    def __init__(self, tokens, dom: TowerField, var: str, names):
        self.tokens = tokens
        self.i = 0
        self.dom = dom
        self.var = var
        self.names = names

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.i += 1
        return tok

    def expect_op(self, c):
        tok = self.take()
        if tok != ("op", c):
            raise ParseError(f"expected {c!r}, got {tok!r}")

    def expr(self) -> RationalFunction:
        sign = 1
        tok = self.peek()
        while tok in (("op", "+"), ("op", "-")):
            if tok == ("op", "-"):
                sign = -sign
            self.take()
            tok = self.peek()
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> RationalFunction:
        acc = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.factor()
            if op == "*":
                acc = acc * rhs
            else:
                if rhs.is_zero:
                    raise ParseError("division by zero")
                acc = acc / rhs
        return acc

    def factor(self) -> RationalFunction:
        tok = self.peek()
        if tok in (("op", "+"), ("op", "-")):
            self.take()
            val = self.factor()
            return -val if tok == ("op", "-") else val
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise ParseError(f"exponent must be an integer, got {tok!r}")
            return base ** tok[1]
        return base

    def atom(self) -> RationalFunction:
        tok = self.take()
        if tok[0] == "int":
            c = self.dom.from_int(tok[1])
            return RationalFunction.from_poly(UniPoly.const(self.dom, c))
        if tok[0] == "name":
            if tok[1] == self.var:
                return RationalFunction.from_poly(
                    UniPoly(self.dom, [self.dom.zero, self.dom.one]))
            if tok[1] in self.names:
                return RationalFunction.from_poly(
                    UniPoly.const(self.dom, self.names[tok[1]]))
            raise ParseError(f"unknown symbol {tok[1]!r}")
        if tok == ("op", "("):
            val = self.expr()
            self.expect_op(")")
            return val
        raise ParseError(f"unexpected token {tok!r}")


def _generator_map(dom: TowerField):
    return {name: dom.generator(i)
            for i, name in enumerate(dom.generator_names())}


def parse_ratfunc(text: str, dom: TowerField, var: str = "x",
                  names=None) -> RationalFunction:
    """Parse a rational function in ``var`` over the tower ``dom``."""
    if names is None:
        names = _generator_map(dom)
    parser = _Parser(tokenize(text), dom, var, names)
    val = parser.expr()
    if parser.peek() is not None:
        raise ParseError(f"trailing input at token {parser.peek()!r}")
    return val


def parse_poly(text: str, dom: TowerField, var: str = "x",
               names=None) -> UniPoly:
    rf = parse_ratfunc(text, dom, var, names)
    if not rf.is_polynomial:
        raise ParseError(f"{text!r} is not a polynomial")
    return rf.num.scale(dom.inv(rf.den.coeff(rf.den.degree)))


def parse_element(text: str, dom: TowerField, names=None):
    """Parse a constant (a tower element, no variable occurrences)."""
    p = parse_poly(text, dom, var="\0", names=names)
    if p.degree > 0:
        raise ParseError(f"{text!r} is not a constant")
    return p.coeff(0)


def extend_tower(tower: TowerField, text: str) -> TowerField:
    """Adjoin one generator described by its defining polynomial.

    The text must mention exactly one symbol that is not yet a generator
    (nor ``x``); that symbol names the new generator, e.g. ``a^2 - 2``.
    """
    known = set(tower.generator_names())
    fresh = []
    for kind, val in tokenize(text):
        if kind == "name" and val not in known and val not in fresh:
            fresh.append(val)
    if len(fresh) != 1:
        raise ParseError(
            f"extension {text!r} must introduce exactly one new symbol, "
            f"found {fresh!r}")
    name = fresh[0]
    minpoly = parse_poly(text, tower, var=name)
    if minpoly.degree < 1:
        raise ParseError(f"extension {text!r} is constant")
    lead = minpoly.coeff(minpoly.degree)
    minpoly = minpoly.scale(tower.inv(lead))
    return tower.adjoin(minpoly, name=name)
