"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | NAME | "(" expr ")"

Division is only accepted by a nonzero constant over a field, so that rational
coefficients printed as ``3/4*x`` read back unchanged. Juxtaposition (``2x``)
is rejected.
"""

from __future__ import annotations

import re

from ..errors import ParseError
from .polynomial import Polynomial, PolyRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("INT", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("NAME", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                tokens.append(("BAD", ch, start))
            else:
                tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("END", "", len(text.rstrip()) if text.strip() else 0))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing, source: str | None):
        self.text = text
        self.ring = ring
        self.source = source
        self.tokens = _tokenize(text)
        self.i = 0

    def _where(self, offset: int) -> tuple:
        line = self.text.count("\n", 0, offset) + 1
        col = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        return line, col

    def error(self, code: str, message: str, offset: int):
        line, col = self._where(offset)
        raise ParseError(code, message, line, col, self.source)

    @property
    def tok(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        if self.tok[0] == "END":
            self.error("SYNTAX_ERROR", "empty expression", 0)
        p = self.expr()
        kind, val, off = self.tok
        if kind != "END":
            if kind in ("INT", "NAME", "("):
                self.error("SYNTAX_ERROR", f"implicit multiplication before {val!r} is not allowed", off)
            self.error("SYNTAX_ERROR", f"unexpected {val!r}", off)
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.tok[0] in ("+", "-"):
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.tok[0] in ("*", "/"):
            op, _, off = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not self.ring.coeffs.is_field or not q.is_constant() or q.is_zero():
                    self.error("INVALID_DIVISION", "can only divide by a nonzero constant over a field", off)
                p = p.scale(self.ring.coeffs.inv(q.constant_coeff()))
        return p

    def unary(self) -> Polynomial:
        if self.tok[0] == "-":
            self.take()
            return -self.unary()
        if self.tok[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.tok[0] != "^":
            return base
        self.take()
        kind, val, off = self.tok
        if kind == "-":
            self.take()
            if self.tok[0] == "INT":
                self.error("NEGATIVE_EXPONENT", "negative exponents are not allowed", off)
            self.error("SYNTAX_ERROR", "expected an integer exponent", self.tok[2])
        if kind != "INT":
            self.error("SYNTAX_ERROR", "expected an integer exponent", off)
        self.take()
        return base ** int(val)

    def atom(self) -> Polynomial:
        kind, val, off = self.tok
        if kind == "INT":
            self.take()
            return self.ring.constant(int(val))
        if kind == "NAME":
            self.take()
            if val not in self.ring.vars:
                self.error("UNDECLARED_VARIABLE", f"variable {val!r} is not declared", off)
            return self.ring.gen(val)
        if kind == "(":
            self.take()
            p = self.expr()
            if self.tok[0] != ")":
                self.error("SYNTAX_ERROR", "expected ')'", self.tok[2])
            self.take()
            return p
        if kind == "END":
            self.error("SYNTAX_ERROR", "unexpected end of input", off)
        if kind == "BAD":
            self.error("SYNTAX_ERROR", f"unexpected character {val!r}", off)
        self.error("SYNTAX_ERROR", f"unexpected {val!r}", off)


def parse_poly(text: str, ring: PolyRing, source: str | None = None) -> Polynomial:
    """Parse ``text`` into a polynomial of ``ring``."""
    return _Parser(text, ring, source).parse()
