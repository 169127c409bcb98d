"""Sparse multivariate polynomials with exact coefficients."""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .domain import QQ, ZZ, CoeffDomain

Exponent = tuple  # tuple[int, ...], one entry per ring variable


def add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(operator.add, a, b))


def divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(operator.sub, a, b))


def lcm_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(max, a, b))


@lru_cache(maxsize=None)
def _grevlex_key(exp: Exponent, weights: tuple) -> tuple:
    deg = sum(map(operator.mul, exp, weights))
    return (deg, tuple(-e for e in reversed(exp)))


@lru_cache(maxsize=None)
def _grlex_key(exp: Exponent, weights: tuple) -> tuple:
    return (sum(map(operator.mul, exp, weights)), exp)


MONOMIAL_KEYS = {"grevlex": _grevlex_key, "grlex": _grlex_key}


@dataclass(frozen=True)
class PolyRing:
    coeffs: CoeffDomain
    vars: tuple
    weights: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        w = tuple(self.weights) if self.weights is not None else (1,) * len(self.vars)
        if len(w) != len(self.vars) or any(int(x) <= 0 for x in w):
            raise ValueError("need one positive weight per variable")
        object.__setattr__(self, "weights", w)

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def zero_exp(self) -> Exponent:
        return (0,) * len(self.vars)

    def with_coeffs(self, coeffs: CoeffDomain) -> "PolyRing":
        return PolyRing(coeffs, self.vars, self.weights)

    def exp_degree(self, exp: Exponent) -> int:
        return sum(map(operator.mul, exp, self.weights))

    def mono_key(self, exp: Exponent, kind: str = "grevlex"):
        return MONOMIAL_KEYS[kind](exp, self.weights)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {self.zero_exp: c})

    def gen(self, name: str) -> "Polynomial":
        i = self.vars.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.gen(v) for v in self.vars]

    def monomial(self, exp: Exponent, c=1) -> "Polynomial":
        return Polynomial(self, {tuple(exp): c})

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise ValueError(f"polynomial lives in {value.ring}, not {self}")
            return value
        if isinstance(value, str):
            from .parser import parse_poly
            return parse_poly(value, self)
        return self.constant(value)

    def __str__(self):
        return f"{self.coeffs}[{','.join(self.vars)}]"


class Polynomial:
    """Immutable sparse polynomial: a map from exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms=None):
        dom = ring.coeffs
        clean = {}
        for e, c in (terms or {}).items():
            c = dom.convert(c)
            if c != 0:
                clean[tuple(e)] = c
        self.ring = ring
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: PolyRing, terms: dict) -> "Polynomial":
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ring.coeffs.normalize
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = norm(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.coeffs.normalize
        return Polynomial._raw(self.ring, {e: norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ring.coeffs.normalize
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = add_exp(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.ring, {e: v for e, c in out.items() if (v := norm(c))})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        dom = self.ring.coeffs
        c = dom.convert(c)
        return Polynomial._raw(self.ring, {e: v for e, x in self.terms.items() if (v := dom.normalize(x * c))})

    def mul_term(self, exp: Exponent, c) -> "Polynomial":
        norm = self.ring.coeffs.normalize
        return Polynomial._raw(self.ring, {add_exp(e, exp): v for e, x in self.terms.items() if (v := norm(x * c))})

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {self.ring.zero_exp}

    def constant_coeff(self):
        return self.terms.get(self.ring.zero_exp, 0)

    def degree(self) -> int:
        """Weighted degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.exp_degree(e) for e in self.terms)

    def degrees(self) -> set:
        return {self.ring.exp_degree(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def sorted_terms(self, order: str = "grevlex") -> list:
        """Terms in descending monomial order."""
        key = MONOMIAL_KEYS[order]
        w = self.ring.weights
        return sorted(self.terms.items(), key=lambda t: key(t[0], w), reverse=True)

    def leading_term(self, order: str = "grevlex"):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.sorted_terms(order)[0]

    def derivative(self, var: str) -> "Polynomial":
        i = self.ring.vars.index(var)
        norm = self.ring.coeffs.normalize
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                v = norm(c * e[i])
                if v:
                    out[e[:i] + (e[i] - 1,) + e[i + 1:]] = v
        return Polynomial._raw(self.ring, out)

    def content(self) -> int:
        """Gcd of the coefficients (integer rings only); 0 for the zero polynomial."""
        from math import gcd
        if self.ring.coeffs != ZZ:
            raise ValueError("content is only defined over ZZ")
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def map_coeffs(self, target: CoeffDomain) -> "Polynomial":
        return Polynomial(self.ring.with_coeffs(target), self.terms)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, {self.ring})"


def format_poly(p: Polynomial) -> str:
    """Canonical text: descending grevlex order, explicit ``*`` and ``^``."""
    if not p.terms:
        return "0"
    dom = p.ring.coeffs
    pieces = []
    for exp, c in p.sorted_terms():
        neg = dom.kind != "GF" and c < 0
        mag = -c if neg else c
        mono = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in zip(p.ring.vars, exp) if e
        )
        if not mono:
            body = dom.format(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{dom.format(mag)}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces)


def specialize(p: Polynomial, target: CoeffDomain) -> Polynomial:
    """Coefficient-wise image of an integer polynomial in QQ or GF(p)."""
    if p.ring.coeffs != ZZ:
        raise ValueError("specialize expects a polynomial over ZZ")
    if target not in (QQ,) and target.kind != "GF":
        raise ValueError("target must be QQ or a prime field")
    return p.map_coeffs(target)


def exact_divide(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quotient ``a / b``; raises ArithmeticError if ``b`` does not divide ``a``."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    dom = a.ring.coeffs
    w = a.ring.weights
    key = _grevlex_key
    lt_e, lt_c = b.leading_term()
    rem = dict(a.terms)
    quo = {}
    while rem:
        e = max(rem, key=lambda x: key(x, w))
        if not divides(lt_e, e):
            raise ArithmeticError(f"{b} does not divide {a}")
        c = dom.div(rem[e], lt_c)
        q = sub_exp(e, lt_e)
        quo[q] = c
        for be, bc in b.terms.items():
            t = add_exp(be, q)
            v = dom.normalize(rem.get(t, 0) - c * bc)
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return Polynomial._raw(a.ring, quo)
