"""Exact coefficient domains: the integers, the rationals and prime fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class CoeffDomain:
    """One of ZZ, QQ or GF(p).

    Coefficients are plain Python objects: ``int`` for ZZ, ``int`` or
    ``Fraction`` for QQ and canonical residues ``0..p-1`` for GF(p).
    """

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("ZZ", "QQ", "GF"):
            raise ValueError(f"unknown coefficient domain {self.kind!r}")
        if self.kind == "GF":
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"GF(p) needs a prime p, got {self.p}")
        elif self.p is not None:
            raise ValueError("only prime fields take a characteristic")

    @property
    def is_field(self) -> bool:
        return self.kind != "ZZ"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "GF" else 0

    def convert(self, c) -> int | Fraction:
        """Image of an integer or rational in this domain."""
        if self.kind == "GF":
            if isinstance(c, Fraction):
                if c.denominator % self.p == 0:
                    raise ZeroDivisionError(f"{c} has no image in GF({self.p})")
                return c.numerator * pow(c.denominator, -1, self.p) % self.p
            return int(c) % self.p
        if self.kind == "ZZ":
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"{c} is not an integer")
                return c.numerator
            return int(c)
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        return c if isinstance(c, (int, Fraction)) else Fraction(c)

    def normalize(self, c):
        return c % self.p if self.kind == "GF" else c

    def inv(self, c):
        if c == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "GF":
            return pow(c, -1, self.p)
        if self.kind == "QQ":
            return Fraction(1) / c
        if c in (1, -1):
            return c
        raise ZeroDivisionError(f"{c} is not a unit in ZZ")

    def div(self, a, b):
        if self.kind == "ZZ":
            q, r = divmod(a, b)
            if r:
                raise ArithmeticError(f"{a} is not divisible by {b} in ZZ")
            return q
        return self.normalize(a * self.inv(b))

    def lift(self, c) -> int:
        """Symmetric integer representative of a GF(p) residue."""
        if self.kind != "GF":
            raise ValueError("lift is only defined from a prime field")
        c %= self.p
        return c - self.p if c > self.p // 2 else c

    def format(self, c) -> str:
        if isinstance(c, Fraction):
            return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        return str(c)

    def __str__(self):
        return f"GF({self.p})" if self.kind == "GF" else self.kind


ZZ = CoeffDomain("ZZ")
QQ = CoeffDomain("QQ")


def GF(p: int) -> CoeffDomain:
    return CoeffDomain("GF", p)


def parse_domain(text) -> CoeffDomain:
    """Read ``"ZZ"``, ``"QQ"``/``"Q"``, ``"GF(5)"``, ``{"GF": 5}`` or a bare prime."""
    if isinstance(text, CoeffDomain):
        return text
    if isinstance(text, dict) and set(text) == {"GF"}:
        return GF(int(text["GF"]))
    if isinstance(text, int):
        return GF(text)
    s = str(text).strip().upper()
    if s in ("ZZ", "Z"):
        return ZZ
    if s in ("QQ", "Q"):
        return QQ
    if s.startswith("GF(") and s.endswith(")"):
        s = s[3:-1]
    elif s.startswith("F") and s[1:].isdigit():
        s = s[1:]
    if s.isdigit():
        return GF(int(s))
    raise ValueError(f"unrecognised coefficient domain {text!r}")
