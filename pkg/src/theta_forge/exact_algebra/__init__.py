"""Exact coefficient domains, sparse polynomials, the expression parser and
polynomial matrices."""

from .domain import GF, QQ, ZZ, CoeffDomain, is_prime, parse_domain
from .matrix import (
    PolyMatrix,
    adjugate_det,
    block_diag,
    det_by_permutations,
    determinant,
    hstack,
    specialize_matrix,
)
from .parser import parse_poly
from .polynomial import Polynomial, PolyRing, exact_divide, format_poly, specialize

__all__ = [
    "GF", "QQ", "ZZ", "CoeffDomain", "is_prime", "parse_domain",
    "PolyMatrix", "adjugate_det", "block_diag", "det_by_permutations", "determinant",
    "hstack", "specialize_matrix", "parse_poly", "Polynomial", "PolyRing",
    "exact_divide", "format_poly", "specialize",
]
