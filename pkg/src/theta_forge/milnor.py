"""Milnor algebras of homogeneous isolated singularities and the residue pairing."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HypothesisError, InputError
from .exact_algebra import PolyMatrix, Polynomial, determinant
from .groebner import INFINITE, Submodule, ideal, normal_form, quotient_dimension, standard_monomials


def _check_field_homogeneous(f: Polynomial) -> None:
    if not f.ring.coeffs.is_field:
        raise InputError("COEFF_DOMAIN_NOT_FIELD", f"need a coefficient field, got {f.ring.coeffs}")
    if f.is_zero() or not f.is_homogeneous():
        raise InputError("F_NOT_HOMOGENEOUS", f"f = {f} is not a nonzero homogeneous polynomial")


def jacobian(f: Polynomial) -> tuple:
    return tuple(f.derivative(v) for v in f.ring.vars)


def hessian(f: Polynomial) -> Polynomial:
    """Determinant of the matrix of second partial derivatives."""
    first = jacobian(f)
    grid = [[d.derivative(v) for v in f.ring.vars] for d in first]
    return determinant(PolyMatrix(f.ring, grid))


@dataclass(frozen=True)
class MilnorAlgebra:
    """``S / (df/dx_1, ..., df/dx_n)`` with its socle-normalized residue.

    The residue is the functional that reads off the coefficient of
    ``socle_generator`` in a normal form, scaled so ``Res(hessian(f)) = mu``.
    """

    f: Polynomial
    jacobian: tuple
    ideal: Submodule
    basis: tuple
    mu: int
    socle_degree: int
    socle_generator: Polynomial
    hessian_coefficient: object
    residue_of_socle: object

    def normal_form(self, g: Polynomial) -> Polynomial:
        return normal_form(g, self.ideal)

    def residue(self, g: Polynomial) -> object:
        nf = self.normal_form(g)
        (socle_exp,) = self.socle_generator.terms
        dom = self.f.ring.coeffs
        return dom.normalize(nf.terms.get(socle_exp, 0) * self.residue_of_socle)


def milnor_mu(f: Polynomial) -> MilnorAlgebra:
    _check_field_homogeneous(f)
    ring, dom = f.ring, f.ring.coeffs
    jac = jacobian(f)
    J = ideal(ring, [d for d in jac if d])
    if quotient_dimension(J) == INFINITE:
        raise HypothesisError("NOT_ISOLATED", f"the Jacobian ideal of {f} has infinite codimension")
    basis = tuple(ring.monomial(e) for _, e in standard_monomials(J))
    top = max(b.degree() for b in basis)
    socle = [b for b in basis if b.degree() == top]
    if len(socle) != 1:
        raise HypothesisError("SOCLE_DEGENERATE", f"top degree {top} of the Milnor algebra is {len(socle)}-dimensional")
    socle_gen = socle[0]
    (socle_exp,) = socle_gen.terms
    c = normal_form(hessian(f), J).terms.get(socle_exp, 0)
    mu = len(basis)
    if not c or not dom.convert(mu):
        raise HypothesisError(
            "SOCLE_DEGENERATE",
            f"the residue normalization degenerates in characteristic {dom.characteristic}",
        )
    res = dom.div(dom.convert(mu), c)
    return MilnorAlgebra(f, jac, J, basis, mu, top, socle_gen, c, res)


def residue_pair(g: Polynomial, h: Polynomial, alg: MilnorAlgebra):
    """``Res(g * h)`` on the Milnor algebra of ``alg.f``."""
    ring = alg.f.ring
    return alg.residue(ring(g) * ring(h))


def gram_matrix(alg: MilnorAlgebra) -> list:
    return [[residue_pair(a, b, alg) for b in alg.basis] for a in alg.basis]


def gram_rank(alg: MilnorAlgebra) -> int:
    """Rank of the Gram matrix over the coefficient field (plain elimination)."""
    dom = alg.f.ring.coeffs
    rows = [list(r) for r in gram_matrix(alg)]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = dom.inv(rows[rank][col])
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col] * inv
                rows[i] = [dom.normalize(x - c * y) for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def tjurina_check(f: Polynomial):
    """Dimension of ``S / (f, df/dx_1, ..., df/dx_n)``; ``INFINITE`` off isolated singularities."""
    _check_field_homogeneous(f)
    gens = [f] + [d for d in jacobian(f) if d]
    return quotient_dimension(ideal(f.ring, gens))
