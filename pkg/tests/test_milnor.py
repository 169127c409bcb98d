from fractions import Fraction
from math import lcm

import pytest
from hypothesis import given, settings, strategies as st

from theta_forge.errors import HypothesisError, InputError
from theta_forge.exact_algebra import GF, QQ, ZZ, PolyRing
from theta_forge.groebner import INFINITE
from theta_forge.milnor import (
    gram_matrix, gram_rank, hessian, jacobian, milnor_mu, residue_pair, tjurina_check,
)

from oracles import diagonal_residue

R = PolyRing(QQ, ("x", "y"))
T = PolyRing(QQ, ("x", "y", "z"))


def test_jacobian_and_hessian():
    f = R("x^3 + y^3")
    assert jacobian(f) == (R("3*x^2"), R("3*y^2"))
    assert hessian(f) == R("36*x*y")


def test_binary_cubic_algebra():
    alg = milnor_mu(R("x^3 + y^3"))
    assert alg.mu == 4
    assert sorted(str(b) for b in alg.basis) == ["1", "x", "x*y", "y"]
    assert alg.socle_degree == 2 and alg.socle_generator == R("x*y")
    assert alg.residue_of_socle == Fraction(1, 9)


def test_binary_quadric_algebra():
    alg = milnor_mu(R("x^2 + y^2"))
    assert alg.mu == 1 and alg.basis == (R.one(),)
    assert alg.residue(R.one()) == Fraction(1, 4)


@pytest.mark.parametrize("f,mu", [("x^2 + y^2", 1), ("x^3 + y^3", 4), ("x^4 + y^4", 9), ("x*y", 1)])
def test_mu_of_binary_forms(f, mu):
    assert milnor_mu(R(f)).mu == mu


def test_fermat_cubic_surface():
    alg = milnor_mu(T("x^3 + y^3 + z^3"))
    assert alg.mu == 8 and alg.socle_generator == T("x*y*z")


def test_non_isolated():
    with pytest.raises(HypothesisError) as info:
        milnor_mu(R("x^2"))
    assert info.value.code == "NOT_ISOLATED"


def test_characteristic_dividing_the_degree_is_not_isolated():
    with pytest.raises(HypothesisError) as info:
        milnor_mu(PolyRing(GF(3), ("x", "y"))("x^3 + y^3"))
    assert info.value.code == "NOT_ISOLATED"


def test_residue_normalization_degenerates_when_mu_vanishes():
    # mu = 4 is zero in characteristic 2
    with pytest.raises(HypothesisError) as info:
        milnor_mu(PolyRing(GF(2), ("x", "y"))("x^3 + y^3"))
    assert info.value.code == "SOCLE_DEGENERATE"


def test_rejects_integer_coefficients_and_inhomogeneous_input():
    with pytest.raises(InputError) as info:
        milnor_mu(PolyRing(ZZ, ("x", "y"))("x^3 + y^3"))
    assert info.value.code == "COEFF_DOMAIN_NOT_FIELD"
    with pytest.raises(InputError) as info:
        milnor_mu(R("x^2*y + y^4"))
    assert info.value.code == "F_NOT_HOMOGENEOUS"


def test_named_residues():
    cubic = milnor_mu(R("x^3 + y^3"))
    assert residue_pair(R("x"), R("y"), cubic) == Fraction(1, 9)
    assert residue_pair(R.one(), R.one(), cubic) == 0
    quad = milnor_mu(R("x^2 + y^2"))
    assert residue_pair(R.one(), R.one(), quad) == Fraction(1, 4)


@pytest.mark.parametrize("f", ["x^2 + y^2", "x^3 + y^3", "x^4 + y^4", "x*y", "x^3 - 2*y^3"])
def test_residue_of_hessian_is_mu(f):
    alg = milnor_mu(R(f))
    assert alg.residue(hessian(R(f))) == alg.mu


def test_residue_of_hessian_over_a_prime_field():
    P = PolyRing(GF(5), ("x", "y"))
    alg = milnor_mu(P("x^3 + y^3"))
    assert alg.residue_of_socle == 4  # 1/9 mod 5
    assert alg.residue(hessian(P("x^3 + y^3"))) == 4


@pytest.mark.parametrize("coeffs,degrees", [
    ((1, 1), (3, 3)),
    ((2, -1), (3, 4)),
    ((1, 3, 5), (3, 3, 3)),
    ((1, 1, 1), (2, 3, 4)),
])
def test_diagonal_forms_match_transformation_law(coeffs, degrees):
    n = len(coeffs)
    # mixed degrees: weight each variable so every term has degree lcm(degrees)
    L = lcm(*degrees)
    ring = PolyRing(QQ, ("x", "y", "z")[:n], tuple(L // d for d in degrees))
    f = sum((ring.monomial(tuple(d if i == j else 0 for j in range(n)), c)
             for i, (c, d) in enumerate(zip(coeffs, degrees))), ring.zero())
    alg = milnor_mu(f)
    for g in alg.basis:
        for h in alg.basis:
            assert alg.residue(g * h) == diagonal_residue(g * h, coeffs, degrees)


@pytest.mark.parametrize("f", ["x^3 + y^3", "x^4 + y^4", "x^2*y + y^3", "x^3 + y^3 + z^3"])
def test_gram_matrix_is_nondegenerate_and_symmetric(f):
    ring = T if "z" in f else R
    alg = milnor_mu(ring(f))
    G = gram_matrix(alg)
    assert gram_rank(alg) == alg.mu
    assert all(G[i][j] == G[j][i] for i in range(alg.mu) for j in range(alg.mu))


def test_pairing_is_graded():
    # Res(g h) can only be nonzero when deg g + deg h is the socle degree
    alg = milnor_mu(R("x^4 + y^4"))
    for g in alg.basis:
        for h in alg.basis:
            if g.degree() + h.degree() != alg.socle_degree:
                assert residue_pair(g, h, alg) == 0


coefficient = st.integers(-3, 3)
poly_in_cubic_algebra = st.tuples(coefficient, coefficient, coefficient, coefficient)


def _element(cs):
    return sum((R(m) * c for m, c in zip(["1", "x", "y", "x*y"], cs)), R.zero())


@settings(max_examples=30, deadline=None)
@given(poly_in_cubic_algebra, poly_in_cubic_algebra, poly_in_cubic_algebra, st.integers(-3, 3))
def test_residue_pairing_is_bilinear_and_symmetric(a, b, c, k):
    alg = milnor_mu(R("x^3 + y^3"))
    g, h, u = _element(a), _element(b), _element(c)
    assert residue_pair(g, h, alg) == residue_pair(h, g, alg)
    assert residue_pair(g * k + u, h, alg) == k * residue_pair(g, h, alg) + residue_pair(u, h, alg)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4))
def test_residue_ignores_jacobian_multiples(i, j):
    f = R("x^3 + y^3")
    alg = milnor_mu(f)
    m = R.monomial((i, j))
    for d in jacobian(f):
        assert alg.residue(m * d) == 0


@pytest.mark.parametrize("f,expected", [
    ("x^3 + y^3", 4),
    ("x*y", 1),
    ("x^2 + y^2", 1),
    ("x^2", INFINITE),
    ("x^2*y", INFINITE),
])
def test_tjurina(f, expected):
    assert tjurina_check(R(f)) == expected


def test_tjurina_fermat_surface_by_characteristic():
    assert tjurina_check(T("x^3 + y^3 + z^3")) == 8
    assert tjurina_check(PolyRing(GF(3), ("x", "y", "z"))("x^3 + y^3 + z^3")) == INFINITE
    assert tjurina_check(PolyRing(GF(7), ("x", "y", "z"))("x^3 + y^3 + z^3")) == 8
