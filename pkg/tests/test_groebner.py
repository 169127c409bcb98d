import random

import pytest
from hypothesis import given, settings, strategies as st

from theta_forge.errors import InputError
from theta_forge.exact_algebra import GF, QQ, ZZ, PolyMatrix, PolyRing, format_poly
from theta_forge.groebner import (
    INFINITE, FreeModule, MonomialOrder, Submodule, clear_cache, groebner_basis, ideal,
    k_dimension, normal_form, preimage, quotient_dimension, standard_monomials, syzygy,
)

from corpus import random_exponent, random_zero_dim_ideal
from oracles import graded_quotient_dimension, in_ideal_by_certificate, quotient_piece_dimension

R = PolyRing(QQ, ("x", "y"))


def basis_strings(s):
    return sorted(format_poly(g[0]) for g in s.basis)


def test_basis_of_two_quadrics():
    s = groebner_basis(ideal(R, ["x^2 + y^2", "x*y"]))
    assert basis_strings(s) == sorted(["x^2 + y^2", "x*y", "y^3"])


def test_single_generator():
    assert basis_strings(groebner_basis(ideal(R, ["x"]))) == ["x"]


def test_unit_ideal():
    s = ideal(R, ["x", "1 + x"])
    assert basis_strings(s) == ["1"]
    assert quotient_dimension(s) == 0


@pytest.mark.parametrize("v,expected", [("x^3", "0"), ("y^2", "y^2"), ("0", "0")])
def test_normal_forms(v, expected):
    s = ideal(R, ["x^2 + y^2", "x*y"])
    assert format_poly(normal_form(R(v), s)) == expected


@pytest.mark.parametrize("row", [["x", "y"], ["x^2", "x*y"]])
def test_koszul_syzygy(row):
    syz = syzygy(PolyMatrix(R, [row]))
    assert syz.shape == (2, 1)
    assert syz == PolyMatrix(R, [["y"], ["-x"]])


def test_syzygy_of_identity_is_empty():
    assert syzygy(PolyMatrix.identity(R, 2)).shape == (2, 0)


@pytest.mark.parametrize("gens,expected", [(["x^2", "y^2"], 4), (["x"], INFINITE), (["1"], 0)])
def test_quotient_dimensions(gens, expected):
    assert quotient_dimension(ideal(R, gens)) == expected


def test_full_over_full_is_zero():
    F = FreeModule(R, 2)
    full = Submodule(F, [F.basis_vector(0), F.basis_vector(1)])
    assert k_dimension(full, full) == 0


def test_k_dimension_needs_a_field():
    Z = PolyRing(ZZ, ("x", "y"))
    with pytest.raises(InputError) as info:
        quotient_dimension(ideal(Z, ["x", "y"]))
    assert info.value.code == "COEFF_DOMAIN_NOT_FIELD"


def test_k_dimension_rejects_non_subquotients():
    s, t = ideal(R, ["x"]), ideal(R, ["y"])
    with pytest.raises(InputError):
        k_dimension(s, t)


def test_standard_monomials_of_complete_intersection():
    mons = standard_monomials(ideal(R, ["x^2", "y^2"]))
    assert sorted(e for _, e in mons) == [(0, 0), (0, 1), (1, 0), (1, 1)]


@pytest.mark.parametrize("seed", range(25))
def test_k_dimension_matches_macaulay_oracle(seed):
    rng = random.Random(seed)
    nv = 2 + seed % 2
    dom = QQ if seed % 3 else GF(5)
    ring = PolyRing(dom, ("x", "y", "z")[:nv])
    gens, top = random_zero_dim_ideal(rng, ring)
    expected = graded_quotient_dimension(ring, gens, top)
    assert quotient_piece_dimension(ring, gens, top + 1) == 0
    assert quotient_dimension(ideal(ring, gens)) == expected


@pytest.mark.parametrize("seed", range(10))
def test_membership_by_certificate(seed):
    rng = random.Random(100 + seed)
    ring = PolyRing(QQ, ("x", "y", "z"))
    gens, _ = random_zero_dim_ideal(rng, ring)
    s = ideal(ring, gens)
    cofactors = [ring.monomial(random_exponent(rng, 3, rng.randint(0, 2)), rng.randint(-3, 3)) for _ in gens]
    member = sum((g * c for g, c in zip(gens, cofactors)), ring.zero())
    assert in_ideal_by_certificate(member, gens, cofactors)
    assert normal_form(member, s).is_zero()
    assert s.contains(member)
    # a standard monomial is never a member, and adding one is detected
    (_, e) = standard_monomials(s)[-1]
    assert not s.contains(member + ring.monomial(e))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-3, 3)), min_size=1, max_size=3))
def test_normal_form_is_idempotent_and_differs_by_a_member(terms):
    s = ideal(R, ["x^2 + y^2", "x*y - y^2"])
    v = sum((R.monomial((a, b), c) for a, b, c in terms), R.zero())
    nf = normal_form(v, s)
    assert normal_form(nf, s) == nf
    assert s.contains(v - nf)


def test_top_and_pot_agree_on_dimension():
    F = FreeModule(R, 2, (0, 1))
    gens = [(R("x"), R("y^2")), (R("y"), R(0)), (R(0), R("x^2"))]
    pot = Submodule(F, gens, MonomialOrder(module="pot"))
    top = Submodule(F, gens, MonomialOrder(module="top"))
    assert quotient_dimension(pot) == quotient_dimension(top)
    for v in [(R("x*y"), R("x^2*y")), (R("x^3"), R("y^3"))]:
        assert pot.contains(v) == top.contains(v)


def test_syzygy_columns_are_kernel_elements():
    T = PolyRing(GF(7), ("x", "y", "z"))
    m = PolyMatrix(T, [["x*y", "y*z", "z*x"], ["x", "y", "z"]])
    syz = syzygy(m)
    assert syz.cols >= 1
    assert (m @ syz).is_zero()


def test_preimage_of_ideal():
    # {v : v * x in (x*y)} = (y)
    k = preimage(R, [(R("x"),)], [(R("x*y"),)], (0,), (1,))
    assert [format_poly(g[0]) for g in k.basis] == ["y"]


def test_disk_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("THETA_FORGE_CACHE_DIR", str(tmp_path))
    clear_cache()
    first = basis_strings(groebner_basis(ideal(R, ["x^3 - y^3", "x*y^2"])))
    assert list(tmp_path.glob("*.json"))
    clear_cache()
    again = basis_strings(groebner_basis(ideal(R, ["x^3 - y^3", "x*y^2"])))
    assert first == again
