import pytest

from theta_forge.errors import HypothesisError, InputError
from theta_forge.exact_algebra import GF, QQ, PolyMatrix, PolyRing
from theta_forge.matrix_factorization import (
    PresentedModule, cokernel, direct_sum, mf_from_matrix, stabilize, trivial_mf, validate_mf,
)
from theta_forge.stable_homology import chi_higher, ext_dims, tor_dims, tor_dims_resolved

from corpus import corpus_pairs, specialized
from oracles import ext_oracle, tor_oracle

R = PolyRing(QQ, ("x", "y"))
F = R("x*y")
X = validate_mf(PolyMatrix(R, [["x"]]), PolyMatrix(R, [["y"]]), F)


def test_node_tor_and_ext():
    N = cokernel(X)
    assert tor_dims(X, N, 4).dims == (1, 0, 1, 0)
    assert ext_dims(X, N, 4).dims == (0, 1, 0, 1)


@pytest.mark.parametrize("dom", [QQ, GF(2), GF(3), GF(5)])
def test_quadric_tor(dom):
    mfs = specialized("quadric", dom)
    N = cokernel(mfs["N"])
    assert tor_dims(mfs["M"], N, 4).dims == (0, 1, 0, 1)
    assert ext_dims(mfs["M"], N, 4).dims == (0, 1, 0, 1)


def test_displayed_quadric_matrix_is_shifted_by_one():
    mfs = specialized("quadric", QQ)
    N = cokernel(mfs["N"])
    assert tor_dims(mfs["OmegaM"], N, 4).dims == (1, 0, 1, 0)
    assert ext_dims(mfs["OmegaM"], N, 4).dims == (1, 0, 1, 0)


def test_free_second_argument():
    assert tor_dims(X, PresentedModule.free(R, F), 4).dims == (0, 0, 0, 0)
    assert ext_dims(X, PresentedModule.free(R, F), 4).dims == (0, 0, 0, 0)


def test_window_and_profile_access():
    prof = tor_dims(X, cokernel(X), 6)
    assert prof.window == 6 and prof[1] == 1 and prof[2] == 0
    assert prof.is_periodic()
    with pytest.raises(IndexError):
        prof[7]


def test_window_must_be_at_least_two():
    with pytest.raises(InputError):
        tor_dims(X, cokernel(X), 1)


def test_non_isolated_singularity_is_reported():
    # f = x^2 y has a singular line; coker(x) against itself has infinite Tor
    f = R("x^2*y")
    mf = validate_mf(PolyMatrix(R, [["x"]]), PolyMatrix(R, [["x*y"]]), f)
    with pytest.raises(HypothesisError) as info:
        tor_dims(mf, cokernel(mf), 2)
    assert info.value.code == "NONFINITE_TOR"
    with pytest.raises(HypothesisError) as info:
        ext_dims(mf, cokernel(mf), 2)
    assert info.value.code == "NONFINITE_EXT"


def test_chi_higher():
    Y = validate_mf(PolyMatrix(R, [["y"]]), PolyMatrix(R, [["x"]]), F)
    assert chi_higher(X, cokernel(Y), 1) == 0
    assert chi_higher(X, cokernel(Y), 2) == 0
    with pytest.raises(HypothesisError) as info:
        chi_higher(X, cokernel(X), 1)
    assert info.value.code == "INFINITE_LENGTH"


def _ids(pairs):
    return [f"{fam}:{a},{b}" for fam, a, b, _, _ in pairs]


PAIRS_Q = corpus_pairs(QQ)


@pytest.mark.parametrize("fam,a,b,m,n", PAIRS_Q, ids=_ids(PAIRS_Q))
def test_periodicity(fam, a, b, m, n):
    assert tor_dims(m, cokernel(n), 8).is_periodic()
    assert ext_dims(m, cokernel(n), 8).is_periodic()


@pytest.mark.parametrize("fam,a,b,m,n", PAIRS_Q, ids=_ids(PAIRS_Q))
def test_symmetry_of_tor(fam, a, b, m, n):
    assert tor_dims(m, cokernel(n), 2).dims == tor_dims(n, cokernel(m), 2).dims


SMALL = [p for p in PAIRS_Q if p[0] != "quadric"]


@pytest.mark.parametrize("fam,a,b,m,n", SMALL, ids=_ids(SMALL))
def test_against_graded_oracle(fam, a, b, m, n):
    N = cokernel(n)
    assert tor_dims(m, N, 2).dims == tor_oracle(m, N, 12)
    assert ext_dims(m, N, 2).dims == ext_oracle(m, N, 12)


@pytest.mark.parametrize("fam", ["node", "binary_cubic", "cone", "weighted_cusp", "quadric"])
def test_additivity(fam):
    mfs = specialized(fam, QQ)
    names = [k for k in mfs if k not in ("free", "zero")]
    a, b = names[0], names[1]
    s = direct_sum(mfs[a], mfs[b])
    for target in (a, b):
        N = cokernel(mfs[target])
        lhs = tor_dims(s, N, 2).dims
        rhs = tuple(u + v for u, v in zip(tor_dims(mfs[a], N, 2).dims, tor_dims(mfs[b], N, 2).dims))
        assert lhs == rhs


@pytest.mark.parametrize("fam,module", [
    ("node", ["x"]),
    ("binary_cubic", ["x + y"]),
    ("cone", ["x", "z"]),
    ("quadric", ["x1", "x2"]),
])
def test_explicit_resolution_agrees(fam, module):
    mfs = specialized(fam, QQ)
    any_mf = next(iter(mfs.values()))
    M = PresentedModule.quotient(any_mf.ring, any_mf.f, [any_mf.ring(g) for g in module])
    target = [k for k in mfs if k not in ("free", "zero")][0]
    N = cokernel(mfs[target])
    resolved = tor_dims_resolved(M, N, 6)
    stable, parity = stabilize(M, 2)
    assert parity == 0
    assert resolved.dims == tor_dims(stable, N, 6).dims
    assert resolved.is_periodic()


def test_rational_data_has_no_hidden_denominators():
    half = PolyRing(QQ, ("x", "y"))
    f = half("1/2*x*y")
    mf = validate_mf(PolyMatrix(half, [["1/2*x"]]), PolyMatrix(half, [["y"]]), f)
    cleared = validate_mf(PolyMatrix(half, [["x"]]), PolyMatrix(half, [["y"]]), half("x*y"))
    assert tor_dims(mf, cokernel(mf), 4).dims == tor_dims(cleared, cokernel(cleared), 4).dims


def test_zero_module_has_no_homology():
    mf = trivial_mf(R, F, "1f")
    assert tor_dims(X, cokernel(mf), 4).dims == (0, 0, 0, 0)
    assert tor_dims(mf, cokernel(X), 4).dims == (0, 0, 0, 0)


def test_completed_factorization_matches_explicit_one():
    done = mf_from_matrix(PolyMatrix(R, [["x"]]), F)
    assert done.B == X.B
