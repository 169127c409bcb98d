"""Independent oracles: plain linear algebra on monomial bases, no Gröbner bases.

Everything here works degree by degree with explicit vectors indexed by
``(position, exponent)`` and row reduction over the coefficient field.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product


def monomials_of_degree(nvars: int, deg: int, weights=None) -> list:
    weights = weights or (1,) * nvars
    if deg < 0:
        return []
    out = []
    bounds = [range(deg // w + 1) for w in weights]
    for e in product(*bounds):
        if sum(a * w for a, w in zip(e, weights)) == deg:
            out.append(e)
    return out


def rank(vectors, dom) -> int:
    """Rank of a list of sparse vectors (dicts) over a field."""
    pivots: dict = {}
    r = 0
    for v in vectors:
        v = {k: c for k, c in v.items() if c}
        while v:
            k = max(v)
            if k not in pivots:
                inv = dom.inv(v[k])
                pivots[k] = {t: dom.normalize(c * inv) for t, c in v.items()}
                r += 1
                break
            c = v[k]
            for t, x in pivots[k].items():
                nv = dom.normalize(v.get(t, 0) - c * x)
                if nv:
                    v[t] = nv
                else:
                    v.pop(t, None)
    return r


def _times_monomial(vec, exp) -> dict:
    """``vec`` is a tuple of polynomials; returns the dict of ``exp * vec``."""
    out = {}
    for pos, p in enumerate(vec):
        for e, c in p.terms.items():
            out[(pos, tuple(a + b for a, b in zip(e, exp)))] = c
    return out


def _graded_span(vectors, shifts, t, ring) -> list:
    """All ``m * v`` of degree exactly ``t`` for homogeneous ``v``."""
    out = []
    for v in vectors:
        degs = {ring.exp_degree(e) + shifts[pos] for pos, p in enumerate(v) for e in p.terms}
        if not degs:
            continue
        (d,) = degs
        for m in monomials_of_degree(ring.nvars, t - d, ring.weights):
            out.append(_times_monomial(v, m))
    return out


def graded_quotient_dimension(ring, gens, max_degree: int) -> int:
    """``sum_t dim (S/I)_t`` for ``t <= max_degree`` via Macaulay matrices.

    For a zero-dimensional homogeneous ideal and ``max_degree`` past the
    regularity this is the dimension of ``S/I``.
    """
    total = 0
    vecs = [(g,) for g in gens]
    for t in range(max_degree + 1):
        n = len(monomials_of_degree(ring.nvars, t, ring.weights))
        total += n - rank(_graded_span(vecs, (0,), t, ring), ring.coeffs)
    return total


def quotient_piece_dimension(ring, gens, t: int) -> int:
    n = len(monomials_of_degree(ring.nvars, t, ring.weights))
    return n - rank(_graded_span([(g,) for g in gens], (0,), t, ring), ring.coeffs)


def in_ideal_by_certificate(g, gens, cofactors) -> bool:
    acc = g.ring.zero()
    for h, c in zip(gens, cofactors):
        acc = acc + h * c
    return acc == g


# --------------------------------------------------------------------------
# homology of N^m <-out- N^m <-in- N^m, degree by degree
# --------------------------------------------------------------------------

def _basis(ring, shifts, t) -> list:
    return [(pos, m) for pos, s in enumerate(shifts) for m in monomials_of_degree(ring.nvars, t - s, ring.weights)]


def _apply(mat, pos_exp, a: int) -> dict:
    """Image of the basis element ``exp * e_pos`` of ``S^(cols*a)`` under ``mat ⊗ I_a``."""
    pos, exp = pos_exp
    j, s = divmod(pos, a)
    out = {}
    for i in range(mat.rows):
        for e, c in mat[i, j].terms.items():
            key = (i * a + s, tuple(x + y for x, y in zip(e, exp)))
            out[key] = out.get(key, 0) + c
    return out


def _relations(N, copies: int) -> list:
    z = N.ring.zero()
    out = []
    for k in range(copies):
        for d in N.denominators():
            v = [z] * (copies * N.rank)
            v[k * N.rank:(k + 1) * N.rank] = d
            out.append(tuple(v))
    return out


def homology_dimension(N, outgoing, incoming, mid_shifts, tgt_shifts, max_degree: int,
                       return_pieces: bool = False):
    """``dim ker(outgoing ⊗ N) / im(incoming ⊗ N)`` summed over degrees up to ``max_degree``."""
    ring, dom, a = N.ring, N.ring.coeffs, N.rank
    mid = tuple(s + n for s in mid_shifts for n in N.shifts)
    tgt = tuple(s + n for s in tgt_shifts for n in N.shifts)
    rel_mid = _relations(N, outgoing.cols)
    rel_tgt = _relations(N, outgoing.rows)
    inc_cols = []
    for j in range(incoming.cols):
        for s in range(a):
            col = [ring.zero()] * (incoming.rows * a)
            for i in range(incoming.rows):
                col[i * a + s] = incoming[i, j]
            inc_cols.append(tuple(col))
    pieces = {}
    for t in range(min(mid) if mid else 0, max_degree + 1):
        basis = _basis(ring, mid, t)
        if not basis:
            continue
        W = _graded_span(rel_tgt, tgt, t, ring)
        rw = rank(W, dom)
        images = [_apply(outgoing, b, a) for b in basis]
        ker = len(basis) - (rank(W + images, dom) - rw)
        im = rank(_graded_span(rel_mid, mid, t, ring) + _graded_span(inc_cols, mid, t, ring), dom)
        pieces[t] = ker - im
    total = sum(pieces.values())
    return (total, pieces) if return_pieces else total


def tor_oracle(mf, N, max_degree: int) -> tuple:
    """``(dim Tor_1, dim Tor_2)`` for ``coker A`` against ``N``."""
    df = mf.f.degree()
    odd = homology_dimension(N, mf.A, mf.B, mf.source_twists, mf.target_twists, max_degree)
    even = homology_dimension(N, mf.B, mf.A, tuple(d + df for d in mf.target_twists), mf.source_twists, max_degree)
    return odd, even


def ext_oracle(mf, N, max_degree: int) -> tuple:
    """``(dim Ext^1, dim Ext^2)`` via the transposed complex."""
    df = mf.f.degree()
    At, Bt = mf.A.transpose(), mf.B.transpose()
    neg_e = tuple(-x for x in mf.source_twists)
    neg_d2 = tuple(-x - df for x in mf.target_twists)
    neg_e3 = tuple(-x - df for x in mf.source_twists)
    odd = homology_dimension(N, Bt, At, neg_e, neg_d2, max_degree)
    even = homology_dimension(N, At, Bt, neg_d2, neg_e3, max_degree)
    return odd, even


# --------------------------------------------------------------------------
# determinants and residues
# --------------------------------------------------------------------------

def leibniz_det(rows, ring):
    n = len(rows)
    acc = ring.zero()
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = ring.one()
        for i in range(n):
            term = term * rows[i][perm[i]]
        acc = acc + term if sign > 0 else acc - term
    return acc


def diagonal_residue(g, coeffs, degrees):
    """Residue of ``g`` for ``f = sum c_i x_i^d_i`` by the transformation law.

    The Jacobian ideal is ``(d_i c_i x_i^(d_i - 1))``, so only the monomial
    ``prod x_i^(d_i - 2)`` survives, with residue ``prod 1/(d_i c_i)``.
    """
    socle = tuple(d - 2 for d in degrees)
    c = g.terms.get(socle, 0)
    scale = Fraction(1)
    for ci, di in zip(coeffs, degrees):
        scale /= di * ci
    return Fraction(c) * scale
