"""Homogeneous matrix factorizations and finitely presented modules over S/f."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .exact_algebra import (
    ZZ,
    PolyMatrix,
    Polynomial,
    PolyRing,
    adjugate_det,
    block_diag,
    determinant,
    exact_divide,
)
from .groebner import FreeModule, Submodule, preimage, to_internal, to_public


@dataclass(frozen=True)
class PresentedModule:
    """``N = (+)_k R(-shifts[k]) / image(relations)`` over ``R = S/f``.

    ``relations`` is a matrix over ``S`` with ``len(shifts)`` rows; its columns
    are the relations. ``f`` itself is implicit.
    """

    ring: PolyRing
    f: Polynomial
    shifts: tuple
    relations: PolyMatrix

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(self.shifts))
        if self.relations.rows != len(self.shifts):
            raise InputError("SHAPE_MISMATCH", "relation matrix needs one row per generator")

    @classmethod
    def free(cls, ring: PolyRing, f: Polynomial, rank: int = 1, shifts=None) -> "PresentedModule":
        shifts = tuple(shifts) if shifts is not None else (0,) * rank
        return cls(ring, f, shifts, PolyMatrix(ring, [[] for _ in range(rank)], 0))

    @classmethod
    def quotient(cls, ring: PolyRing, f: Polynomial, gens) -> "PresentedModule":
        """The cyclic module ``R/(gens)``."""
        return cls(ring, f, (0,), PolyMatrix(ring, [[ring(g) for g in gens]]))

    @property
    def rank(self) -> int:
        return len(self.shifts)

    @property
    def ambient(self) -> FreeModule:
        return FreeModule(self.ring, self.rank, self.shifts)

    def denominators(self) -> list:
        """Relations together with ``f`` times each basis vector, as public vectors."""
        z = self.ring.zero()
        out = list(self.relations.columns())
        out += [tuple(self.f if k == i else z for k in range(self.rank)) for i in range(self.rank)]
        return out

    def submodule(self) -> Submodule:
        return Submodule(self.ambient, self.denominators())

    def is_homogeneous(self) -> bool:
        for col in self.relations.columns():
            degs = {d + self.shifts[i] for i, p in enumerate(col) for d in p.degrees()}
            if len(degs) > 1:
                return False
        return self.f.is_homogeneous()

    def dimension(self):
        from .groebner import quotient_dimension
        return quotient_dimension(self.submodule())


@dataclass(frozen=True)
class MatrixFactorization:
    """``A @ B == B @ A == f * I`` with twists making ``A`` a degree-0 map
    ``(+)_j S(-source_twists[j]) -> (+)_i S(-target_twists[i])``."""

    ring: PolyRing
    f: Polynomial
    A: PolyMatrix
    B: PolyMatrix
    source_twists: tuple
    target_twists: tuple

    @property
    def m(self) -> int:
        return self.A.rows

    @property
    def degree(self) -> int:
        return self.f.degree()


def _check_f(f: Polynomial) -> None:
    if f.is_zero() or f.is_constant():
        raise InputError("F_DEGENERATE", f"f must be a nonzero non-constant polynomial, got {f}")
    if not f.is_homogeneous():
        raise InputError("F_NOT_HOMOGENEOUS", f"f = {f} is not homogeneous")


def _infer_twists(A: PolyMatrix, B: PolyMatrix, degf: int) -> tuple:
    m = A.rows
    edges: dict = {}

    def link(i, j, diff):
        # e_j - d_i = diff
        edges.setdefault(("d", i), []).append((("e", j), diff))
        edges.setdefault(("e", j), []).append((("d", i), -diff))

    for i in range(m):
        for j in range(m):
            a = A[i, j]
            if a:
                if not a.is_homogeneous():
                    raise InputError("INHOMOGENEOUS_ENTRY", f"A[{i},{j}] = {a} is not homogeneous", matrix="A", row=i, col=j)
                link(i, j, a.degree())
            b = B[j, i]
            if b:
                if not b.is_homogeneous():
                    raise InputError("INHOMOGENEOUS_ENTRY", f"B[{j},{i}] = {b} is not homogeneous", matrix="B", row=j, col=i)
                link(i, j, degf - b.degree())
    value: dict = {}
    for start in [("d", i) for i in range(m)] + [("e", j) for j in range(m)]:
        if start in value:
            continue
        comp = [start]
        value[start] = 0
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for nxt, diff in edges.get(node, ()):
                # value[e] - value[d] = diff along d->e edges
                want = value[node] + diff
                if nxt in value:
                    if value[nxt] != want:
                        raise InputError("NO_CONSISTENT_TWISTS", "entry degrees admit no twist vectors")
                else:
                    value[nxt] = want
                    comp.append(nxt)
                    queue.append(nxt)
        ds = [value[n] for n in comp if n[0] == "d"]
        base = min(ds) if ds else 0
        for n in comp:
            value[n] -= base
    d = tuple(value[("d", i)] for i in range(m))
    e = tuple(value[("e", j)] for j in range(m))
    return e, d


def validate_mf(A: PolyMatrix, B: PolyMatrix, f: Polynomial) -> MatrixFactorization:
    """Check ``A B = B A = f I`` exactly and infer the twist vectors."""
    if not A.is_square() or not B.is_square():
        raise InputError("NOT_SQUARE", "matrix factorizations need square matrices")
    if A.shape != B.shape:
        raise InputError("SHAPE_MISMATCH", f"A is {A.shape} but B is {B.shape}")
    if A.ring != f.ring or B.ring != f.ring:
        raise InputError("RING_MISMATCH", "A, B and f must share one polynomial ring")
    _check_f(f)
    m = A.rows
    for name, prod in (("A*B", A @ B), ("B*A", B @ A)):
        for i in range(m):
            for j in range(m):
                want = f if i == j else f.ring.zero()
                if prod[i, j] != want:
                    raise InputError(
                        "MF_IDENTITY_FAILED",
                        f"({name})[{i},{j}] = {prod[i, j]}, expected {want}",
                        product=name, row=i, col=j, value=str(prod[i, j]),
                    )
    e, d = _infer_twists(A, B, f.degree())
    return MatrixFactorization(f.ring, f, A, B, e, d)


def mf_from_matrix(A: PolyMatrix, f: Polynomial) -> MatrixFactorization:
    """Complete ``A`` to a factorization of ``f`` with ``B = f adj(A) / det(A)``."""
    if not A.is_square():
        raise InputError("NOT_SQUARE", "a matrix factorization needs a square matrix")
    adj, det = adjugate_det(A)
    if det.is_zero():
        raise InputError("SINGULAR_MATRIX", "det(A) = 0")
    try:
        B = adj.map(lambda e: exact_divide(e * f, det))
    except ArithmeticError:
        raise InputError("MF_IDENTITY_FAILED", f"f * adj(A) is not divisible by det(A) = {det}") from None
    return validate_mf(A, B, f)


def cokernel(mf: MatrixFactorization) -> PresentedModule:
    return PresentedModule(mf.ring, mf.f, mf.target_twists, mf.A)


def direct_sum(m1: MatrixFactorization, m2: MatrixFactorization) -> MatrixFactorization:
    if m1.ring != m2.ring or m1.f != m2.f:
        raise InputError("F_MISMATCH", "direct sums need the same ring and the same f")
    return MatrixFactorization(
        m1.ring, m1.f, block_diag(m1.A, m2.A), block_diag(m1.B, m2.B),
        m1.source_twists + m2.source_twists, m1.target_twists + m2.target_twists,
    )


def trivial_mf(ring: PolyRing, f: Polynomial, kind: str = "f1") -> MatrixFactorization:
    """``(f, 1)`` (cokernel R, free) or ``(1, f)`` (cokernel 0)."""
    one = ring.one()
    A, B = (f, one) if kind == "f1" else (one, f)
    return validate_mf(PolyMatrix(ring, [[A]]), PolyMatrix(ring, [[B]]), f)


def lift_adjugate(A: PolyMatrix) -> tuple:
    """Lift a matrix over GF(p) to ZZ and complete it with its adjugate.

    Returns ``(A_lift, adj(A_lift), det(A_lift))``; coefficients are lifted to
    the symmetric range ``[-(p-1)/2, (p-1)/2]``.
    """
    dom = A.ring.coeffs
    if dom.kind != "GF":
        raise InputError("NOT_PRIME_FIELD", "lift_adjugate expects a matrix over GF(p)")
    if not A.is_square():
        raise InputError("NOT_SQUARE", "lift_adjugate needs a square matrix")
    for i, row in enumerate(A.entries):
        for j, e in enumerate(row):
            if not e.is_homogeneous():
                raise InputError("INHOMOGENEOUS_ENTRY", f"A[{i},{j}] = {e} is not homogeneous", row=i, col=j)
    if determinant(A).is_zero():
        raise InputError("SINGULAR_MATRIX", f"det(A) = 0 over {dom}")
    zring = A.ring.with_coeffs(ZZ)
    lifted = A.map(lambda e: Polynomial(zring, {x: dom.lift(c) for x, c in e.terms.items()}), zring)
    adj, det = adjugate_det(lifted)
    return lifted, adj, det


@dataclass(frozen=True)
class RankOneReport:
    det_A: Polynomial
    rank_one: bool
    warning: str | None = None


def _scalar_ratio(a: Polynomial, b: Polynomial):
    """``c`` with ``a == c * b`` for a nonzero scalar ``c``, else None."""
    if a.is_zero() or b.is_zero() or set(a.terms) != set(b.terms):
        return None
    ratios = {Fraction(a.terms[e]) / Fraction(b.terms[e]) if a.ring.coeffs.kind != "GF"
              else a.terms[e] * pow(b.terms[e], -1, a.ring.coeffs.p) % a.ring.coeffs.p
              for e in a.terms}
    return ratios.pop() if len(ratios) == 1 else None


def detectably_reducible(f: Polynomial, *candidates: Polynomial) -> bool:
    """True when a cheap certificate shows ``f`` factors.

    Certificates: a nonconstant monomial factor, or one of ``candidates``
    being a proper divisor of ``f``.
    """
    exps = list(f.terms)
    common = tuple(min(col) for col in zip(*exps))
    if any(common) and len(f.terms) > 1:
        return True
    if len(f.terms) == 1 and sum(common) > 1:
        return True
    for c in candidates:
        if 0 < c.degree() < f.degree():
            try:
                exact_divide(f, c)
                return True
            except ArithmeticError:
                pass
    return False


def is_rank_one(mf: MatrixFactorization) -> RankOneReport:
    det_a = determinant(mf.A)
    rank_one = _scalar_ratio(det_a, mf.f) is not None
    warning = None
    if detectably_reducible(mf.f, det_a, determinant(mf.B)):
        warning = "f is reducible; the rank-one criterion is only stated for irreducible f"
    return RankOneReport(det_a, rank_one, warning)


# --------------------------------------------------------------------------
# resolutions over R and stabilization
# --------------------------------------------------------------------------

def _vec_degree(v: dict, ring: PolyRing, shifts) -> set:
    return {ring.exp_degree(e) + shifts[pos] for pos, e in v}


def minimal_generators(vectors, ambient: FreeModule, base=()) -> list:
    """Graded minimal generators of ``<vectors> + <base>`` modulo ``<base>``.

    Works degree by degree: a vector is kept when its normal form against
    everything of lower degree is linearly independent of the normal forms
    already kept in its own degree.
    """
    ring = ambient.ring
    vecs = [to_internal(v, ambient.rank) for v in vectors]
    vecs = [v for v in vecs if v]
    base = [to_internal(b, ambient.rank) for b in base]
    by_deg: dict = {}
    for v in vecs:
        degs = _vec_degree(v, ring, ambient.shifts)
        if len(degs) != 1:
            raise InputError("INHOMOGENEOUS_INPUT", "generators must be homogeneous")
        by_deg.setdefault(degs.pop(), []).append(v)
    kept: list = []
    for deg in sorted(by_deg):
        lower = Submodule(ambient, base + kept)
        if lower._gens:
            nfs = [lower.reduce_internal(v) for v in by_deg[deg]]
        else:
            nfs = [dict(v) for v in by_deg[deg]]
        eng = lower.engine
        echelon: list = []  # (pivot term, row) with row monic at pivot
        for v, nf in zip(by_deg[deg], nfs):
            row = dict(nf)
            for piv, er in echelon:
                c = row.get(piv)
                if c:
                    for t, x in er.items():
                        nv = eng.norm(row.get(t, 0) - c * x)
                        if nv:
                            row[t] = nv
                        else:
                            row.pop(t, None)
            if row:
                piv = eng.lead(row)
                inv = eng.inv(row[piv])
                row = {t: eng.norm(x * inv) for t, x in row.items()}
                for k, (p2, er) in enumerate(echelon):
                    c = er.get(piv)
                    if c:
                        new = dict(er)
                        for t, x in row.items():
                            nv = eng.norm(new.get(t, 0) - c * x)
                            if nv:
                                new[t] = nv
                            else:
                                new.pop(t, None)
                        echelon[k] = (p2, new)
                echelon.append((piv, row))
                kept.append(v)
    return [to_public(v, ring, ambient.rank) for v in kept]


def _f_multiples(f: Polynomial, rank: int) -> list:
    z = f.ring.zero()
    return [tuple(f if k == i else z for k in range(rank)) for i in range(rank)]


def _reduce_mod_f(v: tuple, f: Polynomial) -> tuple:
    from .groebner import ideal, normal_form
    fi = ideal(f.ring, [f])
    return tuple(normal_form(p, fi) if p else p for p in v)


@dataclass(frozen=True)
class Resolution:
    """``F_0 <-d_1- F_1 <-d_2- ...`` over ``R``; ``maps[i]`` is ``d_{i+1}`` lifted to ``S``."""

    module: PresentedModule
    maps: tuple
    shifts: tuple  # shifts[i] are the twists of F_i


def _matrix_from_columns(ring, cols, rows) -> PolyMatrix:
    if cols:
        return PolyMatrix.from_columns(ring, cols, rows)
    return PolyMatrix(ring, [[] for _ in range(rows)], 0)


def resolve(m: PresentedModule, length: int) -> Resolution:
    """First ``length`` differentials of a graded minimal free resolution of ``m`` over ``R``."""
    if not m.is_homogeneous():
        raise InputError("INHOMOGENEOUS_INPUT", "stabilize/resolve need homogeneous relations")
    ring, f = m.ring, m.f
    amb = m.ambient
    rels = minimal_generators([_reduce_mod_f(c, f) for c in m.relations.columns()], amb, _f_multiples(f, amb.rank))
    shifts = [amb.shifts]
    cols = rels
    maps = []
    for step in range(length):
        target = shifts[-1]
        mat = _matrix_from_columns(ring, cols, len(target))
        src = tuple(min(_vec_degree(to_internal(c, len(target)), ring, target)) for c in cols)
        maps.append(mat)
        shifts.append(src)
        if step == length - 1:
            break
        kernel = preimage(ring, cols, _f_multiples(f, len(target)), target, src)
        src_amb = FreeModule(ring, len(src), src)
        fmult = _f_multiples(f, len(src))
        fsub = Submodule(src_amb, fmult)
        gens = [_reduce_mod_f(v, f) for v in kernel.basis]
        gens = [v for v in gens if not fsub.contains(v)]
        cols = minimal_generators(gens, src_amb, fmult)
    return Resolution(m, tuple(maps), tuple(shifts))


def stabilize(m: PresentedModule, steps: int) -> tuple:
    """Matrix factorization whose cokernel is the ``steps``-th syzygy of ``m``.

    Returns ``(mf, parity)`` with ``parity = steps % 2``, so that
    ``theta(m, N) == (-1)**parity * theta(cokernel(mf), N)``.
    """
    if steps < 0:
        raise InputError("BAD_STEPS", "steps must be non-negative")
    ring, f = m.ring, m.f
    _check_f(f)
    res = resolve(m, steps + 1)
    last = res.maps[steps]
    shifts = res.shifts[steps]
    r = len(shifts)
    parity = steps % 2
    if r == 0:
        return trivial_mf(ring, f, "1f"), parity
    amb = FreeModule(ring, r, shifts)
    gens = minimal_generators(list(last.columns()) + _f_multiples(f, r), amb)
    if len(gens) != r:
        raise InputError(
            "NOT_STABILIZED",
            f"syzygy after {steps} steps needs {len(gens)} generators over S on {r} basis vectors",
            steps=steps,
        )
    A = PolyMatrix.from_columns(ring, gens, r)
    try:
        mf = mf_from_matrix(A, f)
    except InputError as exc:
        raise InputError("NOT_STABILIZED", f"final pair is not a matrix factorization: {exc.message}", steps=steps) from None
    return mf, parity
