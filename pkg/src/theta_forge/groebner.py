"""Gröbner bases for submodules of graded free modules over a polynomial ring.

Module elements are handled internally as dicts ``{(position, exponent): coeff}``.
The public functions accept tuples of :class:`Polynomial` (one entry per
position) or a bare polynomial for rank-one modules.

Computations over a hypersurface ring ``S/f`` are done over ``S`` by adding
``f`` times every basis vector to the submodule being quotiented out.
"""

from __future__ import annotations

import hashlib
import heapq
import json
import logging
import math
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InputError
from .exact_algebra import PolyMatrix, Polynomial, PolyRing
from .exact_algebra.polynomial import MONOMIAL_KEYS, add_exp, divides, lcm_exp, sub_exp

log = logging.getLogger(__name__)

INFINITE = math.inf


@dataclass(frozen=True)
class MonomialOrder:
    """Graded monomial order extended to free modules.

    ``module="pot"`` compares positions first (position over term); positions
    are ranked by degree shift, then index, the smallest shift and index being
    the most significant. ``module="top"`` compares total degree including the
    shift first.
    """

    kind: str = "grevlex"
    module: str = "pot"

    def __post_init__(self):
        if self.kind not in MONOMIAL_KEYS:
            raise ValueError(f"unsupported monomial order {self.kind!r}")
        if self.module not in ("pot", "top"):
            raise ValueError(f"unsupported module extension {self.module!r}")


GREVLEX = MonomialOrder()


@dataclass(frozen=True)
class FreeModule:
    ring: PolyRing
    rank: int
    shifts: tuple = None

    def __post_init__(self):
        s = tuple(self.shifts) if self.shifts is not None else (0,) * self.rank
        if len(s) != self.rank:
            raise ValueError("need one shift per basis element")
        object.__setattr__(self, "shifts", s)

    def basis_vector(self, i: int) -> tuple:
        z, one = self.ring.zero(), self.ring.one()
        return tuple(one if k == i else z for k in range(self.rank))


def default_ranks(shifts) -> tuple:
    """Position significance: smaller shift, then smaller index, ranks higher."""
    n = len(shifts)
    order = sorted(range(n), key=lambda i: (shifts[i], i))
    ranks = [0] * n
    for r, i in enumerate(order):
        ranks[i] = n - r
    return tuple(ranks)


# --------------------------------------------------------------------------
# conversion between public vectors and internal dicts
# --------------------------------------------------------------------------

def to_internal(v, rank: int) -> dict:
    if isinstance(v, dict):
        return dict(v)
    if isinstance(v, Polynomial):
        v = (v,)
    if len(v) != rank:
        raise InputError("RANK_MISMATCH", f"vector of length {len(v)} in a rank-{rank} module")
    out = {}
    for pos, p in enumerate(v):
        for e, c in p.terms.items():
            out[(pos, e)] = c
    return out


def to_public(v: dict, ring: PolyRing, rank: int) -> tuple:
    parts = [dict() for _ in range(rank)]
    for (pos, e), c in v.items():
        parts[pos][e] = c
    return tuple(Polynomial._raw(ring, d) for d in parts)


# --------------------------------------------------------------------------
# the engine
# --------------------------------------------------------------------------

class _Engine:
    """Buchberger machinery for one ambient module and one term order."""

    def __init__(self, ring: PolyRing, shifts, order: MonomialOrder = GREVLEX, ranks=None, blocks=None):
        dom = ring.coeffs
        if not dom.is_field:
            raise InputError("COEFF_DOMAIN_NOT_FIELD", f"Gröbner bases need a field, got {dom}")
        self.ring = ring
        self.shifts = tuple(shifts)
        self.order = order
        self.ranks = tuple(ranks) if ranks is not None else default_ranks(self.shifts)
        self.blocks = tuple(blocks) if blocks is not None else (0,) * len(self.shifts)
        self.weights = ring.weights
        self._mkey = MONOMIAL_KEYS[order.kind]
        self._keys: dict = {}
        p = dom.p
        if p is not None:
            self.norm = lambda c: c % p
            self.inv = lambda c: pow(c, -1, p)
        else:
            self.norm = lambda c: c
            self.inv = lambda c: Fraction(1) / c

    def key(self, t):
        k = self._keys.get(t)
        if k is None:
            pos, e = t
            if self.order.module == "pot":
                k = (self.blocks[pos], self.ranks[pos], self._mkey(e, self.weights))
            else:
                deg = self.ring.exp_degree(e) + self.shifts[pos]
                k = (self.blocks[pos], deg, self._mkey(e, self.weights), self.ranks[pos])
            self._keys[t] = k
        return k

    def lead(self, v: dict):
        return max(v, key=self.key)

    def degree(self, v: dict) -> int:
        return max(self.ring.exp_degree(e) + self.shifts[pos] for pos, e in v)

    def monic(self, v: dict) -> dict:
        c = self.inv(v[self.lead(v)])
        if c == 1:
            return v
        norm = self.norm
        return {t: norm(x * c) for t, x in v.items()}

    def reduce(self, v: dict, index: dict) -> dict:
        """Full reduction of ``v`` by monic reducers grouped by leading position."""
        norm = self.norm
        key = self.key
        p = dict(v)
        r = {}
        while p:
            t = max(p, key=key)
            c = p[t]
            pos, e = t
            red = None
            for ge, g in index.get(pos, ()):
                if divides(ge, e):
                    red = (ge, g)
                    break
            if red is None:
                r[t] = c
                del p[t]
                continue
            ge, g = red
            q = sub_exp(e, ge)
            for (gp, gx), gc in g.items():
                tt = (gp, add_exp(gx, q))
                nv = norm(p.get(tt, 0) - c * gc)
                if nv:
                    p[tt] = nv
                else:
                    p.pop(tt, None)
        return r

    def groebner(self, gens) -> list:
        """Reduced Gröbner basis (monic, sorted by leading term) of ``gens``."""
        G: list = []
        leads: list = []
        index: dict = {}
        pending: set = set()
        heap: list = []
        single: list = []  # whether each basis element lives in one position
        for n, g in enumerate(gens):
            if g:
                heapq.heappush(heap, (self.degree(g), 0, n, 0, g))
        while heap:
            deg, kind, i, j, payload = heapq.heappop(heap)
            if kind == 1:
                pending.discard((i, j))
                if self._chain(i, j, leads, pending):
                    continue
                s = self._spoly(G[i], G[j], leads[i], leads[j])
            else:
                s = payload
            r = self.reduce(s, index)
            if not r:
                continue
            r = self.monic(r)
            k = len(G)
            lt = self.lead(r)
            G.append(r)
            leads.append(lt)
            single.append(len({pos for pos, _ in r}) == 1)
            index.setdefault(lt[0], []).append((lt[1], r))
            for i2 in range(k):
                if leads[i2][0] != lt[0]:
                    continue
                e1, e2 = leads[i2][1], lt[1]
                if single[i2] and single[k] and all(a == 0 or b == 0 for a, b in zip(e1, e2)):
                    continue  # product criterion, valid for elements supported in one position
                lcm = lcm_exp(e1, e2)
                d = self.ring.exp_degree(lcm) + self.shifts[lt[0]]
                pending.add((i2, k))
                heapq.heappush(heap, (d, 1, i2, k, None))
        return self._interreduce(G, leads)

    def _chain(self, i, j, leads, pending) -> bool:
        pos = leads[i][0]
        lcm = lcm_exp(leads[i][1], leads[j][1])
        for k, (kp, ke) in enumerate(leads):
            if k == i or k == j or kp != pos or not divides(ke, lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                return True
        return False

    def _spoly(self, a, b, la, lb) -> dict:
        lcm = lcm_exp(la[1], lb[1])
        qa, qb = sub_exp(lcm, la[1]), sub_exp(lcm, lb[1])
        norm = self.norm
        out = {}
        for (p, e), c in a.items():
            out[(p, add_exp(e, qa))] = c
        for (p, e), c in b.items():
            t = (p, add_exp(e, qb))
            v = norm(out.get(t, 0) - c)
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return out

    def _interreduce(self, G, leads) -> list:
        keep = []
        for k, (pos, e) in enumerate(leads):
            if not any(l != k and lp == pos and divides(le, e) and (le != e or l < k)
                       for l, (lp, le) in enumerate(leads)):
                keep.append(k)
        out = []
        for k in keep:
            index: dict = {}
            for l in keep:
                if l != k:
                    index.setdefault(leads[l][0], []).append((leads[l][1], G[l]))
            out.append(self.monic(self.reduce(G[k], index)))
        out.sort(key=lambda v: self.key(self.lead(v)))
        return out

    @staticmethod
    def make_index(basis, lead) -> dict:
        index: dict = {}
        for g in basis:
            pos, e = lead(g)
            index.setdefault(pos, []).append((e, g))
        return index


# --------------------------------------------------------------------------
# content-hash cache of Gröbner bases
# --------------------------------------------------------------------------

_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def _cache_key(eng: _Engine, gens) -> str:
    canon = sorted(sorted((pos, e, str(c)) for (pos, e), c in g.items()) for g in gens)
    blob = repr((str(eng.ring.coeffs), eng.ring.weights, eng.order, eng.shifts, eng.ranks, eng.blocks, canon))
    return hashlib.sha256(blob.encode()).hexdigest()


def _parse_coeff(s: str):
    return Fraction(s) if "/" in s else int(s)


def _cached_groebner(eng: _Engine, gens) -> list:
    key = _cache_key(eng, gens)
    with _CACHE_LOCK:
        hit = _CACHE.get(key)
    if hit is not None:
        return [dict(g) for g in hit]
    cache_dir = os.environ.get("THETA_FORGE_CACHE_DIR")
    path = os.path.join(cache_dir, key + ".json") if cache_dir else None
    if path and os.path.exists(path):
        with open(path) as fh:
            data = json.load(fh)
        basis = [{(pos, tuple(e)): _parse_coeff(c) for pos, e, c in g} for g in data]
    else:
        basis = eng.groebner(gens)
        if path:
            os.makedirs(cache_dir, exist_ok=True)
            tmp = f"{path}.{os.getpid()}.{threading.get_ident()}.tmp"
            with open(tmp, "w") as fh:
                json.dump([[[pos, list(e), str(c)] for (pos, e), c in g.items()] for g in basis], fh)
            os.replace(tmp, path)
    with _CACHE_LOCK:
        _CACHE[key] = basis
    return [dict(g) for g in basis]


def clear_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()


# --------------------------------------------------------------------------
# public API
# --------------------------------------------------------------------------

class Submodule:
    """Submodule of a graded free module, given by generators."""

    def __init__(self, ambient: FreeModule, generators, order: MonomialOrder = GREVLEX, basis=None):
        self.ambient = ambient
        self.order = order
        gens = [to_internal(g, ambient.rank) for g in generators]
        self._gens = [g for g in gens if g]
        self._basis = [dict(b) for b in basis] if basis is not None else None
        self._engine = None

    @classmethod
    def from_matrix(cls, m: PolyMatrix, shifts=None, order: MonomialOrder = GREVLEX) -> "Submodule":
        return cls(FreeModule(m.ring, m.rows, shifts), m.columns(), order)

    @property
    def ring(self) -> PolyRing:
        return self.ambient.ring

    @property
    def engine(self) -> _Engine:
        if self._engine is None:
            self._engine = _Engine(self.ring, self.ambient.shifts, self.order)
        return self._engine

    @property
    def generators(self) -> list:
        return [to_public(g, self.ring, self.ambient.rank) for g in self._gens]

    @property
    def has_basis(self) -> bool:
        return self._basis is not None

    def internal_basis(self) -> list:
        if self._basis is None:
            self._basis = _cached_groebner(self.engine, self._gens)
        return self._basis

    @property
    def basis(self) -> list:
        return [to_public(g, self.ring, self.ambient.rank) for g in self.internal_basis()]

    def leading_terms(self) -> list:
        eng = self.engine
        return [eng.lead(g) for g in self.internal_basis()]

    def reduce_internal(self, v: dict) -> dict:
        eng = self.engine
        return eng.reduce(v, _Engine.make_index(self.internal_basis(), eng.lead))

    def contains(self, v) -> bool:
        return not self.reduce_internal(to_internal(v, self.ambient.rank))

    def __add__(self, other: "Submodule") -> "Submodule":
        if other.ambient != self.ambient:
            raise InputError("AMBIENT_MISMATCH", "submodules live in different free modules")
        return Submodule(self.ambient, self._gens + other._gens, self.order)

    def __len__(self):
        return len(self._gens)


def groebner_basis(s: Submodule, order: MonomialOrder | None = None) -> Submodule:
    """Return ``s`` (re-ordered if asked) with its reduced Gröbner basis computed."""
    if order is not None and order != s.order:
        s = Submodule(s.ambient, s._gens, order)
    s.internal_basis()
    return s


def normal_form(v, s: Submodule):
    """Remainder of ``v`` on division by the Gröbner basis of ``s``.

    Returns a polynomial for rank-one modules, otherwise a tuple.
    """
    scalar = isinstance(v, Polynomial)
    r = to_public(s.reduce_internal(to_internal(v, s.ambient.rank)), s.ring, s.ambient.rank)
    return r[0] if scalar else r


def column_degrees(m: PolyMatrix, row_shifts) -> list:
    """Degree of each column as an element of the graded free module, or 0 for zero columns."""
    out = []
    for col in m.columns():
        degs = {d + row_shifts[i] for i, p in enumerate(col) for d in p.degrees()}
        out.append(min(degs) if degs else 0)
    return out


def preimage(ring: PolyRing, columns, denominators, target_shifts, source_shifts,
             order: MonomialOrder = GREVLEX) -> Submodule:
    """``{v in source : sum v_j columns[j] in <denominators>}`` with its Gröbner basis.

    Computed by eliminating the target block from the module generated by
    ``(columns[j], e_j)`` and ``(d, 0)``.
    """
    r, s = len(target_shifts), len(source_shifts)
    target_shifts = tuple(target_shifts)
    source_shifts = tuple(source_shifts)
    ranks = tuple(rk + s for rk in default_ranks(target_shifts)) + default_ranks(source_shifts)
    eng = _Engine(ring, target_shifts + source_shifts, order, ranks, (1,) * r + (0,) * s)
    gens = []
    for j, col in enumerate(columns):
        g = to_internal(col, r)
        g[(r + j, ring.zero_exp)] = 1
        gens.append(g)
    for d in denominators:
        g = to_internal(d, r)
        if g:
            gens.append(g)
    basis = _cached_groebner(eng, gens)
    kernel = [{(pos - r, e): c for (pos, e), c in g.items()} for g in basis if all(pos >= r for pos, _ in g)]
    return Submodule(FreeModule(ring, s, source_shifts), kernel, order, basis=kernel)


def syzygy(m: PolyMatrix, target_shifts=None, source_shifts=None, order: MonomialOrder = GREVLEX) -> PolyMatrix:
    """Matrix whose columns generate the kernel of ``m`` (as a map of free modules)."""
    target_shifts = tuple(target_shifts) if target_shifts is not None else (0,) * m.rows
    if source_shifts is None:
        source_shifts = column_degrees(m, target_shifts)
    k = preimage(m.ring, m.columns(), [], target_shifts, source_shifts, order)
    cols = k.basis
    return PolyMatrix.from_columns(m.ring, cols, m.cols) if cols else PolyMatrix(m.ring, [[] for _ in range(m.cols)], 0)


# --------------------------------------------------------------------------
# dimensions of subquotients
# --------------------------------------------------------------------------

def _minimalize_monomials(gens) -> tuple:
    out = []
    for g in sorted(set(gens), key=lambda e: (sum(e), e)):
        if not any(divides(h, g) for h in out):
            out.append(g)
    return tuple(out)


def _poly_add(a: list, b: list, sign: int = 1, shift: int = 0) -> list:
    n = max(len(a), len(b) + shift)
    out = list(a) + [0] * (n - len(a))
    for i, c in enumerate(b):
        out[i + shift] += sign * c
    return out


@lru_cache(maxsize=200_000)
def _kpoly(gens: tuple) -> tuple:
    """Numerator K(t) of the Hilbert series K(t)/(1-t)^n of S/(gens) (total degree)."""
    if not gens:
        return (1,)
    if any(sum(g) == 0 for g in gens):
        return ()
    supports = [frozenset(i for i, x in enumerate(g) if x) for g in gens]
    seen: set = set()
    coprime = True
    for s in supports:
        if seen & s:
            coprime = False
            break
        seen |= s
    if coprime:
        out = [1]
        for g in gens:
            out = _poly_add(out, out, -1, sum(g))
        return tuple(out)
    freq: dict = {}
    for g in gens:
        for i, x in enumerate(g):
            if x:
                freq[i] = freq.get(i, 0) + 1
    mixed = [g for g, s in zip(gens, supports) if len(s) >= 2]
    v = max((i for g in mixed for i, x in enumerate(g) if x), key=lambda i: (freq[i], -i))
    exps = sorted(g[v] for g in mixed if g[v])
    e = exps[len(exps) // 2]
    pivot = tuple(e if i == v else 0 for i in range(len(gens[0])))
    plus = _minimalize_monomials(gens + (pivot,))
    colon = _minimalize_monomials(tuple(g[:v] + (max(0, g[v] - e),) + g[v + 1:] for g in gens))
    return tuple(_poly_add(list(_kpoly(plus)), list(_kpoly(colon)), 1, e))


def _series_value(num: list, nvars: int):
    """Value at t=1 of num(t)/(1-t)^nvars, or INFINITE if that is not a polynomial."""
    q = list(num)
    for _ in range(nvars):
        while q and q[-1] == 0:
            q.pop()
        if not q:
            return 0
        if sum(q) != 0:
            return INFINITE
        acc, nxt = 0, []
        for c in q[:-1]:
            acc += c
            nxt.append(acc)
        q = nxt
    return sum(q)


def monomial_count_between(outer, inner, nvars: int):
    """Number of monomials in the ideal ``outer`` but not in ``inner`` (inner ⊆ outer)."""
    k_in = list(_kpoly(_minimalize_monomials(tuple(inner))))
    k_out = list(_kpoly(_minimalize_monomials(tuple(outer))))
    return _series_value(_poly_add(k_in, k_out, -1), nvars)


def _lead_ideals(s: Submodule) -> dict:
    out: dict = {}
    for pos, e in s.leading_terms():
        out.setdefault(pos, []).append(e)
    return out


def k_dimension(numerator: Submodule, denominator: Submodule):
    """Dimension over the coefficient field of ``numerator / denominator``.

    Counts the monomials of the numerator's leading-term module that are
    standard for the denominator. Returns ``INFINITE`` when that set is
    infinite.
    """
    if not numerator.ring.coeffs.is_field:
        raise InputError("COEFF_DOMAIN_NOT_FIELD", f"dimension over {numerator.ring.coeffs} is undefined")
    if numerator.ambient != denominator.ambient or numerator.order != denominator.order:
        raise InputError("AMBIENT_MISMATCH", "numerator and denominator need one ambient module and order")
    for g in denominator._gens:
        if numerator.reduce_internal(g):
            raise InputError("NOT_A_SUBQUOTIENT", "denominator is not contained in the numerator")
    n = numerator.ring.nvars
    num_lt = _lead_ideals(numerator)
    den_lt = _lead_ideals(denominator)
    total = 0
    for pos in range(numerator.ambient.rank):
        outer = num_lt.get(pos)
        if not outer:
            continue
        total += monomial_count_between(outer, den_lt.get(pos, []), n)
        if total == INFINITE:
            return INFINITE
    return total


def quotient_dimension(s: Submodule):
    """Dimension of ``ambient / s``."""
    amb = s.ambient
    full = Submodule(amb, [amb.basis_vector(i) for i in range(amb.rank)], s.order)
    return k_dimension(full, s)


def ideal(ring: PolyRing, gens, order: MonomialOrder = GREVLEX) -> Submodule:
    return Submodule(FreeModule(ring, 1), [ring(g) for g in gens], order)


def standard_monomials(s: Submodule) -> list:
    """All ``(position, exponent)`` outside the leading-term module; the quotient must be finite."""
    if quotient_dimension(s) == INFINITE:
        raise InputError("INFINITE_QUOTIENT", "quotient is not finite-dimensional")
    lead = _lead_ideals(s)
    n = s.ring.nvars
    out = []
    for pos in range(s.ambient.rank):
        lts = lead.get(pos, [])
        frontier = [(0,) * n]
        seen = set(frontier)
        while frontier:
            e = frontier.pop()
            if any(divides(l, e) for l in lts):
                continue
            out.append((pos, e))
            for i in range(n):
                nxt = e[:i] + (e[i] + 1,) + e[i + 1:]
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
    eng = s.engine
    out.sort(key=eng.key)
    return out
