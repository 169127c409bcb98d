"""Dense matrices of polynomials, determinants and adjugates."""

from __future__ import annotations

from itertools import permutations

from ..errors import InputError
from .domain import CoeffDomain
from .polynomial import Polynomial, PolyRing, exact_divide, format_poly


class PolyMatrix:
    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: PolyRing, entries, cols: int | None = None):
        grid = tuple(tuple(ring(e) for e in row) for row in entries)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        if any(len(r) != cols for r in grid):
            raise InputError("RAGGED_MATRIX", "matrix rows have different lengths")
        self.ring = ring
        self.rows = len(grid)
        self.cols = cols
        self.entries = grid

    @classmethod
    def zeros(cls, ring: PolyRing, rows: int, cols: int) -> "PolyMatrix":
        z = ring.zero()
        return cls(ring, [[z] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, ring: PolyRing, n: int, scalar=1) -> "PolyMatrix":
        s = ring(scalar)
        z = ring.zero()
        return cls(ring, [[s if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, ring: PolyRing, columns, rows: int) -> "PolyMatrix":
        columns = list(columns)
        return cls(ring, [[columns[j][i] for j in range(len(columns))] for i in range(rows)], len(columns))

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [self.column(j) for j in range(self.cols)], self.rows)

    def map(self, fn, ring: PolyRing | None = None) -> "PolyMatrix":
        ring = ring or self.ring
        return PolyMatrix(ring, [[fn(e) for e in row] for row in self.entries], self.cols)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise InputError("SHAPE_MISMATCH", f"cannot multiply {self.shape} by {other.shape}")
        z = self.ring.zero()
        out = []
        for row in self.entries:
            new = []
            for j in range(other.cols):
                acc = z
                for k, a in enumerate(row):
                    if a and other.entries[k][j]:
                        acc = acc + a * other.entries[k][j]
                new.append(acc)
            out.append(new)
        return PolyMatrix(self.ring, out, other.cols)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise InputError("SHAPE_MISMATCH", f"cannot add {self.shape} and {other.shape}")
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "PolyMatrix":
        c = self.ring(c)
        return self.map(lambda e: e * c)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.ring, self.shape, self.entries))

    def to_lists(self) -> list:
        return [[format_poly(e) for e in row] for row in self.entries]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(r) + "]" for r in self.to_lists()) + "]"

    __repr__ = __str__


def block_diag(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    z = a.ring.zero()
    rows = [list(r) + [z] * b.cols for r in a.entries]
    rows += [[z] * a.cols + list(r) for r in b.entries]
    return PolyMatrix(a.ring, rows, a.cols + b.cols)


def hstack(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.rows != b.rows:
        raise InputError("SHAPE_MISMATCH", "hstack needs equal row counts")
    return PolyMatrix(a.ring, [list(r) + list(s) for r, s in zip(a.entries, b.entries)], a.cols + b.cols)


def specialize_matrix(m: PolyMatrix, target: CoeffDomain) -> PolyMatrix:
    ring = m.ring.with_coeffs(target)
    return m.map(lambda e: Polynomial(ring, e.terms), ring)


def _minor(rows: list, i: int, j: int) -> list:
    return [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]


def _det_laplace(rows: list, ring: PolyRing) -> Polynomial:
    n = len(rows)
    if n == 0:
        return ring.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = ring.zero()
    for j, a in enumerate(rows[0]):
        if a:
            term = a * _det_laplace(_minor(rows, 0, j), ring)
            acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _det_bareiss(rows: list, ring: PolyRing) -> Polynomial:
    # fraction-free elimination; every division below is exact
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return ring.zero()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_divide(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def _det(rows: list, ring: PolyRing) -> Polynomial:
    return _det_laplace(rows, ring) if len(rows) <= 4 else _det_bareiss(rows, ring)


def determinant(m: PolyMatrix) -> Polynomial:
    if not m.is_square():
        raise InputError("NOT_SQUARE", f"determinant of a {m.rows}x{m.cols} matrix")
    return _det([list(r) for r in m.entries], m.ring)


def adjugate_det(m: PolyMatrix) -> tuple:
    """Return ``(adj(m), det(m))``, checked by ``m @ adj == adj @ m == det * I``."""
    if not m.is_square():
        raise InputError("NOT_SQUARE", f"adjugate of a {m.rows}x{m.cols} matrix")
    n = m.rows
    rows = [list(r) for r in m.entries]
    det = _det(rows, m.ring)
    if n == 1:
        adj = PolyMatrix(m.ring, [[m.ring.one()]], 1)
    else:
        cof = [[_det(_minor(rows, j, i), m.ring) for j in range(n)] for i in range(n)]
        adj = PolyMatrix(m.ring, [[c if (i + j) % 2 == 0 else -c for j, c in enumerate(r)] for i, r in enumerate(cof)], n)
    target = PolyMatrix.identity(m.ring, n, det)
    if m @ adj != target or adj @ m != target:
        raise ArithmeticError("adjugate identity failed")  # unreachable for exact arithmetic
    return adj, det


def det_by_permutations(m: PolyMatrix) -> Polynomial:
    """Leibniz-formula determinant, kept as an independent cross-check."""
    n = m.rows
    acc = m.ring.zero()
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = m.ring.one()
        for i, j in enumerate(perm):
            term = term * m.entries[i][j]
            if not term:
                break
        acc = acc - term if inv % 2 else acc + term
    return acc
