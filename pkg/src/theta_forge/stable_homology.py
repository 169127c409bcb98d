"""Tor and Ext over R = S/f for modules presented by matrix factorizations.

If ``M = coker(A)`` for a factorization ``(A, B)`` of ``f``, then

    ... -> R^m --B--> R^m --A--> R^m --B--> R^m --A--> R^m -> M -> 0

is a free resolution over R. Tensoring with (or mapping into) a presented
module ``N`` gives 2-periodic complexes of subquotients of ``S^(m*a)``; their
homology dimensions are counted with ``k_dimension``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HypothesisError, InputError
from .exact_algebra import PolyMatrix
from .groebner import INFINITE, Submodule, k_dimension, preimage
from .matrix_factorization import MatrixFactorization, PresentedModule, resolve


@dataclass(frozen=True)
class TorProfile:
    """``dims[k]`` is the dimension in homological degree ``k + 1``."""

    dims: tuple
    kind: str = "tor"
    coeffs: str = ""
    labels: tuple = ("M", "N")

    def __getitem__(self, i: int) -> int:
        if i < 1 or i > len(self.dims):
            raise IndexError(f"degree {i} outside window 1..{len(self.dims)}")
        return self.dims[i - 1]

    @property
    def window(self) -> int:
        return len(self.dims)

    def is_periodic(self) -> bool:
        return all(self.dims[k] == self.dims[k + 2] for k in range(len(self.dims) - 2))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "dims": list(self.dims), "field": self.coeffs, "labels": list(self.labels)}


def _check_pair(mf: MatrixFactorization, N: PresentedModule, window: int) -> None:
    if mf.ring != N.ring or mf.f != N.f:
        raise InputError("F_MISMATCH", "M and N must live over the same ring and f")
    if not mf.ring.coeffs.is_field:
        raise InputError("COEFF_DOMAIN_NOT_FIELD", f"dimensions over {mf.ring.coeffs} are undefined")
    if window < 2:
        raise InputError("BAD_WINDOW", "window must be at least 2")


def _kron_columns(mat: PolyMatrix, a: int) -> list:
    """Columns of ``mat ⊗ I_a``; block ``k`` of a vector holds copy ``k`` of N."""
    z = mat.ring.zero()
    cols = []
    for j in range(mat.cols):
        for t in range(a):
            v = [z] * (mat.rows * a)
            for i in range(mat.rows):
                v[i * a + t] = mat[i, j]
            cols.append(tuple(v))
    return cols


def _relations_of_copies(N: PresentedModule, m: int) -> list:
    """Generators of the relations of ``N^m`` inside ``S^(m*a)``."""
    a = N.rank
    z = N.ring.zero()
    out = []
    for k in range(m):
        for d in N.denominators():
            v = [z] * (m * a)
            v[k * a:(k + 1) * a] = d
            out.append(tuple(v))
    return out


def _spread(shifts, nshifts) -> tuple:
    return tuple(s + n for s in shifts for n in nshifts)


def _homology(N: PresentedModule, outgoing: PolyMatrix, incoming: PolyMatrix,
              mid: tuple, tgt: tuple):
    """``dim ker(outgoing ⊗ N) / im(incoming ⊗ N)`` on ``N^m``."""
    ring, a = N.ring, N.rank
    rel_tgt = _relations_of_copies(N, outgoing.rows)
    rel_mid = _relations_of_copies(N, outgoing.cols)
    kernel = preimage(ring, _kron_columns(outgoing, a), rel_tgt, _spread(tgt, N.shifts), _spread(mid, N.shifts))
    image = Submodule(kernel.ambient, rel_mid + _kron_columns(incoming, a))
    return k_dimension(kernel, image)


def _profile(values, kind, mf, code, window) -> TorProfile:
    dims = []
    for i in range(1, window + 1):
        d = values[i % 2]
        if d == INFINITE:
            raise HypothesisError(code, f"{kind} in degree {i} is infinite-dimensional; the singularity is not isolated or the input is bad", degree=i)
        dims.append(int(d))
    return TorProfile(tuple(dims), kind, str(mf.ring.coeffs))


def tor_dims(mf: MatrixFactorization, N: PresentedModule, window: int = 6) -> TorProfile:
    """Dimensions of ``Tor_i^R(coker A, N)`` for ``i = 1..window``."""
    _check_pair(mf, N, window)
    A, B = mf.A, mf.B
    e, d = mf.source_twists, mf.target_twists
    df = mf.degree
    lifted = tuple(x + df for x in d)
    odd = _homology(N, A, B, e, d)  # F_2 -B-> F_1 -A-> F_0
    even = _homology(N, B, A, lifted, e)  # F_3 -A-> F_2 -B-> F_1
    return _profile({1: odd, 0: even}, "tor", mf, "NONFINITE_TOR", window)


def ext_dims(mf: MatrixFactorization, N: PresentedModule, window: int = 6) -> TorProfile:
    """Dimensions of ``Ext^i_R(coker A, N)`` for ``i = 1..window``."""
    _check_pair(mf, N, window)
    At, Bt = mf.A.transpose(), mf.B.transpose()
    e, d = mf.source_twists, mf.target_twists
    df = mf.degree
    # Hom(S(-s), N) = N(s), so twists flip sign
    neg_e = tuple(-x for x in e)
    neg_d2 = tuple(-x - df for x in d)
    neg_e3 = tuple(-x - df for x in e)
    odd = _homology(N, Bt, At, neg_e, neg_d2)  # Hom(F_0) -At-> Hom(F_1) -Bt-> Hom(F_2)
    even = _homology(N, At, Bt, neg_d2, neg_e3)  # Hom(F_1) -Bt-> Hom(F_2) -At-> Hom(F_3)
    return _profile({1: odd, 0: even}, "ext", mf, "NONFINITE_EXT", window)


def tor_dims_resolved(M: PresentedModule, N: PresentedModule, window: int = 6) -> TorProfile:
    """Tor dimensions from an explicitly computed minimal R-resolution of ``M``.

    Slower than ``tor_dims`` and independent of any factorization; it is the
    cross-check for periodicity.
    """
    if M.ring != N.ring or M.f != N.f:
        raise InputError("F_MISMATCH", "M and N must live over the same ring and f")
    res = resolve(M, window + 1)
    dims = []
    for i in range(1, window + 1):
        out, inc = res.maps[i - 1], res.maps[i]
        if out.cols == 0:
            dims.append(0)
            continue
        val = _homology(N, out, inc, res.shifts[i], res.shifts[i - 1])
        if val == INFINITE:
            raise HypothesisError("NONFINITE_TOR", f"Tor in degree {i} is infinite-dimensional", degree=i)
        dims.append(int(val))
    return TorProfile(tuple(dims), "tor", str(M.ring.coeffs))


def chi_higher(mf: MatrixFactorization, N: PresentedModule, n: int = 1) -> int:
    """Higher Euler characteristic of ``(coker A, N)`` over the polynomial ring ``S``.

    Over ``S`` the module ``coker A`` has the resolution ``0 -> S^m -A-> S^m``,
    so only ``Tor_1^S = ker(A ⊗ N)`` can contribute, and only when ``n == 1``.
    ``N`` is viewed as the S-module with its given relations and ``f``.
    """
    if n < 1:
        raise InputError("BAD_INDEX", "n must be at least 1")
    if mf.ring != N.ring:
        raise InputError("RING_MISMATCH", "M and N must share a ring")
    if n >= 2:
        return 0
    ring, a = N.ring, N.rank
    A = mf.A
    rel_tgt = _relations_of_copies(N, A.rows)
    rel_mid = _relations_of_copies(N, A.cols)
    kernel = preimage(ring, _kron_columns(A, a), rel_tgt,
                      _spread(mf.target_twists, N.shifts), _spread(mf.source_twists, N.shifts))
    dim = k_dimension(kernel, Submodule(kernel.ambient, rel_mid))
    if dim == INFINITE:
        raise HypothesisError("INFINITE_LENGTH", "Tor_1 over S has infinite length")
    return int(dim)


__all__ = ["TorProfile", "tor_dims", "ext_dims", "tor_dims_resolved", "chi_higher"]
