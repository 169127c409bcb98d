"""The theta pairing, the Herbrand difference and a Tor-rigidity scan."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContradictionError, InputError
from .matrix_factorization import MatrixFactorization, cokernel
from .stable_homology import TorProfile, ext_dims, tor_dims


@dataclass(frozen=True)
class ThetaReport:
    """``value = even_dim - odd_dim`` read off degrees 2 and 1 of ``profile``."""

    value: int
    even_dim: int
    odd_dim: int
    profile: TorProfile
    labels: tuple = ("M", "N")

    @property
    def window(self) -> int:
        return self.profile.window

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "even": self.even_dim,
            "odd": self.odd_dim,
            "dims": list(self.profile.dims),
            "window": self.window,
            "pair": list(self.labels),
        }


def _report(profile: TorProfile, labels) -> ThetaReport:
    even, odd = profile[2], profile[1]
    return ThetaReport(even - odd, even, odd, profile, tuple(labels))


def theta(mf_m: MatrixFactorization, mf_n: MatrixFactorization, window: int = 2,
          labels=("M", "N")) -> ThetaReport:
    """``dim Tor_2 - dim Tor_1`` of ``(coker A_M, coker A_N)`` over ``S/f``."""
    return _report(tor_dims(mf_m, cokernel(mf_n), window), labels)


def herbrand(mf_m: MatrixFactorization, mf_n: MatrixFactorization, window: int = 2,
             labels=("M", "N")) -> ThetaReport:
    """``dim Ext^2 - dim Ext^1`` of ``(coker A_M, coker A_N)`` over ``S/f``."""
    return _report(ext_dims(mf_m, cokernel(mf_n), window), labels)


@dataclass(frozen=True)
class RigidityReport:
    status: str  # CONSISTENT, VIOLATION or NOT_APPLICABLE
    theta: int
    first_vanishing: int | None
    dims: tuple

    def to_dict(self) -> dict:
        return {"status": self.status, "theta": self.theta,
                "first_vanishing": self.first_vanishing, "dims": list(self.dims)}


def rigidity_scan(mf_m: MatrixFactorization, mf_n: MatrixFactorization, window: int = 8,
                  raise_on_violation: bool = False) -> RigidityReport:
    """When theta vanishes, check that Tor stays zero after its first zero.

    A pair with theta 0 must be Tor-rigid, so a nonzero Tor after a zero one
    is reported as ``VIOLATION``.
    """
    if window < 4:
        raise InputError("BAD_WINDOW", "rigidity_scan needs a window of at least 4")
    prof = tor_dims(mf_m, cokernel(mf_n), window)
    value = prof[2] - prof[1]
    if value != 0:
        return RigidityReport("NOT_APPLICABLE", value, None, prof.dims)
    first = next((i for i in range(1, window + 1) if prof[i] == 0), None)
    status = "CONSISTENT"
    if first is not None and any(prof[i] for i in range(first, window + 1)):
        status = "VIOLATION"
        if raise_on_violation:
            raise ContradictionError("VIOLATION", f"theta = 0 but Tor is nonzero after degree {first}", dims=list(prof.dims))
    return RigidityReport(status, value, first, prof.dims)
