"""Integer families of hypersurfaces and theta across their fibers.

A family is a primitive homogeneous ``f`` over ZZ together with matrix
factorizations over ZZ. Each fiber is QQ or a prime field; a fiber is valid
when ``f`` keeps an isolated singularity there (finite Tjurina number).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ContradictionError, HypothesisError, InputError
from .exact_algebra import QQ, ZZ, CoeffDomain, PolyMatrix, Polynomial, PolyRing, parse_domain, specialize, specialize_matrix
from .groebner import INFINITE
from .matrix_factorization import MatrixFactorization, lift_adjugate, validate_mf
from .milnor import tjurina_check
from .theta_pairing import theta


def parse_fiber(text) -> CoeffDomain:
    try:
        dom = parse_domain(text)
    except ValueError as exc:
        raise InputError("BAD_FIBER", str(exc)) from None
    if dom == ZZ:
        raise InputError("BAD_FIBER", "fibers must be QQ or a prime field")
    return dom


@dataclass(frozen=True)
class FamilySpec:
    ring: PolyRing
    f: Polynomial
    mfs: dict
    fibers: tuple

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple(parse_fiber(x) for x in self.fibers))
        object.__setattr__(self, "mfs", dict(self.mfs))
        if self.ring.coeffs != ZZ or self.f.ring != self.ring:
            raise InputError("SPEC_MALFORMED", "a family needs f over ZZ")
        if not self.fibers:
            raise InputError("SPEC_MALFORMED", "a family needs at least one fiber")
        if self.f.is_zero() or self.f.is_constant() or not self.f.is_homogeneous():
            raise InputError("SPEC_MALFORMED", f"f = {self.f} must be homogeneous and non-constant")
        if self.f.content() != 1:
            raise InputError("SPEC_MALFORMED", f"f = {self.f} must be primitive (content {self.f.content()})")
        for name, mf in self.mfs.items():
            if not isinstance(mf, MatrixFactorization) or mf.ring != self.ring or mf.f != self.f:
                raise InputError("SPEC_MALFORMED", f"matrix factorization {name!r} is not over ZZ for this f")

    @classmethod
    def from_matrices(cls, ring: PolyRing, f: Polynomial, matrices: dict, fibers) -> "FamilySpec":
        """Build from ``{name: (A, B)}``; every pair is validated over ZZ."""
        mfs = {}
        for name, (A, B) in matrices.items():
            try:
                mfs[name] = validate_mf(A, B, f)
            except InputError as exc:
                raise InputError("SPEC_MALFORMED", f"{name}: {exc.message}", cause=exc.code) from None
        return cls(ring, f, mfs, tuple(fibers))


@dataclass
class FiberReport:
    fiber: str
    valid: bool
    tjurina: object
    theta: dict = field(default_factory=dict)
    skipped: str | None = None

    def to_dict(self) -> dict:
        tj = "INFINITE" if self.tjurina == INFINITE else self.tjurina
        out = {"fiber": self.fiber, "valid": self.valid, "tjurina": tj, "skipped": self.skipped}
        if self.theta:
            out["theta"] = {"/".join(k): v.to_dict() for k, v in self.theta.items()}
        return out


def specialize_mf(mf: MatrixFactorization, dom: CoeffDomain) -> MatrixFactorization:
    return validate_mf(specialize_matrix(mf.A, dom), specialize_matrix(mf.B, dom), specialize(mf.f, dom))


def _validate_fiber(spec: FamilySpec, dom: CoeffDomain) -> tuple:
    tj = tjurina_check(specialize(spec.f, dom))
    report = FiberReport(str(dom), tj != INFINITE, tj)
    if not report.valid:
        report.skipped = "f has a non-isolated singularity on this fiber"
        return report, {}
    mfs = {}
    for name, mf in spec.mfs.items():
        try:
            mfs[name] = specialize_mf(mf, dom)
        except InputError as exc:
            report.valid = False
            report.skipped = f"{name} is not a matrix factorization here: {exc.message}"
            return report, {}
    return report, mfs


def validate_family(spec: FamilySpec) -> list:
    return [_validate_fiber(spec, dom)[0] for dom in spec.fibers]


@dataclass
class ConstancyReport:
    pair: tuple
    status: str  # CONSTANT or NONCONSTANT
    value: int | None
    fibers: list

    @property
    def values(self) -> dict:
        return {r.fiber: r.theta[self.pair].value for r in self.fibers if r.valid}

    @property
    def skipped(self) -> list:
        return [r.fiber for r in self.fibers if not r.valid]

    def to_dict(self) -> dict:
        return {"pair": list(self.pair), "status": self.status, "theta": self.value,
                "values": self.values, "skipped": self.skipped,
                "fibers": [r.to_dict() for r in self.fibers]}


def theta_constancy(spec: FamilySpec, pair: tuple, window: int = 2, strict: bool = True) -> ConstancyReport:
    """Theta of ``pair`` on every valid fiber, compared across fibers.

    A disagreement contradicts fiber-independence of theta; with ``strict`` it
    raises ``ContradictionError``.
    """
    pair = tuple(pair)
    for name in pair:
        if name not in spec.mfs:
            raise InputError("UNKNOWN_NAME", f"no matrix factorization named {name!r}")
    reports = []
    for dom in spec.fibers:
        rep, mfs = _validate_fiber(spec, dom)
        if rep.valid:
            rep.theta[pair] = theta(mfs[pair[0]], mfs[pair[1]], window, labels=pair)
        reports.append(rep)
    values = {r.theta[pair].value for r in reports if r.valid}
    if not values:
        raise HypothesisError("NO_VALID_FIBER", "every fiber has a non-isolated singularity")
    status = "CONSTANT" if len(values) == 1 else "NONCONSTANT"
    out = ConstancyReport(pair, status, values.pop() if status == "CONSTANT" else None, reports)
    if status == "NONCONSTANT" and strict:
        raise ContradictionError("NONCONSTANT", "theta differs between valid fibers", values=out.values)
    return out


@dataclass
class LiftReport:
    theta: int | None
    equal_across_fibers: bool
    sign_ok: bool | None
    n: int
    f: Polynomial
    A: PolyMatrix
    B: PolyMatrix
    constancy: ConstancyReport

    def to_dict(self) -> dict:
        return {"theta": self.theta, "equal_across_fibers": self.equal_across_fibers,
                "sign_ok": self.sign_ok, "n": self.n, "f": str(self.f),
                "A": self.A.to_lists(), "B": self.B.to_lists(),
                "fibers": self.constancy.to_dict()["fibers"]}


def predicted_sign_ok(value: int, n: int) -> bool | None:
    """Sign prediction for theta(M, M): <= 0 when n = 1 mod 4, >= 0 when n = 3 mod 4."""
    if n % 4 == 1:
        return value <= 0
    if n % 4 == 3:
        return value >= 0
    return None


def lift_and_compare(A: PolyMatrix, self_pair: bool = True, extra_fibers=()) -> LiftReport:
    """Lift ``A`` over GF(p) to ZZ, complete with the adjugate and compare fibers.

    ``n`` is the number of variables minus one. With ``self_pair`` false the
    pair is ``(coker A, coker adj A)`` and no sign is predicted.
    """
    lifted, adj, det = lift_adjugate(A)
    if det.content() != 1:
        raise InputError("SPEC_MALFORMED", f"the lifted determinant {det} is not primitive")
    zring = lifted.ring
    fibers = (QQ, A.ring.coeffs) + tuple(parse_fiber(x) for x in extra_fibers)
    spec = FamilySpec.from_matrices(zring, det, {"M": (lifted, adj), "N": (adj, lifted)}, fibers)
    pair = ("M", "M") if self_pair else ("M", "N")
    rep = theta_constancy(spec, pair, strict=False)
    n = zring.nvars - 1
    equal = rep.status == "CONSTANT"
    value = rep.value
    sign = predicted_sign_ok(value, n) if (self_pair and equal) else None
    if self_pair and not equal:
        sign = False
    return LiftReport(value, equal, sign, n, det, lifted, adj, rep)

