"""Command-line frontend: ``theta-forge <command> spec.json [flags]``.

Input is one JSON document::

    {"field": "QQ" | {"GF": p} | "ZZ", "vars": [...], "weights": [...],
     "f": "...",
     "matrices": {"name": [[...]] | {"A": [[...]], "B": [[...]]}},
     "modules": {"name": {"relations": [[...]], "shifts": [...]}},
     "pairs": [["M", "N"]], "window": 6, "fibers": ["Q", 3], "steps": 2,
     "elements": [["x", "y"]], "matrix": [[...]], "self_pair": true}

A bare grid in ``matrices`` is completed to a factorization with
``B = f * adj(A) / det(A)``. Entries of ``modules`` are stabilized to a
factorization first, and signs are corrected by the parity of the steps.
Reports go to stdout as sorted-key JSON; exit codes are 0 (ok), 2 (bad
input), 3 (failed hypothesis) and 4 (contradiction).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import ContradictionError, HypothesisError, InputError, ParseError, ThetaForgeError
from .exact_algebra import PolyMatrix, PolyRing, format_poly, parse_domain, parse_poly
from .family import FamilySpec, lift_and_compare, parse_fiber, theta_constancy, validate_family
from .groebner import INFINITE
from .matrix_factorization import PresentedModule, cokernel, mf_from_matrix, stabilize, validate_mf
from .milnor import gram_rank, hessian, milnor_mu, residue_pair
from .stable_homology import ext_dims, tor_dims
from .theta_pairing import rigidity_scan

COMMANDS = ("theta", "herbrand", "tor", "ext", "rigidity", "milnor", "residue",
            "family-check", "theta-family", "lift")
DEFAULT_WINDOW = 6


def _jsonable(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float) and x == INFINITE:
        return "INFINITE"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2)


class Job:
    """A parsed spec file; polynomials are parsed lazily with JSON-path sources."""

    def __init__(self, data: dict, path: str = "<spec>", raw: str = ""):
        if not isinstance(data, dict):
            raise InputError("SPEC_MALFORMED", "the spec must be a JSON object", file=path)
        self.data = data
        self.path = path
        self.raw = raw
        if "vars" not in data:
            raise InputError("SPEC_MALFORMED", "missing field 'vars'", file=path)
        try:
            dom = parse_domain(data.get("field", "QQ"))
            self.ring = PolyRing(dom, tuple(data["vars"]), data.get("weights"))
        except ValueError as exc:
            raise InputError("SPEC_MALFORMED", str(exc), file=path) from None
        self._mfs: dict = {}

    def poly(self, text, where: str):
        if isinstance(text, int):
            return self.ring.constant(text)
        if not isinstance(text, str):
            raise InputError("SPEC_MALFORMED", f"{where} must be a string", file=self.path)
        try:
            return parse_poly(text, self.ring, source=f"{self.path}:{where}")
        except ParseError as exc:
            # best effort: the line of the spec file holding the offending string
            at = self.raw.find(json.dumps(text))
            if at >= 0:
                exc.details["file_line"] = self.raw.count("\n", 0, at) + 1
            raise

    @property
    def f(self):
        if "f" not in self.data:
            raise InputError("SPEC_MALFORMED", "missing field 'f'", file=self.path)
        return self.poly(self.data["f"], "f")

    def grid(self, rows, where: str) -> PolyMatrix:
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise InputError("SPEC_MALFORMED", f"{where} must be a list of rows", file=self.path)
        cols = len(rows[0]) if rows else 0
        return PolyMatrix(self.ring, [[self.poly(e, f"{where}[{i}][{j}]") for j, e in enumerate(r)]
                                      for i, r in enumerate(rows)], cols)

    def steps(self, override) -> int:
        return int(override if override is not None else self.data.get("steps", 2))

    def mf(self, name: str, steps=None):
        """``(factorization, parity)`` for a named matrix or module."""
        if name in self._mfs:
            return self._mfs[name]
        mats = self.data.get("matrices", {})
        mods = self.data.get("modules", {})
        f = self.f
        if name in mats:
            entry = mats[name]
            where = f"matrices.{name}"
            if isinstance(entry, dict):
                out = validate_mf(self.grid(entry["A"], where + ".A"), self.grid(entry["B"], where + ".B"), f), 0
            else:
                out = mf_from_matrix(self.grid(entry, where), f), 0
        elif name in mods:
            entry = mods[name]
            where = f"modules.{name}"
            rels = self.grid(entry["relations"], where + ".relations")
            shifts = entry.get("shifts", [0] * rels.rows)
            out = stabilize(PresentedModule(self.ring, f, shifts, rels), self.steps(steps))
        else:
            raise InputError("UNKNOWN_NAME", f"no matrix or module named {name!r}", file=self.path)
        self._mfs[name] = out
        return out

    def pairs(self, flag) -> list:
        if flag:
            parts = flag.split(",")
            if len(parts) != 2:
                raise InputError("BAD_FLAG", "--pair expects NAME,NAME")
            return [tuple(parts)]
        pairs = self.data.get("pairs")
        if pairs:
            return [tuple(p) for p in pairs]
        names = list(self.data.get("matrices", {})) + list(self.data.get("modules", {}))
        if not names:
            raise InputError("SPEC_MALFORMED", "no pairs and no named matrices or modules", file=self.path)
        return [(names[0], names[1] if len(names) > 1 else names[0])]

    def window(self, flag) -> int:
        w = int(flag if flag is not None else self.data.get("window", DEFAULT_WINDOW))
        if w < 2:
            raise InputError("BAD_WINDOW", "window must be at least 2")
        return w

    def fibers(self, flag) -> list:
        raw = flag.split(",") if flag else self.data.get("fibers", ["Q"])
        return [parse_fiber(x) for x in raw]


def _single_or_list(results: list) -> dict:
    return results[0] if len(results) == 1 else {"results": results}


def _pairing(job: Job, args, kind: str) -> dict:
    results = []
    w = job.window(args.window)
    for a, b in job.pairs(args.pair):
        mf_a, pa = job.mf(a, args.steps)
        mf_b, pb = job.mf(b, args.steps)
        fn = tor_dims if kind in ("theta", "tor") else ext_dims
        prof = fn(mf_a, cokernel(mf_b), w)
        flip = (pa + pb) % 2
        even, odd = (prof[1], prof[2]) if flip else (prof[2], prof[1])
        rec = {"pair": [a, b], "field": str(job.ring.coeffs), "window": w, "parity": flip}
        if kind in ("theta", "herbrand"):
            rec.update({kind if kind == "theta" else "h": even - odd, "even": even, "odd": odd,
                        "dims": list(prof.dims)})
        else:
            rec["dims"] = list(prof.dims)
        results.append(rec)
    return _single_or_list(results)


def cmd_theta(job, args):
    return _pairing(job, args, "theta")


def cmd_herbrand(job, args):
    return _pairing(job, args, "herbrand")


def cmd_tor(job, args):
    return _pairing(job, args, "tor")


def cmd_ext(job, args):
    return _pairing(job, args, "ext")


def cmd_rigidity(job, args):
    results = []
    w = job.window(args.window)
    for a, b in job.pairs(args.pair):
        rep = rigidity_scan(job.mf(a, args.steps)[0], job.mf(b, args.steps)[0], w)
        if rep.status == "VIOLATION":
            raise ContradictionError("VIOLATION", f"pair {a},{b} has theta 0 but is not Tor-rigid",
                                     dims=list(rep.dims))
        results.append({"pair": [a, b], **rep.to_dict()})
    return _single_or_list(results)


def cmd_milnor(job, args):
    alg = milnor_mu(job.f)
    return {
        "f": format_poly(alg.f),
        "mu": alg.mu,
        "basis": [format_poly(b) for b in alg.basis],
        "socle": format_poly(alg.socle_generator),
        "socle_degree": alg.socle_degree,
        "hessian": format_poly(hessian(alg.f)),
        "residue_of_socle": alg.residue_of_socle,
        "residue_of_hessian": alg.residue(hessian(alg.f)),
        "gram_rank": gram_rank(alg),
    }


def cmd_residue(job, args):
    alg = milnor_mu(job.f)
    elems = job.data.get("elements")
    if args.pair:
        elems = [args.pair.split(",")]
    if not elems:
        raise InputError("SPEC_MALFORMED", "residue needs 'elements' or --pair g,h", file=job.path)
    out = []
    for k, pair in enumerate(elems):
        if len(pair) != 2:
            raise InputError("SPEC_MALFORMED", f"elements[{k}] must have two entries", file=job.path)
        g = job.poly(pair[0], f"elements[{k}][0]")
        h = job.poly(pair[1], f"elements[{k}][1]")
        out.append({"g": format_poly(g), "h": format_poly(h), "value": residue_pair(g, h, alg)})
    return {"mu": alg.mu, "residue_of_socle": alg.residue_of_socle, "pairs": out}


def _family(job: Job, args) -> FamilySpec:
    if job.ring.coeffs.kind != "ZZ":
        raise InputError("SPEC_MALFORMED", "family commands need \"field\": \"ZZ\"", file=job.path)
    f = job.f
    mats = {}
    for name, entry in job.data.get("matrices", {}).items():
        where = f"matrices.{name}"
        if isinstance(entry, dict):
            mats[name] = (job.grid(entry["A"], where + ".A"), job.grid(entry["B"], where + ".B"))
        else:
            mf = mf_from_matrix(job.grid(entry, where), f)
            mats[name] = (mf.A, mf.B)
    return FamilySpec.from_matrices(job.ring, f, mats, job.fibers(args.fibers))


def _strict_check(reports, strict: bool):
    bad = [r.fiber for r in reports if not r.valid]
    if strict and bad:
        raise HypothesisError("INVALID_FIBER", f"fibers without an isolated singularity: {', '.join(bad)}",
                              fibers=bad)


def cmd_family_check(job, args):
    reports = validate_family(_family(job, args))
    _strict_check(reports, args.strict)
    return {"fibers": [r.to_dict() for r in reports]}


def cmd_theta_family(job, args):
    spec = _family(job, args)
    results = []
    for pair in job.pairs(args.pair):
        rep = theta_constancy(spec, pair, strict=True)
        _strict_check(rep.fibers, args.strict)
        results.append(rep.to_dict())
    return _single_or_list(results)


def cmd_lift(job, args):
    grid = job.data.get("matrix")
    if grid is None:
        mats = job.data.get("matrices", {})
        if not mats:
            raise InputError("SPEC_MALFORMED", "lift needs 'matrix'", file=job.path)
        grid = next(iter(mats.values()))
        if isinstance(grid, dict):
            grid = grid["A"]
    A = job.grid(grid, "matrix")
    extra = args.fibers.split(",") if args.fibers else ()
    rep = lift_and_compare(A, bool(job.data.get("self_pair", True)), extra)
    return rep.to_dict()


HANDLERS = {
    "theta": cmd_theta, "herbrand": cmd_herbrand, "tor": cmd_tor, "ext": cmd_ext,
    "rigidity": cmd_rigidity, "milnor": cmd_milnor, "residue": cmd_residue,
    "family-check": cmd_family_check, "theta-family": cmd_theta_family, "lift": cmd_lift,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="theta-forge", description="Theta pairings of hypersurface matrix factorizations.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("spec", help="path to a JSON spec file")
    p.add_argument("--pair", help="NAME,NAME (or g,h for residue)")
    p.add_argument("--window", type=int, help=f"homological window (default {DEFAULT_WINDOW})")
    p.add_argument("--fibers", help="comma-separated fibers, e.g. Q,3,7")
    p.add_argument("--steps", type=int, help="syzygy steps used to stabilize modules (default 2)")
    p.add_argument("--strict", action="store_true", help="treat invalid fibers as errors")
    return p


def load_job(path: str) -> Job:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError("FILE_NOT_FOUND", str(exc), file=path) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("INVALID_JSON", exc.msg, exc.lineno, exc.colno, path) from None
    return Job(data, path, text)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        job = load_job(args.spec)
        report = HANDLERS[args.command](job, args)
        code = 0
    except ThetaForgeError as exc:
        report, code = exc.to_json(), exc.exit_code
        print(f"{args.spec}: {exc}", file=sys.stderr)
    except (KeyError, TypeError, ValueError) as exc:
        report, code = {"error": "SPEC_MALFORMED", "message": str(exc)}, 2
        print(f"{args.spec}: {exc}", file=sys.stderr)
    out.write(dumps(report) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
