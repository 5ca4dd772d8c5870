"""Command-line front end.

Exit codes: 0 success, 1 mathematical validation failure, 2 input or schema error.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Optional

from . import __version__
from .exactlin import CoefficientRing, MatrixTooLarge
from .homology import chain_complex, les, relative_complex, transfer_kernel
from .nualg import (NotSUnital, check_adjunction_triangles, find_local_unit, is_idempotent,
                    path_algebra, unitalize)
from .scat import ScatError, full_subcategory, validate_enriched_category, validate_simplicial_set
from .selftest import run_suite
from .serialize import SchemaError, algebra_from_json, category_from_json, dumps, read_json

EXIT_OK, EXIT_INVALID, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _ring(text: str) -> CoefficientRing:
    try:
        return CoefficientRing.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _degrees(text: Optional[str], top: int) -> list:
    if text is None:
        return list(range(top))
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise InputError(f"degrees must look like a..b, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise InputError(f"empty or negative degree range {text!r}")
    if hi > top - 1:
        raise InputError(f"degree {hi} exceeds D-1 = {top - 1}")
    return list(range(lo, hi + 1))


def _load(args):
    if not args.input:
        raise InputError("--input is required")
    try:
        return category_from_json(read_json(args.input), args.dim)
    except ScatError as exc:
        raise InputError(str(exc)) from None


def _header(command: str, ring: CoefficientRing, C=None) -> dict:
    out = {"tool": {"name": "dihom", "version": __version__}, "command": command, "ring": ring.name}
    if C is not None:
        out["category"] = C.name
        out["truncation"] = C.dim
    return out


def cmd_validate(args) -> tuple:
    C = _load(args)
    hom_reports = {f"{a},{b}": validate_simplicial_set(X, f"hom({a},{b})").to_json()
                   for (a, b), X in sorted(C.homs.items())}
    rep = validate_enriched_category(C)
    out = _header("validate", CoefficientRing("Z"), C)
    out["schema"] = "validation-report.v1"
    out["simplicial_sets"] = hom_reports
    out["enriched"] = rep.to_json()
    out["valid"] = rep.ok and all(r["valid"] for r in hom_reports.values())
    return out, EXIT_OK if out["valid"] else EXIT_INVALID


def _require_valid(C):
    rep = validate_enriched_category(C)
    if not rep.ok:
        return {"schema": "validation-report.v1", "valid": False, "enriched": rep.to_json()}
    return None


def cmd_homology(args) -> tuple:
    C = _load(args)
    ring = _ring(args.ring)
    bad = _require_valid(C)
    if bad:
        return bad, EXIT_INVALID
    degrees = _degrees(args.degrees, C.dim)
    cx = chain_complex(C, ring)
    out = _header("homology", ring, C)
    out["schema"] = "homology-report.v1"
    out["chain_ranks"] = [cx.rank(n) for n in range(C.dim + 1)]
    out["homology"] = [cx.homology(n).to_dict() for n in degrees]
    dd, eq = cx.dd_failures(), cx.equivariance_failures()
    out["checks"] = {"boundary_squares_to_zero": not dd, "boundary_equivariant": not eq}
    return out, EXIT_OK if not (dd or eq) else EXIT_INVALID


def cmd_relative(args) -> tuple:
    S = _load(args)
    ring = _ring(args.ring)
    bad = _require_valid(S)
    if bad:
        return bad, EXIT_INVALID
    objs = [o for o in (args.sub or "").split(",") if o]
    unknown = [o for o in objs if o not in S.objects]
    if unknown:
        raise InputError(f"unknown objects {unknown}")
    degrees = _degrees(args.degrees, S.dim)
    T, inc = full_subcategory(S, objs)
    rel = relative_complex(S, T, ring, inc)
    rep = les(rel, max(degrees))
    out = _header("relative", ring, S)
    out["schema"] = "homology-report.v1"
    out["subcategory"] = list(T.objects)
    out["extended_ranks"] = [rel.extended.rank(n) for n in range(S.dim + 1)]
    out["relative_ranks"] = [rel.quotient.rank(n) for n in range(S.dim + 1)]
    out["extended"] = [rel.extended.homology(n).to_dict() for n in degrees]
    out["absolute"] = [rel.ambient.homology(n).to_dict() for n in degrees]
    out["relative"] = [rel.quotient.homology(n).to_dict() for n in degrees]
    out["les"] = rep.to_dict()
    out["transfer"] = [transfer_kernel(S, T, n, ring, inc, rel.ambient).to_dict() for n in degrees]
    return out, EXIT_OK if rep.ok else EXIT_INVALID


def cmd_algebra(args) -> tuple:
    ring = _ring(args.ring)
    data = read_json(args.input) if args.input else None
    if data is None:
        raise InputError("--input is required")
    if data.get("schema") == "algebra.v1":
        A = algebra_from_json(data)
        ring = A.ring
    else:
        C = category_from_json(data, args.dim)
        bad = _require_valid(C)
        if bad:
            return bad, EXIT_INVALID
        A = path_algebra(C, ring)
    rng = random.Random(args.seed)
    out = _header("algebra", ring)
    out["schema"] = "algebra-report.v1"
    out["algebra"] = A.to_json()
    assoc = A.associativity_failures()
    out["associative"] = not assoc
    out["unital"] = A.is_unital
    out["idempotent"] = is_idempotent(A)
    try:
        basis = [A.basis_element(b) for b in A.basis]
        out["s_unit_witnesses"] = {side: repr(find_local_unit(A, basis, side)) for side in ("left", "right", "both")}
        out["s_unital"] = True
    except NotSUnital as exc:
        out["s_unital"] = False
        out["s_unit_witnesses"] = {"error": str(exc)}
    Ah = unitalize(A)
    unit_ok = not Ah.unit_failures() and not Ah.associativity_failures()
    samples = [A.random_element(rng) for _ in range(10)]
    samples += [Ah.pair(A.random_element(rng), rng.randint(-3, 3)) for _ in range(10)]
    adj = check_adjunction_triangles(A, samples)
    out["unitalization"] = {"unit": Ah.unit_symbol, "unit_verified": unit_ok, "dimension": Ah.dimension}
    out["adjunction"] = {"samples": adj.samples, "triangle_unital": adj.triangle_unital,
                         "triangle_free": adj.triangle_free, "eta_multiplicative": adj.eta_multiplicative,
                         "epsilon_multiplicative": adj.epsilon_multiplicative}
    ok = (not assoc) and unit_ok and adj.ok
    return out, EXIT_OK if ok else EXIT_INVALID


def cmd_selftest(args) -> tuple:
    subset = [s for s in (args.subset or "").split(",") if s] or None
    ring = _ring(args.ring)

    def progress(c):
        if args.verbose:
            print(f"{'PASS' if c.passed else 'FAIL'} {c.name}", file=sys.stderr)

    try:
        res = run_suite(subset, args.corrupt, ring, args.seed, progress)
    except KeyError as exc:
        raise InputError(str(exc)) from None
    out = _header("selftest", ring)
    out.update(res.to_dict())
    first = res.first_failure
    if first is not None:
        out["first_failure"] = first.name
        print(f"selftest failed: {first.name} {first.detail}".rstrip(), file=sys.stderr)
    return out, EXIT_OK if res.ok else EXIT_INVALID


COMMANDS = {"validate": cmd_validate, "homology": cmd_homology, "relative": cmd_relative,
            "algebra": cmd_algebra, "selftest": cmd_selftest}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dihom", description="Directed homology of finite simplicially "
                                     "enriched categories.")
    parser.add_argument("--version", action="version", version=f"dihom {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", required=False, help="enriched-category.v1 JSON file")
        p.add_argument("--ring", default="z", help="z, q or fp:P (default z)")
        p.add_argument("--dim", type=int, default=None, help="truncation D for builder specs")
        p.add_argument("--out", default=None, help="write the JSON report here instead of stdout")

    p = sub.add_parser("validate", help="check simplicial identities and enriched category axioms")
    common(p)
    p = sub.add_parser("homology", help="homology bimodules with induced actions")
    common(p)
    p.add_argument("--degrees", default=None, help="degree range a..b (default 0..D-1)")
    p = sub.add_parser("relative", help="relative homology, long exact sequence and transfer kernels")
    common(p)
    p.add_argument("--degrees", default=None)
    p.add_argument("--sub", default="", help="comma-separated objects of the full subcategory")
    p = sub.add_parser("algebra", help="inspect a path algebra or an algebra.v1 file")
    p.add_argument("action", nargs="?", default="inspect", choices=["inspect"])
    common(p)
    p.add_argument("--seed", type=int, default=0)
    p = sub.add_parser("selftest", help="run the invariant suite on the bundled corpus")
    p.add_argument("--ring", default="z")
    p.add_argument("--subset", default=None, help="comma-separated corpus names, e.g. E1,E3@D3")
    p.add_argument("--corrupt", default=None, choices=["face", "degeneracy", "unit", "associativity",
                                                       "simpliciality"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "dim", None) is not None and args.dim < 1:
        print("error: --dim must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        report, code = COMMANDS[args.command](args)
    except (InputError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MatrixTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
