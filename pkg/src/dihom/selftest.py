"""Invariant suite run by ``dihom selftest`` over the bundled corpus."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .bimod import check_firm, module_deunitalize, module_unitalize, regular_bimodule, same_bimodule
from .corpus import corpus, corrupted, relative_pairs
from .exactlin import CoefficientRing, ZZ
from .homology import chain_complex, les, relative_complex, transfer_kernel
from .nualg import find_local_unit, is_idempotent, path_algebra
from .scat import EnrichedCategory, full_subcategory, validate_enriched_category


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Optional[Check]:
        return next((c for c in self.checks if not c.passed), None)

    def to_dict(self) -> dict:
        return {"passed": self.ok, "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                                              for c in self.checks]}


def _discrete(C: EnrichedCategory) -> bool:
    return all(x in X.degenerate for X in C.homs.values() for ids in X.simplices[1:] for x in ids)


def category_checks(name: str, C: EnrichedCategory, ring: CoefficientRing, rng: random.Random) -> list:
    out = []
    rep = validate_enriched_category(C)
    out.append(Check(f"{name}: valid", rep.ok, "" if rep.ok else str(rep.violations[0])))
    if not rep.ok:
        return out
    A = path_algebra(C, ring)
    bad = A.associativity_failures()
    out.append(Check(f"{name}: path algebra associative", not bad, str(bad[:1])))
    out.append(Check(f"{name}: path algebra idempotent", is_idempotent(A)))
    xs = [A.random_element(rng) for _ in range(10)]
    try:
        find_local_unit(A, xs, "both")
        out.append(Check(f"{name}: path algebra s-unital", True))
    except ValueError as exc:
        out.append(Check(f"{name}: path algebra s-unital", False, str(exc)))
    cx = chain_complex(C, ring, A)
    out.append(Check(f"{name}: d∘d = 0", not cx.dd_failures(), str(cx.dd_failures())))
    eq = cx.equivariance_failures()
    out.append(Check(f"{name}: boundary equivariant", not eq, str(eq[:1])))
    for n in range(min(2, C.dim + 1)):
        M = cx.modules[n]
        axioms = M.axiom_failures()
        out.append(Check(f"{name}: C_{n} bimodule axioms", not axioms, str(axioms[:1])))
        rt = same_bimodule(module_deunitalize(module_unitalize(M)), M)
        out.append(Check(f"{name}: C_{n} unitalization round trip", rt))
    if _discrete(C):
        H = [cx.homology(n) for n in range(C.dim)]
        ok = H[0].free_rank == len(A.basis) and not H[0].invariant_factors and all(h.is_zero() for h in H[1:])
        out.append(Check(f"{name}: discrete homology", ok, ", ".join(h.describe() for h in H)))
    firm = check_firm(A, regular_bimodule(A, "left"))
    out.append(Check(f"{name}: path algebra firm", firm.firm))
    return out


def relative_checks(name: str, S: EnrichedCategory, objs, ring: CoefficientRing) -> list:
    out = []
    T, inc = full_subcategory(S, objs)
    rel = relative_complex(S, T, ring, inc)
    out.append(Check(f"{name}/{','.join(objs)}: short exact sequence", rel.ses_ok()))
    rep = les(rel)
    out.append(Check(f"{name}/{','.join(objs)}: long exact sequence", rep.ok,
                     "" if rep.ok else str([n.where for n in rep.nodes if not n.exact])))
    for n in range(S.dim):
        tk = transfer_kernel(S, T, n, ring, inc, rel.ambient)
        out.append(Check(f"{name}/{','.join(objs)}: transfer injective in degree {n}", tk.isomorphic_to_extended,
                         tk.kernel.describe()))
    return out


def run_suite(subset: Optional[list] = None, corrupt: Optional[str] = None, ring: CoefficientRing = ZZ,
              seed: int = 0, progress: Optional[Callable[[Check], None]] = None) -> SuiteResult:
    rng = random.Random(seed)
    cats = corpus()
    if corrupt:
        cats[f"corrupted-{corrupt}"] = corrupted(corrupt)
    if subset:
        unknown = [s for s in subset if not any(k == s or k.split("@")[0] == s for k in cats)]
        if unknown:
            raise KeyError(f"unknown corpus entries {unknown}")
        cats = {k: v for k, v in cats.items() if k in subset or k.split("@")[0] in subset}
    result = SuiteResult()
    for name, C in cats.items():
        for c in category_checks(name, C, ring, rng):
            result.checks.append(c)
            if progress:
                progress(c)
    if not subset:
        for name, S, objs in relative_pairs(2):
            for c in relative_checks(name, S, objs, ring):
                result.checks.append(c)
                if progress:
                    progress(c)
    return result
