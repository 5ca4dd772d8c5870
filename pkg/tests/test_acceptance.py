"""Acceptance suite: one check per criterion, exact integer arithmetic throughout.

Every test prints a single ``[ACn] PASS|FAIL`` line (shown even without ``-s``)
and then asserts.  Nothing is compared with a tolerance.
"""

import argparse
import random

import pytest

from dihom.bimod import (act, chain_bimodule, check_firm, module_deunitalize, module_unitalize, regular_bimodule,
                         same_bimodule, zero_action_module)
from dihom.cli import cmd_relative
from dihom.corpus import CORRUPTIONS, corpus, corrupted, relative_pairs
from dihom.exactlin import ZZ
from dihom.homology import actions_conjugate, chain_complex, induced_map, les, relative_complex, transfer_kernel
from dihom.nualg import check_adjunction_triangles, find_local_unit, is_idempotent, path_algebra, unitalize
from dihom.scat import full_subcategory, relabel_isomorphism, validate_enriched_category, validate_simplicial_set
from dihom.serialize import dumps, save_category

from oracles import oracle_category_homology, path_product

CORPUS = corpus()


@pytest.fixture
def report(capsys):
    def emit(tag, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{tag}] {'PASS' if ok else 'FAIL'} {title}" + (f" ({detail})" if detail and not ok else ""))
        assert ok, detail
    return emit


def _discrete(C):
    return all(x in X.degenerate for X in C.homs.values() for ids in X.simplices[1:] for x in ids)


def test_ac1_validity(report):
    bad = []
    for key, C in CORPUS.items():
        if not validate_enriched_category(C).ok:
            bad.append(key)
        bad += [f"{key}:{a},{b}" for (a, b), X in C.homs.items() if not validate_simplicial_set(X).ok]
    caught = {}
    for kind in CORRUPTIONS:
        rep = validate_enriched_category(corrupted(kind))
        caught[kind] = (not rep.ok) and all(v.where for v in rep.violations)
    ok = not bad and all(caught.values())
    report("AC1", f"{len(CORPUS)} corpus categories valid, {sum(caught.values())}/5 corruptions located", ok,
           f"invalid={bad}, caught={caught}")


def test_ac2_path_algebra_laws(report):
    fails = []
    rng = random.Random(2)
    for key, C in CORPUS.items():
        A = path_algebra(C)
        if A.associativity_failures():
            fails.append((key, "associativity"))
        if not is_idempotent(A):
            fails.append((key, "idempotent"))
        xs = [A.random_element(rng) for _ in range(100)]
        for side in ("left", "right", "both"):
            for x in xs:
                e = find_local_unit(A, [x], side)
                if side in ("left", "both") and path_product(C, e.coeffs, x.coeffs) != x.coeffs:
                    fails.append((key, side, repr(x)))
                if side in ("right", "both") and path_product(C, x.coeffs, e.coeffs) != x.coeffs:
                    fails.append((key, side, repr(x)))
            e = find_local_unit(A, xs, side)
            for x in xs:
                if side != "right" and path_product(C, e.coeffs, x.coeffs) != x.coeffs:
                    fails.append((key, side, "joint"))
                if side != "left" and path_product(C, x.coeffs, e.coeffs) != x.coeffs:
                    fails.append((key, side, "joint"))
    report("AC2", "path algebras associative, idempotent, s-unital on both sides (100 elements each)", not fails,
           str(fails[:3]))


def test_ac3_unitalization(report):
    fails = []
    for key in ("E1@D2", "E2@D2", "E3@D2"):
        C = CORPUS[key]
        A = path_algebra(C)
        Ah = unitalize(A)
        rng = random.Random(key)
        for _ in range(50):
            a, b = A.random_element(rng), A.random_element(rng)
            r, s = rng.randint(-5, 5), rng.randint(-5, 5)
            got = Ah.mul(Ah.pair(a, r), Ah.pair(b, s))
            # (ab + r b + a s, r s), evaluated from the composition table
            expect = path_product(C, a.coeffs, b.coeffs)
            for k, v in list(b.coeffs.items()):
                expect[k] = expect.get(k, 0) + r * v
            for k, v in list(a.coeffs.items()):
                expect[k] = expect.get(k, 0) + s * v
            expect = {k: v for k, v in expect.items() if v}
            if got.part.coeffs != expect or got.scalar != r * s:
                fails.append((key, "product"))
        samples = [Ah.pair(A.random_element(rng), rng.randint(-3, 3)) for _ in range(50)]
        adj = check_adjunction_triangles(A, samples)
        if not (adj.ok and adj.samples == 50):
            fails.append((key, "adjunction", adj.failures[:2]))
    report("AC3", "unitalized product matches (ab + rb + as, rs) on 50 pairs; both triangles on 50 samples",
           not fails, str(fails[:3]))


def test_ac4_module_unitalization(report):
    fails = []
    for key, C in CORPUS.items():
        A = path_algebra(C)
        rng = random.Random(key)
        for n in (0, 1):
            M = chain_bimodule(C, n, ZZ, A)
            Mh = module_unitalize(M)
            if not same_bimodule(module_deunitalize(Mh), M):
                fails.append((key, n, "round trip"))
            one_l = Mh.left_algebra.pair(A.zero(), 1)
            one_r = Mh.right_algebra.pair(A.zero(), 1)
            for _ in range(100):
                x = Mh.chain({lab: rng.randint(-5, 5) for lab in Mh.labels})
                if act(one_l, x) != x or act(None, x, one_r) != x:
                    fails.append((key, n, "unit"))
    report("AC4", "unitalize/deunitalize is the identity on C_0, C_1; (0,1) acts as 1 on 100 chains", not fails,
           str(fails[:3]))


def test_ac5_chain_complex(report):
    fails = []
    for key, C in CORPUS.items():
        cx = chain_complex(C)
        if cx.dd_failures():
            fails.append((key, "dd", cx.dd_failures()))
        eq = cx.equivariance_failures()
        if eq:
            fails.append((key, "equivariance", eq[:2]))
    report("AC5", "d∘d = 0 and boundaries commute with every left and right generator action", not fails,
           str(fails[:3]))


def test_ac6_homology_oracle(report):
    fails = []
    checked = 0
    for key, C in CORPUS.items():
        cx = chain_complex(C)
        for n in range(C.dim):
            H = cx.homology(n)
            if (H.free_rank, sorted(H.invariant_factors)) != oracle_category_homology(C, n):
                fails.append((key, n, "oracle"))
        if _discrete(C):
            checked += 1
            if cx.homology(0).free_rank != len(C.vertices()) or cx.homology(0).invariant_factors:
                fails.append((key, "H_0"))
            if not all(cx.homology(n).is_zero() for n in range(1, C.dim)):
                fails.append((key, "higher"))
    for D in (2, 3):
        cx = chain_complex(CORPUS[f"E2@D{D}"])
        H0 = cx.homology(0)
        idx = {x: i for i, x in enumerate(cx.labels[0])}
        f, g = ([int(i == idx[v]) for i in range(len(idx))] for v in ("f", "g"))
        if H0.free_rank != 3 or H0.invariant_factors or not H0.same_class(f, g):
            fails.append((f"E2@D{D}", "H_0"))
    report("AC6", f"homology equals the sympy oracle; {checked} discrete categories and E2 as predicted", not fails,
           str(fails[:3]))


def _relabel(C, rng, tag):
    ids = [x for X in C.homs.values() for x in X.all_ids()]
    rng.shuffle(ids)
    return relabel_isomorphism(C, {o: f"{tag}.{o}" for o in C.objects}, {x: f"{tag}.{i}" for i, x in enumerate(ids)})


def test_ac7_functoriality(report):
    fails = []
    rng = random.Random(7)
    for key in ("E1@D2", "E2@D2", "E3@D2", "chain2@D3"):
        C = CORPUS[key]
        src = chain_complex(C)
        for t in range(10):
            C1, F, _ = _relabel(C, rng, f"a{t}")
            C2, G, _ = _relabel(C1, rng, f"b{t}")
            mid, tgt = chain_complex(C1), chain_complex(C2)
            GF = G.compose(F)
            for n in range(C.dim):
                hF, hG = induced_map(F, src, mid, n), induced_map(G, mid, tgt, n)
                if not induced_map(GF, src, tgt, n).equals(hG @ hF):
                    fails.append((key, t, n, "composition"))
                Hs, Hm = src.homology(n), mid.homology(n)
                if Hs.invariant_factors != Hm.invariant_factors or Hs.free_rank != Hm.free_rank:
                    fails.append((key, t, n, "invariants"))
                if not (hF.is_isomorphism() and actions_conjugate(F, src, mid, n, hF)):
                    fails.append((key, t, n, "conjugacy"))
    report("AC7", "H(G∘F) = H(G)∘H(F) on 10 relabelling pairs per category; invariants and actions conjugate",
           not fails, str(fails[:3]))


def test_ac8_firmness(report):
    C = CORPUS["E1@D2"]
    A = path_algebra(C)
    M = regular_bimodule(A, "left")
    verdict = check_firm(A, M)
    fails = [] if verdict.firm else ["Z[E1] not firm"]
    rng = random.Random(8)
    everything = A.element({e: 1 for e in A.identities.values()})
    for i in range(20):
        end = rng.choice(C.objects)
        m = A.element({b: rng.choice([-2, -1, 1, 2, 3]) for b in A.basis if A.tags[b][1] == end}).vector()
        e1 = find_local_unit(A, [A.from_vector(m)], "left")
        e2 = everything
        witnesses_ok = e1 != e2 and all(M.left_matrix(e).apply(m) == m for e in (e1, e2))
        t1, t2 = verdict.mu_inverse(e1, m), verdict.mu_inverse(e2, m)
        if not (witnesses_ok and verdict.same_class(t1, t2) and verdict.mu(t1) == M.presentation.reduce(m)):
            fails.append(i)
    trivial = check_firm(A, zero_action_module(A, 2))
    if trivial.firm:
        fails.append("zero-action module reported firm")
    report("AC8", "Z[E1] firm; e⊗m independent of the witness on 20 samples; zero-action module not firm",
           not fails, str(fails[:3]))


def test_ac9_relative_homology(report):
    pairs = relative_pairs(2)
    fails = []
    for name, S, objs in pairs:
        T, inc = full_subcategory(S, objs)
        rel = relative_complex(S, T, ZZ, inc)
        tag = f"{name}/{','.join(objs)}"
        if not rel.ses_ok():
            fails.append((tag, "ses"))
        rep = les(rel)
        if not (rep.ok and rep.max_degree == S.dim - 1):
            fails.append((tag, "les", [n.where for n in rep.nodes if not n.exact]))
        for n in range(S.dim + 1):
            tk = transfer_kernel(S, T, n, ZZ, inc, rel.ambient)
            if not (tk.kernel.is_zero() and tk.isomorphic_to_extended):
                fails.append((tag, n, "transfer"))
    ok = not fails and pairs[0][0] == "E3" and pairs[0][2] == ["00", "01"] and len(pairs) == 6
    report("AC9", f"SES, LES through D-1 and injective transfer on {len(pairs)} relative pairs", ok, str(fails[:3]))


def test_ac10_determinism(report, tmp_path):
    path = tmp_path / "E3.json"
    save_category(CORPUS["E3@D2"], path)
    args = argparse.Namespace(input=str(path), ring="z", dim=None, degrees=None, sub="00,01", out=None)
    first = dumps(cmd_relative(args)[0]).encode()
    second = dumps(cmd_relative(args)[0]).encode()
    report("AC10", f"two runs of the relative command on E3 are byte-identical ({len(first)} bytes)",
           first == second)
