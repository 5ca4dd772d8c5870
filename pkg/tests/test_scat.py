from math import comb

import pytest

from dihom.corpus import CORRUPTIONS, corpus, corrupted, interval, parallel_pair_with_homotopy, square
from dihom.scat import (BuilderError, Category1, EnrichedFunctor, ScatError, TruncatedSimplicialSet, TruncationError,
                        antichain, build_from_category, build_from_poset, build_with_homotopies, chain_poset,
                        full_subcategory, grid_poset, identity_functor, poset_category, relabel_isomorphism,
                        underlying_category, validate_enriched_category, validate_simplicial_set)

CORPUS = corpus()


def simplicial_identity_failures(X):
    """Check d_i d_j = d_{j-1} d_i (i < j) and the mixed identities directly from the tables."""
    bad = []
    d = lambda x, i: X.faces[x][i]
    s = lambda x, i: X.degeneracies[x][i]
    for n in range(2, X.dim + 1):
        for x in X.simplices[n]:
            for j in range(n + 1):
                for i in range(j):
                    if d(d(x, j), i) != d(d(x, i), j - 1):
                        bad.append(("dd", x, i, j))
    for n in range(X.dim):
        for x in X.simplices[n]:
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = d(s(x, j), i)
                    if i < j:
                        rhs = s(d(x, i), j - 1)
                    elif i in (j, j + 1):
                        rhs = x
                    else:
                        rhs = s(d(x, i - 1), j)
                    if lhs != rhs:
                        bad.append(("ds", x, i, j))
            if n + 1 < X.dim:
                for j in range(n + 1):
                    for i in range(j + 1):
                        if s(s(x, j), i) != s(s(x, i), j + 1):
                            bad.append(("ss", x, i, j))
    return bad


@pytest.mark.parametrize("key", sorted(CORPUS))
def test_corpus_categories_valid(key):
    C = CORPUS[key]
    rep = validate_enriched_category(C)
    assert rep.ok, rep.violations[:3]
    for (a, b), X in C.homs.items():
        assert validate_simplicial_set(X).ok
        assert simplicial_identity_failures(X) == []


@pytest.mark.parametrize("kind", sorted(CORRUPTIONS))
def test_corruptions_are_located(kind):
    rep = validate_enriched_category(corrupted(kind))
    assert not rep.ok
    v = rep.violations[0]
    assert v.where and v.detail
    expected = {"face": "face-degeneracy", "degeneracy": "face-degeneracy", "unit": "unit",
                "associativity": "associativity", "simpliciality": "simplicial"}[kind]
    assert expected in {x.kind for x in rep.violations}


def test_generated_counts_match_surjection_count():
    # an m-simplex contributes C(n, m) simplices in degree n
    X = TruncatedSimplicialSet.generate([("a", 0, ()), ("b", 0, ()), ("e", 1, ("b", "a"))], 3)
    assert [len(s) for s in X.simplices] == [2, 2 * comb(1, 0) + comb(1, 1), 2 + comb(2, 1), 2 + comb(3, 1)]
    assert X.faces["e"] == ("b", "a")
    assert X.degeneracies["e"] == ("s0(e)", "s1(e)")
    assert X.faces["s0(e)"] == ("e", "e", "s0(a)")
    assert X.total_degeneracy("a", 3) == "s2s1s0(a)"
    assert simplicial_identity_failures(X) == []


def test_generate_rejects_bad_input():
    with pytest.raises(BuilderError):
        TruncatedSimplicialSet.generate([("a", 0, ()), ("a", 0, ())], 2)
    with pytest.raises(BuilderError):
        TruncatedSimplicialSet.generate([("e", 1, ("x", "y"))], 2)
    with pytest.raises(TruncationError):
        TruncatedSimplicialSet.generate([("a", 0, ()), ("e", 1, ("a", "a"))], 0)
    X = TruncatedSimplicialSet.generate([("a", 0, ())], 1)
    with pytest.raises(TruncationError):
        X.degeneracy("s0(a)", 0)


def test_interval_structure():
    E1 = interval(2)
    assert E1.hom("0", "1").simplices == (("u",), ("s0(u)",), ("s1s0(u)",))
    assert E1.hom("1", "0").is_empty()
    assert E1.compose("id0", "u") == "u"
    assert E1.compose("s0(u)", "s0(id1)") == "s0(u)"
    with pytest.raises(ScatError):
        E1.compose("u", "id0")


def test_homotopy_example():
    E2 = parallel_pair_with_homotopy(2)
    X = E2.hom("a", "b")
    assert X.vertices == ("f", "g")
    assert X.faces["h"] == ("g", "f")
    assert [x for x in X.simplices[1] if x not in X.degenerate] == ["h"]
    assert E2.compose("h", "s0(idb)") == "h"
    assert E2.compose("s0(ida)", "h") == "h"


def test_square_is_commutative():
    E3 = square(2)
    assert E3.compose("00<01", "01<11") == E3.compose("00<10", "10<11") == "00<11"
    assert len(E3.vertices()) == 9


def test_posets_and_builders():
    with pytest.raises(BuilderError):
        poset_category([("a", "b"), ("b", "c")], ["a", "b", "c"])
    with pytest.raises(BuilderError):
        poset_category([("a", "b"), ("b", "a")], ["a", "b"])
    P = build_from_poset([("a", "b"), ("b", "c")], ["a", "b", "c"], closure=True)
    assert P.compose("a<b", "b<c") == "a<c"
    assert len(chain_poset(4, 2).vertices()) == 5 + 4 + 3 + 2 + 1
    assert len(grid_poset(2, 3, 2).objects) == 6
    assert len(antichain(3, 2).vertices()) == 3
    assert validate_enriched_category(P).ok


def test_underlying_category_round_trip():
    E3 = square(2)
    cat = underlying_category(E3)
    assert isinstance(cat, Category1)
    assert cat.validate().ok
    assert build_from_category(cat, 2, name=E3.name) == E3


def test_homotopy_builder_rejections():
    base = chain_poset(2, 2)
    with pytest.raises(BuilderError):
        build_with_homotopies(base, [("0", "1", "0<1", "missing")])
    with pytest.raises(BuilderError):
        build_with_homotopies(parallel_pair_with_homotopy(2), [("a", "b", "f", "g")])


def test_whiskering_by_vertices():
    # compose the parallel pair with a further arrow b -> c
    cat = Category1(
        ("a", "b", "c"),
        (("ida", "a", "a"), ("idb", "b", "b"), ("idc", "c", "c"), ("f", "a", "b"), ("g", "a", "b"),
         ("k", "b", "c"), ("fk", "a", "c"), ("gk", "a", "c")),
        {**{(e, e): e for e in ("ida", "idb", "idc")},
         ("ida", "f"): "f", ("ida", "g"): "g", ("f", "idb"): "f", ("g", "idb"): "g",
         ("idb", "k"): "k", ("k", "idc"): "k", ("f", "k"): "fk", ("g", "k"): "gk",
         ("ida", "fk"): "fk", ("ida", "gk"): "gk", ("fk", "idc"): "fk", ("gk", "idc"): "gk"},
        {"a": "ida", "b": "idb", "c": "idc"})
    C = build_with_homotopies(build_from_category(cat, 2), [("a", "b", "f", "g", "h")])
    assert validate_enriched_category(C).ok
    assert C.compose("h", "s0(k)") == "h;k"
    assert C.hom("a", "c").faces["h;k"] == ("gk", "fk")


def test_relabel_and_functors():
    E2 = parallel_pair_with_homotopy(2)
    ids = [x for X in E2.homs.values() for x in X.all_ids()]
    C2, F, Finv = relabel_isomorphism(E2, {"a": "A", "b": "B"}, {x: x.upper() + "'" for x in ids})
    assert validate_enriched_category(C2).ok
    assert F.validate().ok and Finv.validate().ok
    assert Finv.compose(F).simplex_map == identity_functor(E2).simplex_map
    broken = EnrichedFunctor(E2, C2, F.object_map, {**F.simplex_map, "h": "S0(F)'"})
    assert not broken.validate().ok


def test_full_subcategory():
    T, inc = full_subcategory(square(2), ["00", "01"])
    assert T.objects == ("00", "01")
    assert inc.validate().ok
    with pytest.raises(ScatError):
        full_subcategory(square(2), ["xx"])
