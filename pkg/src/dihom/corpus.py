"""The bundled example categories, relative pairs and seeded corruptions."""

from __future__ import annotations

from dataclasses import replace
from typing import Callable

from .scat import (Category1, EnrichedCategory, TruncatedSimplicialSet, antichain, build_from_category,
                   build_from_poset, build_with_homotopies, chain_poset, grid_poset)


def interval(dim: int = 2) -> EnrichedCategory:
    """Objects 0, 1 and a single arrow ``u: 0 -> 1``."""
    return build_from_poset([("0", "1")], ["0", "1"], dim, names={("0", "1"): "u"}, name="E1")


def parallel_pair(dim: int = 2) -> Category1:
    return Category1(
        ("a", "b"),
        (("ida", "a", "a"), ("f", "a", "b"), ("g", "a", "b"), ("idb", "b", "b")),
        {("ida", "ida"): "ida", ("idb", "idb"): "idb", ("ida", "f"): "f", ("ida", "g"): "g",
         ("f", "idb"): "f", ("g", "idb"): "g"},
        {"a": "ida", "b": "idb"},
    )


def parallel_pair_with_homotopy(dim: int = 2) -> EnrichedCategory:
    """Two arrows ``f, g: a -> b`` joined by a 1-simplex ``h`` from ``f`` to ``g``."""
    base = build_from_category(parallel_pair(), dim, name="pair")
    return build_with_homotopies(base, [("a", "b", "f", "g", "h")], name="E2")


def square(dim: int = 2) -> EnrichedCategory:
    """The commutative square: the poset on ``{00, 01, 10, 11}`` ordered coordinatewise."""
    C = grid_poset(2, 2, dim)
    return _renamed(C, "E3")


def _renamed(C: EnrichedCategory, name: str) -> EnrichedCategory:
    return EnrichedCategory(C.objects, C.dim, C.homs, C.identities, C.composition, name)


def corpus(dims=(2, 3)) -> dict:
    """Every bundled category, keyed ``"<name>@D<dim>"``."""
    out = {}
    for D in dims:
        cats = [interval(D), parallel_pair_with_homotopy(D), square(D), antichain(2, D), antichain(3, D)]
        cats += [chain_poset(k, D) for k in range(1, 5)]
        for C in cats:
            out[f"{C.name}@D{D}"] = C
    return out


# (category factory, subobjects); every pair here has an injective transfer map
RELATIVE_PAIRS = [
    ("E3", square, ["00", "01"]),
    ("chain3", lambda D: chain_poset(3, D), ["1", "2"]),
    ("chain4", lambda D: chain_poset(4, D), ["0", "1", "2"]),
    ("chain4", lambda D: chain_poset(4, D), ["2", "4"]),
    ("E3", square, ["01", "11"]),
    ("grid2x3", lambda D: grid_poset(2, 3, D), ["00", "01", "02"]),
]


def relative_pairs(dim: int = 2) -> list:
    return [(name, make(dim), objs) for name, make, objs in RELATIVE_PAIRS]


# -- seeded corruptions ------------------------------------------------

def _with_hom(C: EnrichedCategory, pair, X: TruncatedSimplicialSet) -> EnrichedCategory:
    homs = dict(C.homs)
    homs[pair] = X
    return EnrichedCategory(C.objects, C.dim, homs, C.identities, C.composition, C.name)


def _with_table(C: EnrichedCategory, triple, key, value) -> EnrichedCategory:
    comp = {k: dict(v) for k, v in C.composition.items()}
    comp[triple][key] = value
    return EnrichedCategory(C.objects, C.dim, C.homs, C.identities, comp, C.name)


def corrupt_face(C: EnrichedCategory) -> EnrichedCategory:
    """Swap the faces of the homotopy in E2 so that ``d_0 s_0`` no longer matches."""
    X = C.hom("a", "b")
    faces = dict(X.faces)
    faces["s0(f)"] = ("f", "g")
    return _with_hom(C, ("a", "b"), replace(X, faces=faces))


def corrupt_degeneracy(C: EnrichedCategory) -> EnrichedCategory:
    """In E2 let ``s_1 h`` be ``s_0 h``, breaking ``d_2 s_1 = id``."""
    X = C.hom("a", "b")
    degs = dict(X.degeneracies)
    degs["h"] = ("s0(h)", "s0(h)")
    return _with_hom(C, ("a", "b"), replace(X, degeneracies=degs))


def corrupt_unit(C: EnrichedCategory) -> EnrichedCategory:
    """Add a second arrow ``v: 0 -> 1`` and let ``e_0`` followed by ``u`` land on ``v``."""
    Y = TruncatedSimplicialSet.generate([("u", 0, ()), ("v", 0, ())], C.dim)
    C2 = _with_hom(C, ("0", "1"), Y)
    comp = {k: dict(v) for k, v in C.composition.items()}
    for d in range(C.dim + 1):
        e0, e1 = C.identity_at("0", d), C.identity_at("1", d)
        v = Y.total_degeneracy("v", d)
        u = Y.total_degeneracy("u", d)
        comp[("0", "0", "1")][(e0, v)] = v
        comp[("0", "1", "1")][(v, e1)] = v
        comp[("0", "0", "1")][(e0, u)] = v
    return EnrichedCategory(C2.objects, C2.dim, C2.homs, C2.identities, comp, C.name)


def corrupt_associativity(C: EnrichedCategory) -> EnrichedCategory:
    """In a chain 0 < 1 < 2 < 3 send ``0<1 ; 1<3`` to a new arrow ``w`` while ``0<2 ; 2<3`` stays ``0<3``."""
    Y = TruncatedSimplicialSet.generate([("0<3", 0, ()), ("w", 0, ())], C.dim)
    comp = {k: dict(v) for k, v in C.composition.items()}
    for d in range(C.dim + 1):
        e0, e3 = C.identity_at("0", d), C.identity_at("3", d)
        w = Y.total_degeneracy("w", d)
        comp[("0", "0", "3")][(e0, w)] = w
        comp[("0", "3", "3")][(w, e3)] = w
        comp[("0", "1", "3")][(C.total_degeneracy("0<1", d), C.total_degeneracy("1<3", d))] = w
    return EnrichedCategory(C.objects, C.dim, {**C.homs, ("0", "3"): Y}, C.identities, comp, C.name)


def corrupt_simpliciality(C: EnrichedCategory) -> EnrichedCategory:
    """In E2 whisker ``h`` by ``id_b`` to its degenerate neighbour, breaking compatibility with faces."""
    return _with_table(C, ("a", "b", "b"), ("h", "s0(idb)"), "s0(f)")


CORRUPTIONS: dict[str, tuple[Callable, Callable]] = {
    "face": (parallel_pair_with_homotopy, corrupt_face),
    "degeneracy": (parallel_pair_with_homotopy, corrupt_degeneracy),
    "unit": (interval, corrupt_unit),
    "associativity": (lambda D: chain_poset(3, D), corrupt_associativity),
    "simpliciality": (parallel_pair_with_homotopy, corrupt_simpliciality),
}


def corrupted(kind: str, dim: int = 2) -> EnrichedCategory:
    make, corrupt = CORRUPTIONS[kind]
    return corrupt(make(dim))
