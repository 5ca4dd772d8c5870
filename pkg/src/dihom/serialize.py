"""JSON formats: ``enriched-category.v1`` (with builder specs), ``algebra.v1`` and report writers."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .exactlin import CoefficientRing
from .nualg import Algebra
from .scat import (BuilderError, Category1, EnrichedCategory, ScatError, TruncatedSimplicialSet, antichain,
                   build_from_category, build_from_poset, build_with_homotopies, chain_poset, grid_poset)

CATEGORY_SCHEMA = "enriched-category.v1"
ALGEBRA_SCHEMA = "algebra.v1"


class SchemaError(ValueError):
    """Malformed or incomplete input (CLI exit code 2)."""


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(obj: Any, path: str | Path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise SchemaError(f"input file {path} not found") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None


# -- categories --------------------------------------------------------

def category_to_json(C: EnrichedCategory) -> dict:
    homs = []
    for a, b in C.hom_pairs():
        X = C.homs[(a, b)]
        homs.append({
            "source": a,
            "target": b,
            "simplices": [list(ids) for ids in X.simplices],
            "faces": {x: list(X.faces[x]) for x in X.all_ids() if x in X.faces},
            "degeneracies": {x: list(X.degeneracies[x]) for x in X.all_ids() if x in X.degeneracies},
            "degenerate": [x for x in X.all_ids() if x in X.degenerate],
        })
    comp = []
    for (a, b, c), table in C.composition.items():
        if not table:
            continue
        comp.append({"objects": [a, b, c], "table": [[s, t, r] for (s, t), r in table.items()]})
    return {"schema": CATEGORY_SCHEMA, "name": C.name, "dim": C.dim, "objects": list(C.objects),
            "identities": {a: C.identities[a] for a in C.objects}, "homs": homs, "composition": comp}


def _require(d: dict, key: str, where: str, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise SchemaError(f"{where}: missing field {key!r}")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise SchemaError(f"{where}: field {key!r} has the wrong type")
    return v


def _strs(seq, where):
    if not isinstance(seq, list) or not all(isinstance(x, str) for x in seq):
        raise SchemaError(f"{where}: expected a list of strings")
    return [str(x) for x in seq]


def category_from_json(data: dict, dim: int | None = None) -> EnrichedCategory:
    """Parse an explicit table description or a builder spec.

    ``dim`` overrides the truncation of builder specs; explicit tables carry
    their own truncation.  Structural problems (missing fields, unknown ids,
    missing composition entries) raise :class:`SchemaError`; mathematical
    problems are left to the validators.
    """
    if not isinstance(data, dict):
        raise SchemaError("top level must be a JSON object")
    schema = data.get("schema", CATEGORY_SCHEMA)
    if schema != CATEGORY_SCHEMA:
        raise SchemaError(f"unsupported schema {schema!r}")
    if "builder" in data:
        return _build(data, dim)
    D = _require(data, "dim", "category", int)
    if dim is not None and dim != D:
        raise SchemaError(f"--dim {dim} does not match the stored truncation {D}")
    objects = _strs(_require(data, "objects", "category", list), "objects")
    idents = _require(data, "identities", "category", dict)
    homs = {}
    for i, h in enumerate(_require(data, "homs", "category", list)):
        where = f"homs[{i}]"
        a, b = _require(h, "source", where, str), _require(h, "target", where, str)
        if a not in objects or b not in objects:
            raise SchemaError(f"{where}: unknown object")
        simplices = _require(h, "simplices", where, list)
        if len(simplices) != D + 1:
            raise SchemaError(f"{where}: expected {D + 1} simplex levels")
        simplices = tuple(tuple(_strs(ids, f"{where}.simplices")) for ids in simplices)
        faces = {k: tuple(_strs(v, f"{where}.faces")) for k, v in _require(h, "faces", where, dict).items()}
        degs = {k: tuple(_strs(v, f"{where}.degeneracies")) for k, v in
                _require(h, "degeneracies", where, dict).items()}
        degenerate = frozenset(_strs(h.get("degenerate", []), f"{where}.degenerate"))
        known = {x for ids in simplices for x in ids}
        for table, name in ((faces, "faces"), (degs, "degeneracies")):
            for k in table:
                if k not in known:
                    raise SchemaError(f"{where}.{name}: unknown simplex {k!r}")
        if (a, b) in homs:
            raise SchemaError(f"{where}: hom({a},{b}) given twice")
        homs[(a, b)] = TruncatedSimplicialSet(D, simplices, faces, degs, degenerate)
    for a in objects:
        if a not in idents:
            raise SchemaError(f"identities: no identity for object {a!r}")
    composition = {}
    for i, entry in enumerate(data.get("composition", [])):
        where = f"composition[{i}]"
        trip = tuple(_strs(_require(entry, "objects", where, list), where))
        if len(trip) != 3 or any(o not in objects for o in trip):
            raise SchemaError(f"{where}: objects must name three known objects")
        table = {}
        for row in _require(entry, "table", where, list):
            row = _strs(row, where)
            if len(row) != 3:
                raise SchemaError(f"{where}: table rows are [first, second, composite]")
            table[(row[0], row[1])] = row[2]
        composition[trip] = table
    # every composable pair of equal-dimension simplices needs an entry
    empty = TruncatedSimplicialSet.empty(D)
    for a in objects:
        for b in objects:
            X = homs.get((a, b), empty)
            if X.is_empty():
                continue
            for c in objects:
                Y = homs.get((b, c), empty)
                if Y.is_empty():
                    continue
                table = composition.get((a, b, c), {})
                for d in range(D + 1):
                    for s in X.simplices[d]:
                        for t in Y.simplices[d]:
                            if (s, t) not in table:
                                raise SchemaError(f"composition ({a},{b},{c}): missing entry for ({s}, {t})")
    try:
        return EnrichedCategory(tuple(objects), D, homs, {a: str(idents[a]) for a in objects}, composition,
                                str(data.get("name", "")))
    except ScatError as exc:
        raise SchemaError(str(exc)) from None


def _build(data: dict, dim: int | None) -> EnrichedCategory:
    kind = data["builder"]
    D = dim if dim is not None else int(data.get("dim", 2))
    name = str(data.get("name", ""))
    try:
        if kind == "poset":
            names = {(a, b): n for a, b, n in data.get("names", [])}
            C = build_from_poset([tuple(p) for p in data.get("relation", [])], data.get("objects"), D,
                                 closure=bool(data.get("closure", False)), names=names, name=name)
        elif kind == "chain":
            C = chain_poset(int(_require(data, "length", "builder")), D)
        elif kind == "grid":
            C = grid_poset(int(_require(data, "rows", "builder")), int(_require(data, "cols", "builder")), D)
        elif kind == "antichain":
            C = antichain(int(_require(data, "size", "builder")), D)
        elif kind == "category":
            C = build_from_category(category1_from_json(data), D, name)
        elif kind == "homotopies":
            base = category_from_json(_require(data, "base", "builder", dict), D)
            C = build_with_homotopies(base, [tuple(a) for a in _require(data, "attachments", "builder", list)],
                                      name=name)
        else:
            raise SchemaError(f"unknown builder {kind!r}")
    except BuilderError as exc:
        raise SchemaError(f"builder {kind!r}: {exc}") from None
    if name and C.name != name:
        C = EnrichedCategory(C.objects, C.dim, C.homs, C.identities, C.composition, name)
    return C


def category1_from_json(data: dict) -> Category1:
    objects = tuple(_strs(_require(data, "objects", "category", list), "objects"))
    morphisms = []
    for row in _require(data, "morphisms", "category", list):
        row = _strs(row, "morphisms")
        if len(row) != 3:
            raise SchemaError("morphisms are [id, source, target]")
        morphisms.append(tuple(row))
    compose = {}
    for row in _require(data, "compose", "category", list):
        row = _strs(row, "compose")
        if len(row) != 3:
            raise SchemaError("compose rows are [first, second, composite]")
        compose[(row[0], row[1])] = row[2]
    idents = {str(k): str(v) for k, v in _require(data, "identities", "category", dict).items()}
    return Category1(objects, tuple(morphisms), compose, idents)


def load_category(path: str | Path, dim: int | None = None) -> EnrichedCategory:
    return category_from_json(read_json(path), dim)


def save_category(C: EnrichedCategory, path: str | Path) -> None:
    write_json(category_to_json(C), path)


# -- algebras ----------------------------------------------------------

def algebra_from_json(data: dict) -> Algebra:
    if data.get("schema", ALGEBRA_SCHEMA) != ALGEBRA_SCHEMA:
        raise SchemaError(f"unsupported schema {data.get('schema')!r}")
    try:
        ring = CoefficientRing.parse(str(data.get("ring", "z")))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    basis, tags = [], {}
    for entry in _require(data, "basis", "algebra", list):
        b = _require(entry, "id", "algebra.basis", str)
        basis.append(b)
        if "source" in entry and "target" in entry:
            tags[b] = (str(entry["source"]), str(entry["target"]))
    product = {}
    for entry in data.get("product", []):
        product[(_require(entry, "left", "product", str), _require(entry, "right", "product", str))] = \
            dict(_require(entry, "value", "product", dict))
    try:
        return Algebra(ring, basis, product, tags=tags, unit=data.get("unit"), name=str(data.get("name", "")))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
