import json

import pytest

from dihom.corpus import corpus
from dihom.exactlin import GF
from dihom.nualg import path_algebra, same_structure, unitalize
from dihom.serialize import (SchemaError, algebra_from_json, category_from_json, category_to_json, dumps,
                             load_category, save_category)

CORPUS = corpus()


@pytest.mark.parametrize("key", sorted(CORPUS))
def test_category_round_trip(key, tmp_path):
    C = CORPUS[key]
    assert category_from_json(json.loads(dumps(category_to_json(C)))) == C
    path = tmp_path / "c.json"
    save_category(C, path)
    assert load_category(path) == C
    assert path.read_text() == dumps(category_to_json(C))


def test_builders_match_direct_construction():
    chain = category_from_json({"builder": "chain", "length": 3, "dim": 3})
    assert chain == CORPUS["chain3@D3"]
    poset = category_from_json({"builder": "poset", "objects": ["0", "1"], "relation": [["0", "1"]],
                                "names": [["0", "1", "u"]], "name": "E1"})
    assert poset == CORPUS["E1@D2"]


def test_builder_errors_become_schema_errors():
    with pytest.raises(SchemaError):
        category_from_json({"builder": "poset", "objects": ["a", "b"], "relation": [["a", "b"], ["b", "a"]]})
    with pytest.raises(SchemaError):
        category_from_json({"builder": "teapot"})
    with pytest.raises(SchemaError):
        category_from_json([1, 2])


@pytest.mark.parametrize("ring", [None, GF(7)])
def test_algebra_round_trip(ring):
    A = path_algebra(CORPUS["E2@D2"], ring) if ring else path_algebra(CORPUS["E2@D2"])
    for alg in (A, unitalize(A)):
        back = algebra_from_json(json.loads(dumps(alg.to_json())))
        assert same_structure(back, alg)


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
