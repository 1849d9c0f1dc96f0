import json

import pytest

from gafcheck.errors import MalformedCycles, ParseError
from gafcheck.io import load_json, loads, perm_group_from_json, permutation_from_json, tree_from_json
from gafcheck.perm import Permutation


def test_syntax_error_has_position():
    with pytest.raises(ParseError) as info:
        loads('{"a": 1,\n "b": }')
    assert info.value.payload == {"line": 2, "column": 7}
    assert "line 2, column 7" in str(info.value)


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load_json(tmp_path / "absent.json")


def test_round_trip_file(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"degree": 3, "generators": ["(1 2)", {"images": [2, 3, 1]}]}))
    n, gens = perm_group_from_json(load_json(path))
    assert n == 3 and gens == [Permutation((2, 1, 3)), Permutation((2, 3, 1))]


def test_permutation_forms():
    assert permutation_from_json([3, 1, 2], 3) == Permutation((3, 1, 2))
    assert permutation_from_json("(1 3 2)", 3) == Permutation((3, 1, 2))
    with pytest.raises(MalformedCycles):
        permutation_from_json("(1 4)", 3)


def test_missing_field():
    with pytest.raises(ParseError):
        perm_group_from_json({"generators": []})


def test_tree_descriptor():
    T = tree_from_json({"n": 3, "edges": [[1, 2], [2, 3]]})
    assert T.n == 3 and T.distance(1, 3) == 2
    with pytest.raises(ParseError):
        tree_from_json({"edges": [[1, 2]]})
