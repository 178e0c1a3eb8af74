import json
from pathlib import Path

import pytest

from approxforms.algebra import BOOLEAN_DUAL, BOOLEAN_PRIMAL
from approxforms.errors import ParseError, ValidationError
from approxforms.io import (algebra_from_obj, ensemble_from_obj, load_algebra, load_ensemble, load_map,
                            load_poset, map_from_obj, parse_json, poset_from_obj)
from approxforms.poset import BOOL, chain

DATA = Path(__file__).parent / "data"


def test_load_reference_files():
    M = load_poset(DATA / "chain3.json")
    assert M == chain(["a", "b", "c"])
    psi = load_map(DATA / "psi.json")
    assert psi.images() == ("1", "0", "1")
    assert load_algebra(DATA / "primal.json").dissociate == BOOLEAN_PRIMAL.dissociate
    dual = load_algebra(DATA / "dual.json")
    assert dual.dissociate == BOOLEAN_DUAL.dissociate and dual.polarity == "dual"
    assert load_ensemble(DATA / "ensemble_counter.json").p[0] == 0.3


def test_parse_error_has_position():
    with pytest.raises(ParseError) as info:
        parse_json('{"elements": ["a",\n  ]}', "bad.json")
    assert info.value.line == 2
    assert info.value.column == 3
    assert "bad.json:2:3" in str(info.value)


def test_missing_file_is_a_parse_error(tmp_path):
    with pytest.raises(ParseError):
        load_poset(tmp_path / "absent.json")


def test_poset_validation():
    with pytest.raises(ValidationError):
        poset_from_obj({"le": []})
    with pytest.raises(ValidationError):
        poset_from_obj({"elements": ["a", 1]})
    with pytest.raises(ValidationError):
        poset_from_obj({"elements": ["a", "b"], "le": [["a", "b"], ["b", "a"]]})
    with pytest.raises(ValidationError):
        poset_from_obj({"elements": ["a"], "le": [["a", "z"]]})
    with pytest.raises(ValidationError):
        poset_from_obj([1, 2])


def test_map_referencing_absent_element():
    M = chain(["a", "b"])
    with pytest.raises(ValidationError, match="absent from the domain"):
        map_from_obj({"map": {"a": "0", "b": "1", "q": "1"}}, domain=M, codomain=BOOL)
    with pytest.raises(ValidationError, match="no image"):
        map_from_obj({"map": {"a": "0"}}, domain=M, codomain=BOOL)
    with pytest.raises(ValidationError, match="absent from the codomain"):
        map_from_obj({"map": {"a": "0", "b": "7"}}, domain=M, codomain=BOOL)


def test_map_domain_must_agree_with_given_poset():
    obj = {"domain": {"elements": ["a", "b"]}, "codomain": BOOL.to_dict(), "map": {"a": "0", "b": "1"}}
    with pytest.raises(ValidationError, match="domain differs"):
        map_from_obj(obj, domain=chain(["a", "b"]))
    assert map_from_obj(obj).images() == ("0", "1")


def test_algebra_validation():
    base = BOOLEAN_PRIMAL.to_dict()
    assert algebra_from_obj(base).dissociate == BOOLEAN_PRIMAL.dissociate
    with pytest.raises(ValidationError):
        algebra_from_obj({**base, "polarity": "sideways"})
    with pytest.raises(ValidationError):
        algebra_from_obj({**base, "dissociate": [["0", "0"]]})
    with pytest.raises(ValidationError):
        algebra_from_obj({**base, "null_op": ["0", "9"]})
    with pytest.raises(ValidationError):
        algebra_from_obj({k: v for k, v in base.items() if k != "codomain"})


def test_probabilities_must_sum_to_one():
    with pytest.raises(ValidationError, match="sum to"):
        ensemble_from_obj({"p": [0.9] + [0.0] * 7})
    with pytest.raises(ValidationError):
        ensemble_from_obj({"p": [0.5] * 4})
    with pytest.raises(ValidationError):
        ensemble_from_obj({"p": ["x"] * 8})
    # within 1e-12 is accepted
    assert ensemble_from_obj({"p": [0.5 + 5e-13, 0.5] + [0.0] * 6})


def test_round_trip_through_json(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps(chain(["x", "y", "z"]).to_dict()))
    assert load_poset(p) == chain(["x", "y", "z"])
