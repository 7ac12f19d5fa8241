import json

import pytest

from conftest import DATA, elliptic_model
from toriclg import serialize as ser
from toriclg.exactlinalg import TorsionError


def test_dumps_canonical():
    assert ser.dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}\n'
    assert ser.dumps({"a": 1}, pretty=True) == '{\n  "a": 1\n}\n'


def test_loads_validation():
    with pytest.raises(ser.SchemaError) as e:
        ser.loads("[1]")
    assert e.value.path == "$"
    with pytest.raises(ser.SchemaError):
        ser.loads('{"format_version": "1", "type": "nope"}')


def test_sigma_round_trip():
    data = ser.loads((DATA / "elliptic.json").read_text())
    src = ser.sigma_from_json(data)
    again = ser.sigma_from_json(json.loads(json.dumps(src.to_json())))
    assert again.build().B.matrix == elliptic_model().B.matrix


def test_model_round_trip():
    src = ser.sigma_from_json(ser.loads((DATA / "elliptic.json").read_text()))
    M = src.build()
    M2, src2 = ser.load_model(json.loads(ser.dumps(ser.model_to_json(M, src))))
    assert M2.A == M.A and M2.B == M.B and src2 is not None


def test_section_parsing():
    S = ser.section_from_json({"terms": [{"j": 1, "nu": [0, 0], "lift": {"re": "1/2", "im": 1}}]})
    assert S.terms[0][0] == 0 and S.terms[0][2].im == 1
    assert ser.section_to_json(S)["terms"][0]["j"] == 1
    with pytest.raises(ser.SchemaError):
        ser.section_from_json({"terms": [{"j": 0, "nu": [0, 0]}]})


def test_schema_paths():
    data = ser.loads((DATA / "elliptic.json").read_text())
    data["K"] = [0, 0]
    with pytest.raises(ser.SchemaError) as e:
        ser.sigma_from_json(data)
    assert e.value.path == "$.K"


def test_torsion_base_is_not_a_schema_error():
    data = ser.loads((DATA / "elliptic.json").read_text())
    data["base"]["div"] = [[1, 1], [1, -1], [-1, -1], [-1, 1]]
    with pytest.raises(TorsionError):
        ser.sigma_from_json(data)


def test_polyhedron_files():
    assert len(ser.polyhedron_from_json(ser.loads((DATA / "stopsign.json").read_text())).points) == 8
    P = ser.polyhedron_from_json(ser.loads((DATA / "diamond.json").read_text()))
    assert ser.polyhedron_from_json(ser.polyhedron_to_json(P)) == P
