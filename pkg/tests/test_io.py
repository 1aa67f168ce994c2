import json

import pytest

from groupmatroid import fixtures as fx
from groupmatroid.exceptions import ValidationError
from groupmatroid.groups import parse_product_spec
from groupmatroid.hypergraph import parse_hypergraph
from groupmatroid.io import (
    builtin_names,
    dumps_report,
    group_header,
    load_hypergraph,
    load_subgroup,
    parse_gens,
)


def test_builtin_fixtures_are_listed():
    names = builtin_names()
    for n in ("h_s3", "diagonal_s3", "sign_matched_s3", "chen", "binary_A", "binary_B", "example"):
        assert n in names


def test_fixture_orders():
    assert [H.order for H in (fx.h_s3(), fx.diagonal_s3(), fx.sign_matched_s3(), fx.chen(),
                              fx.binary_a(), fx.binary_b())] == [6, 6, 18, 36, 8, 8]


def test_gens_file_round_trip(tmp_path):
    path = tmp_path / "h.gens"
    path.write_text("# group: symmetric:3,symmetric:3\n(12)|(12)  # a transposition pair\n\n(1)|(123)\n")
    H = load_subgroup(str(path))
    assert H == fx.h_s3()
    assert load_subgroup(str(path), group="symmetric:3,symmetric:3") == H


def test_gens_errors(tmp_path):
    path = tmp_path / "bad.gens"
    path.write_text("(12)|(12)\n")
    with pytest.raises(ValidationError, match="no --group"):
        load_subgroup(str(path))
    P = parse_product_spec("cyclic:6,cyclic:6")
    with pytest.raises(ValidationError, match="line 2"):
        parse_gens("1|2\n1|x\n", P)
    with pytest.raises(ValidationError, match="file not found"):
        load_subgroup(str(tmp_path / "missing.gens"), group="cyclic:2")
    with pytest.raises(ValidationError, match="no bundled fixture"):
        load_subgroup("builtin:nope")


def test_group_header():
    assert group_header("# hello\n#  group: cyclic:2,cyclic:2\n1|0\n") == "cyclic:2,cyclic:2"
    assert group_header("1|0\n") is None


def test_hypergraph_file_round_trip(tmp_path):
    H = load_hypergraph("builtin:example")
    assert H == fx.hypergraph_example()
    assert parse_hypergraph(H.to_text()) == H


def test_report_is_canonical_json():
    text = dumps_report("rank", {"b": None, "a": 1}, {"z": 1, "y": [1, 2]})
    doc = json.loads(text)
    assert doc["schema"] == 1 and doc["command"] == "rank"
    assert text == dumps_report("rank", {"a": 1, "b": None}, {"y": [1, 2], "z": 1})
    assert text.endswith("\n")
