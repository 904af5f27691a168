import json
from pathlib import Path

import pytest

jsonschema = pytest.importorskip("jsonschema")

from hopflift.catalog import build_family, r_row_module
from hopflift.cli import run

SCHEMAS = Path(__file__).resolve().parent.parent / "schemas"


def schema(name):
    return json.loads((SCHEMAS / name).read_text())


@pytest.mark.parametrize("tag,p,values", [("D1b", 3, {"e1": 1, "l": 1}), ("A1a", 3, None),
                                          ("GR-B", 5, None)])
def test_presentations_match_schema(tag, p, values):
    jsonschema.validate(build_family(tag, p, values).to_json(), schema("presentation.v1.json"))


def test_modules_match_schema():
    jsonschema.validate(r_row_module("R-B", 3).to_json(), schema("ydmodule.v1.json"))


@pytest.mark.parametrize("argv", [["report-all", "--p", "2"], ["lemmas", "adjoint", "--p", "3"],
                                  ["verify-family", "Nope", "--p", "3"]])
def test_reports_match_schema(argv, tmp_path):
    out = tmp_path / "r.json"
    run(argv + ["--output", str(out)])
    jsonschema.validate(json.loads(out.read_text()), schema("report.v1.json"))
