import json

import pytest

from hopflift.cli import main, parse_params, parse_primes, run
from hopflift.errors import Inadmissible


def call(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_verify_family_numeric(capsys):
    code, doc = call(capsys, "verify-family", "A1a", "--p", "3",
                     "--params", "e1=1,e2=1,l=2,s=0,t=0")
    assert code == 0 and doc["pass"] and doc["basisCount"] == 27


def test_verify_family_parametric(capsys):
    code, doc = call(capsys, "verify-family", "D2b", "--p", "3")
    assert code == 0 and doc["mode"] == "parametric" and doc["rewrite"]["confluent"]
    code, doc = call(capsys, "verify-family", "A1a", "--p", "3")
    assert code == 1 and doc["rewrite"]["locusSize"] < doc["rewrite"]["parameterSpaceSize"]


def test_failed_check_gives_exit_one(capsys):
    code, doc = call(capsys, "verify-family", "A3b", "--p", "2")
    assert code == 1 and doc["confluent"] is False


def test_derive_constraints(capsys):
    code, doc = call(capsys, "derive-constraints", "A1a", "--p", "3")
    assert code == 0 and doc["verdicts"][0]["match"]


def test_lemmas(capsys):
    code, doc = call(capsys, "lemmas", "pthpower", "--p", "5")
    assert code == 0 and all(c["pass"] for c in doc["suites"][0]["cases"])


@pytest.mark.parametrize("target,p", [("diagonal", 5), ("jordan", 2), ("R-B", 3)])
def test_nichols(capsys, target, p):
    code, doc = call(capsys, "nichols", target, "--p", str(p))
    assert code == 0 and doc["basisCount"] == (16 if (target, p) == ("jordan", 2) else p * p)


def test_bosonize_and_cohomology(capsys):
    code, doc = call(capsys, "bosonize", "R-C", "--p", "3")
    assert code == 0 and all(c["differences"] == [] for c in doc["cases"])
    code, doc = call(capsys, "cohomology", "truncated", "--p", "3")
    assert code == 0 and doc["dims"]["H2"] == 1
    code, doc = call(capsys, "cohomology", "subalgebra", "--p", "2", "--params", "eps=1")
    assert code == 0 and doc["dims"]["H2"] == 1


def test_list_reports_discrepancy(capsys):
    code, doc = call(capsys, "list", "A1u", "--p", "3")
    row = doc["caseGroups"][0]
    assert code == 0 and (row["finiteCount"], row["familyCount"]) == (12, 2)
    assert "discrepancy" in row["check"]


def test_multiple_primes(capsys):
    code, doc = call(capsys, "lemmas", "adjoint", "--p", "3,5")
    assert code == 0 and [r["p"] for r in doc["runs"]] == [3, 5]


@pytest.mark.parametrize("argv", [
    ["verify-family", "Nope", "--p", "3"],
    ["verify-family", "A1a", "--p", "4"],
    ["verify-family", "A3", "--p", "3"],
    ["verify-family", "A1a", "--p", "3", "--params", "e1"],
    ["nichols", "/nonexistent.json", "--p", "3"],
])
def test_bad_input_gives_structured_error(capsys, argv):
    code, doc = call(capsys, *argv)
    assert code == 2 and doc["error"] and doc["message"] and doc["pass"] is False


def test_output_file_and_sorted_keys(tmp_path):
    out = tmp_path / "r.json"
    code, doc = run(["lemmas", "adjoint", "--p", "3", "--output", str(out)])
    text = out.read_text()
    assert code == 0 and json.loads(text) == doc
    assert text == json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def test_json_presentation_input(tmp_path, capsys):
    from hopflift.catalog import build_family

    H = build_family("D1b", 3, {"e1": 1, "l": 1})
    path = tmp_path / "h.json"
    path.write_text(json.dumps(H.to_json()))
    code, doc = call(capsys, "verify-family", str(path), "--p", "3")
    assert code == 0 and doc["basisCount"] == 27


def test_argument_parsers():
    assert parse_primes("2, 3") == [2, 3]
    assert parse_params("a=1,b=-1") == {"a": 1, "b": -1}
    with pytest.raises(Inadmissible):
        parse_primes("9")
