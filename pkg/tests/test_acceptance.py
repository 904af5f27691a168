"""Acceptance criteria 1-10, all exact.

Each test records a one-line verdict; the lines are printed at the end of the
pytest run (see conftest.py) and when this file is run as a script.
"""

import subprocess
import sys

import pytest

from hopflift.suite import CRITERIA, report_all

VERDICTS = {}

# Known analysis for criteria that are red: three of the five named A3
# points are not confluent at p = 2 (g-conjugation swaps x and y, which
# forces l = t, m = s, al = be on top of the A2 conditions), so their
# quotients collapse below dimension 8 and they cannot be Hopf algebras of
# the stated shape.
A3_NOTE = ("A3b, A3c, A3e at p = 2 are not confluent: conjugation by g swaps x and y, "
           "which adds l = t, m = s, al = be to the A2 conditions; completion collapses "
           "the quotient below p^3")


@pytest.fixture(scope="module")
def report():
    return report_all([2, 3, 5])


def _record(n, ok, detail=""):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({CRITERIA.get(n, 'determinism')})"
    if detail:
        line += f" -- {detail}"
    VERDICTS[n] = line
    print(line)
    return ok


def _failed_jobs(report, n):
    return [f"{j['check']} {j['key']} p={j['p']}" for j in report["criteria"][str(n)]["jobs"]
            if not j["pass"]]


def _check(report, n, note=""):
    crit = report["criteria"][str(n)]
    bad = _failed_jobs(report, n)
    detail = "" if crit["pass"] else f"failed jobs: {', '.join(bad)}" + (f"; {note}" if note else "")
    assert _record(n, crit["pass"], detail), detail


def test_criterion_1_dimensions(report):
    jobs = report["criteria"]["1"]["jobs"]
    assert {j["p"] for j in jobs} == {2, 3, 5}
    sampled = {j["key"] for j in jobs if j["p"] == 5}
    assert sampled == {"A1a", "Ca", "D1a", "D1b", "D1c", "D2a", "D2b"}
    _check(report, 1, A3_NOTE)


def test_criterion_2_constraint_loci(report):
    jobs = report["criteria"]["2"]["jobs"]
    printed = {(j["key"], j["p"]) for j in jobs
               if any(v["statedMarker"] == "printed" for v in j["verdicts"])}
    assert printed == {("A1a", 2), ("A1a", 3), ("Ca", 2), ("Ca", 3), ("Cb2", 2)}
    _check(report, 2)


def test_criterion_3_nichols(report):
    _check(report, 3)


def test_criterion_4_bosonization(report):
    rows = {(j["key"], j["p"]) for j in report["criteria"]["4"]["jobs"]}
    assert rows == {("R-A1", 3), ("R-A2", 3), ("R-A3", 2), ("R-B", 3), ("R-C", 3),
                    ("R-D1", 3), ("R-D2", 3)}
    _check(report, 4)


def test_criterion_5_axioms(report):
    _check(report, 5, A3_NOTE)


def test_criterion_6_cohomology(report):
    _check(report, 6)


def test_criterion_7_lemmas(report):
    _check(report, 7)


def test_criterion_8_b3(report):
    b3_dims = [j for j in report["criteria"]["1"]["jobs"] if j["key"] == "B3"]
    b3_axioms = [j for j in report["criteria"]["5"]["jobs"] if j["key"] == "B3"]
    ok = report["criteria"]["8"]["pass"] and all(j["pass"] for j in b3_dims + b3_axioms)
    assert _record(8, ok)


def test_criterion_9_counts(report):
    findings = [f for f in report["findings"] if "summary states" in f]
    crit = report["criteria"]["9"]
    detail = "; ".join(findings)
    assert _record(9, crit["pass"], f"findings: {detail}" if detail else "")


def _cli(parallel):
    out = subprocess.run(
        [sys.executable, "-m", "hopflift", "report-all", "--p", "2,3", "--parallel", str(parallel)],
        capture_output=True, check=False)
    assert out.returncode in (0, 1), out.stderr.decode()
    return out.stdout


def test_criterion_10_determinism():
    a, b, c = _cli(1), _cli(1), _cli(4)
    ok = a == b == c and len(a) > 0
    assert _record(10, ok, "" if ok else "report bytes differ"), "report bytes differ"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
