"""Command-line front end. Every verb prints one JSON document.

Exit status is 0 when every check in the report passes, 1 when a check
fails and 2 on invalid input (with an error document).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog, charp, cobar, suite, ydnichols
from .errors import HopfLiftError, Inadmissible
from .hopf import load_hopf_json, skew_primitives, verify_hopf_axioms
from .rewrite import enumerate_basis, is_confluent, rewrite_report

SCHEMA_VERSION = 1


def parse_primes(text):
    try:
        primes = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise Inadmissible(f"bad prime list {text!r}") from None
    for p in primes:
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise Inadmissible(f"{p} is not a prime")
    if not primes:
        raise Inadmissible("no prime given")
    return primes


def parse_params(text):
    out = {}
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise Inadmissible(f"parameter {item!r} is not of the form name=value")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = int(v)
        except ValueError:
            raise Inadmissible(f"parameter {k} needs an integer value") from None
    return out


def _split_discrete(tag, p, params):
    fam = catalog.FAMILIES.get(tag)
    if fam is None:
        raise Inadmissible(f"unknown family {tag}")
    disc = {k: params[k] for k in fam.discrete if k in params}
    vals = {k: v % p for k, v in params.items() if k not in fam.discrete}
    return disc, vals


def _load_target(target, p, params):
    """Family tag or path to a presentation JSON file."""
    if target.endswith(".json"):
        with open(target) as fh:
            H = load_hopf_json(json.load(fh))
        if params:
            H = H.specialize(params)
        return H, {}
    disc, vals = _split_discrete(target, p, params)
    return catalog.build_family(target, p, vals, **disc), disc


# ------------------------------------------------------------------ verbs


def verify_family(target, p, params):
    H, disc = _load_target(target, p, params)
    out = {"target": target, "p": p, "discrete": disc}
    if H.ring.is_parametric:
        rep = rewrite_report(H.rs)
        out["mode"] = "parametric"
        out["rewrite"] = rep
        out["pass"] = rep["confluent"]
        return out
    out["mode"] = "numeric"
    out["values"] = {k: v for k, v in params.items() if k not in disc}
    if not is_confluent(H.rs):
        out.update({"confluent": False, "pass": False})
        return out
    n = len(enumerate_basis(H.rs))
    ax = verify_hopf_axioms(H, check_confluence=False)
    out.update(confluent=True, basisCount=n, axioms=ax.to_json(),
               primitiveDim=len(skew_primitives(H)))
    ok = ax.all_pass
    if target in catalog.FAMILIES and not target.startswith("GR-"):
        ok = ok and n == p ** 3
    out["pass"] = ok
    return out


def derive_constraints(target, p, params):
    fam = catalog.FAMILIES.get(target)
    if fam is None:
        raise Inadmissible(f"unknown family {target}")
    if any(k in fam.discrete for k in params):
        discs = [{k: params[k] for k in fam.discrete}]
    else:
        discs = suite._discretes(target, p)
    verdicts = [catalog.cross_check_constraints(target, p, **d).to_json() for d in discs]
    return {"target": target, "p": p, "verdicts": verdicts,
            "pass": all(v["match"] for v in verdicts)}


def cohomology(target, p, params):
    if target == "truncated":
        B = cobar.truncated_polynomial(p)
        rep = cobar.cobar_report(B, cobar.omega(p))
        ok = (rep["squareZero"] and rep["dims"]["H2"] == 1 and rep["omegaCocycle"]
              and not rep["omegaCoboundary"])
        return {**rep, "pass": ok}
    if target == "subalgebra":
        eps = params.get("eps", 0)
        A = cobar.coalgebra_from_hopf(cobar.hopf_subalgebra(p, eps))
        rep = cobar.cobar_report(A)
        return {**rep, "eps": eps, "pass": rep["squareZero"] and rep["dims"]["H2"] == 1}
    if target == "coinvariant":
        eps = params.get("eps", 0)
        return {"p": p, "eps": eps, "H2trivialGrading": cobar.coinvariant_h2(p, eps), "pass": True}
    H, _ = _load_target(target, p, params)
    if H.ring.is_parametric:
        raise Inadmissible("cohomology needs every parameter to be given")
    B = cobar.coalgebra_from_hopf(H, adams=len)
    rep = cobar.cobar_report(B)
    return {**rep, "pass": rep["squareZero"]}


def nichols(target, p, params):
    if target == "diagonal":
        V = ydnichols.diagonal_module(p)
    elif target == "jordan":
        V = ydnichols.jordan_module(p)
    elif target in catalog.R_ROWS:
        V = catalog.r_row_module(target, p, **params)
    elif target.endswith(".json"):
        with open(target) as fh:
            V = ydnichols.YDModule.from_json(json.load(fh))
    else:
        raise Inadmissible(f"unknown Nichols target {target}")
    r = ydnichols.nichols_presentation(V)
    return {"target": target, "p": V.p, **r.to_json(), "pass": r.all_certified}


def bosonize(target, p, params):
    if target not in catalog.R_TO_GR:
        raise Inadmissible(f"unknown braided row {target}")
    gr, rename = catalog.R_TO_GR[target]
    discs = [params] if params else catalog.r_row_discretes(target, p)
    cases = []
    for d in discs:
        B = ydnichols.bosonize(catalog.build_r_row(target, p, **d), rename)
        diffs = ydnichols.compare_presentations(B, catalog.build_family(gr, p, **d))
        ax = verify_hopf_axioms(B)
        cases.append({"discrete": d, "rules": ydnichols.normalized_rules(B),
                      "differences": diffs, "axioms": ax.all_pass,
                      "pass": not diffs and ax.all_pass})
    return {"target": target, "grRow": gr, "p": p, "cases": cases,
            "pass": all(c["pass"] for c in cases)}


def lemmas(target, p, params):
    names = sorted(charp.LEMMA_SUITES) if target in ("all", "") else [target]
    for n in names:
        if n not in charp.LEMMA_SUITES:
            raise Inadmissible(f"unknown lemma suite {n}")
    res = [charp.LEMMA_SUITES[n](p) for n in names]
    return {"p": p, "suites": res, "pass": all(r["pass"] for r in res)}


def list_classes(target, p, params):
    if target == "manifest":
        return {"families": catalog.manifest(), "pass": True}
    groups = catalog.CASE_GROUPS if target in ("all", "") else [target]
    out = []
    for g in groups:
        try:
            cl = catalog.list_representatives(g, p)
        except Inadmissible:
            if target in ("all", ""):
                continue
            raise
        row = cl.to_json()
        row["check"] = suite.counts_job(p, g)
        out.append(row)
    return {"p": p, "caseGroups": out, "pass": all(r["check"]["pass"] for r in out)}


VERBS = {
    "verify-family": verify_family,
    "derive-constraints": derive_constraints,
    "cohomology": cohomology,
    "nichols": nichols,
    "bosonize": bosonize,
    "lemmas": lemmas,
    "list": list_classes,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="hopflift", description=__doc__.splitlines()[0])
    ap.add_argument("verb", choices=sorted([*VERBS, "report-all"]))
    ap.add_argument("target", nargs="?", default="",
                    help="family tag, braided row, suite name or JSON file")
    ap.add_argument("--p", default="3", help="prime or comma separated primes")
    ap.add_argument("--params", default="", help="name=value,... (omitted ones stay symbolic)")
    ap.add_argument("--output", help="write the JSON report here instead of stdout")
    ap.add_argument("--parallel", type=int, default=1, help="worker processes")
    return ap


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def run(argv=None):
    """Returns (exit code, report document)."""
    args = build_parser().parse_args(argv)
    try:
        primes = parse_primes(args.p)
        params = parse_params(args.params)
        if args.verb == "report-all":
            doc = suite.report_all(primes, max(args.parallel, 1))
        else:
            fn = VERBS[args.verb]
            if args.verb not in ("lemmas", "list") and not args.target:
                raise Inadmissible(f"{args.verb} needs a target")
            runs = [fn(args.target, p, params) for p in primes]
            doc = runs[0] if len(runs) == 1 else {"runs": runs, "pass": all(r["pass"] for r in runs)}
        code = 0 if doc["pass"] else 1
    except (HopfLiftError, OSError, json.JSONDecodeError) as exc:
        doc = {"error": type(exc).__name__, "message": str(exc), "pass": False}
        code = 2
    doc["schemaVersion"] = SCHEMA_VERSION
    text = dumps(doc)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code, doc


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
