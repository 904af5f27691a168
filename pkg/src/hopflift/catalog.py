"""Constructors for the braided Hopf algebras R, their bosonizations gr H and
all lifted families H of dimension p^3, plus the printed constraint sets and
representative lists used to cross-check the classification."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .errors import Inadmissible
from .hopf import HopfPresentation
from .ncalg import Alphabet, NCPoly, parse_ncpoly
from .rewrite import RewriteSystem, confluence_constraints
from .scalars import ParamRing, PrimeField, full_locus, inv_mod, vanishing_locus


def omega_coefficients(p):
    """(p-1)!/(i!(p-i)!) mod p for i = 1..p-1 (equivalently binom(p, i)/p)."""
    return {i: (math.comb(p, i) // p) % p for i in range(1, p)}


def half(p):
    return inv_mod(2, p)


def _pw(sym, n):
    """Text for sym^n, or 1 when n == 0."""
    if n == 0:
        return "1"
    return sym if n == 1 else f"{sym}^{n}"


def _omega_text(p, a, g=None, eps=0):
    """Σ c_i a^i g^(eps(p-i)) ⊗ a^(p-i) as tensor text."""
    terms = []
    for i, c in omega_coefficients(p).items():
        if c == 0:
            continue
        left = _pw(a, i)
        if g is not None and eps:
            k = (eps * (p - i))
            left = f"{left}.{_pw(g, k)}" if k else left
        terms.append(f"{c}*{left}⊗{_pw(a, p - i)}")
    return " + ".join(terms)


@dataclass
class Blueprint:
    """Everything needed to instantiate one presentation."""

    precedence: list
    grouplike: list
    rules: list  # (lhs text, rhs text)
    coproduct: dict
    params: list = field(default_factory=list)
    eps: list = field(default_factory=list)
    antipode: dict = field(default_factory=dict)
    weights: dict | None = None


@dataclass(frozen=True)
class FamilyId:
    tag: str
    p: int
    discrete: tuple = ()  # sorted (name, value) pairs
    values: tuple | None = None  # sorted (name, value) pairs; None = fully parametric

    def label(self):
        parts = [self.tag, f"p={self.p}"]
        parts += [f"{k}={v}" for k, v in self.discrete]
        if self.values:
            parts += [f"{k}={v}" for k, v in self.values]
        return " ".join(parts)

    def key(self):
        return self.label()


# ------------------------------------------------------------------ blueprints
#
# Three-generator families use the precedence g > x > y (irreducible words
# y^a x^b g^c); case B needs g > y > x so that yx leads the Jordan relation.
# Grouplike generators get weight 0 so that every relation g.v - v.g - (group
# algebra element) has g.v as its leading word.


def _a1a(p, d):
    return Blueprint(
        ["g", "x", "y"], ["g"],
        [(_pw("g", p), "1"),
         ("g.x", "x.g + e1*(g - g^2)"),
         ("g.y", "y.g"),
         (_pw("x", p), "e1*x + l*y"),
         (_pw("y", p), "e2*y"),
         ("x.y", "y.x + s*x + t*(1 - g)")],
        {"x": "x⊗1 + g⊗x", "y": "y⊗1 + 1⊗y"},
        ["e1", "e2", "l", "s", "t"], ["e1", "e2"])


def _a1b(p, d):
    u = d["u"]
    # display: xy - yx + u e1 y - e2 x = t (1 - g^(u+1))
    return Blueprint(
        ["g", "x", "y"], ["g"],
        [(_pw("g", p), "1"),
         ("g.x", "x.g + e1*(g - g^2)"),
         ("g.y", f"y.g + e2*(g - g^{u + 1})"),
         (_pw("x", p), "e1*x"),
         (_pw("y", p), "e2*y"),
         ("x.y", f"y.x - {u}*e1*y + e2*x + t*(1 - g^{u + 1})")],
        {"x": "x⊗1 + g⊗x", "y": f"y⊗1 + {_pw('g', u)}⊗y"},
        ["e1", "e2", "t"], ["e1", "e2"])


def _a2_like(p, swap):
    gx, gy = ("y.g", "x.g") if swap else ("x.g", "y.g")
    return Blueprint(
        ["g", "x", "y"], ["g"],
        [(_pw("g", p), "1"),
         ("g.x", gx),
         ("g.y", gy),
         (_pw("x", p), "l*x + m*y"),
         (_pw("y", p), "s*x + t*y"),
         ("x.y", "y.x + al*x + be*y")],
        {"x": "x⊗1 + 1⊗x", "y": "y⊗1 + 1⊗y"},
        ["l", "m", "s", "t", "al", "be"], [])


def _a2(p, d):
    return _a2_like(p, False)


def _a3(p, d):
    return _a2_like(p, True)


def _b3(p, d):
    # xy - yx = -x^2 + (e+m) x - e y + t (1 - g^2), read as a rule for yx
    return Blueprint(
        ["g", "y", "x"], ["g"],
        [("g^3", "1"),
         ("g.x", "x.g + e*(g - g^2)"),
         ("g.y", "y.g + x.g + m*(g - g^2)"),
         ("x^3", "e*x"),
         ("y^3", "e*y^2 - (m*e - t - m^2)*y"),
         ("y.x", "x.y + x^2 - (e + m)*x + e*y - t*(1 - g^2)")],
        {"x": "x⊗1 + g⊗x", "y": "y⊗1 + g⊗y"},
        ["e", "m", "t"], ["e"])


def _bgen(p, d):
    fs = [f"f{i}" for i in range(1, p)]
    yp = " + ".join(f"f{i}*{_pw('y', i)}" for i in range(1, p))
    h = half(p)
    return Blueprint(
        ["g", "y", "x"], ["g"],
        [(_pw("g", p), "1"),
         ("g.x", "x.g + e*(g - g^2)"),
         ("g.y", "y.g + x.g + m*(g - g^2)"),
         (_pw("x", p), "e*x"),
         (_pw("y", p), yp),
         ("y.x", f"x.y - {h}*x^2 - (m - {h}*e)*x + e*y - t*(1 - g^2)")],
        {"x": "x⊗1 + g⊗x", "y": "y⊗1 + g⊗y"},
        ["e", "m", "t"] + fs, ["e"])


def _ca(p, d):
    if p == 2:
        yp = "t*x + e3*y"
    else:
        yp = f"(t + {half(p)}*s^{p - 1}*e3)*x + e3*y"
    return Blueprint(
        ["g", "x", "y"], ["g"],
        [(_pw("g", p), "1"),
         ("g.x", "x.g"),
         ("g.y", "y.g"),
         (_pw("x", p), "e3*x"),
         (_pw("y", p), yp),
         ("x.y", "y.x + s*x")],
        {"x": "x⊗1 + 1⊗x", "y": "y⊗1 + 1⊗y + " + _omega_text(p, "x")},
        ["e3", "s", "t"], ["e3"])


def _cb2(p, d):
    return Blueprint(
        ["g", "x", "y"], ["g"],
        [("g^2", "1"),
         ("g.x", "x.g + e1*(g - g^2)"),
         ("g.y", "y.g + e1*(1 + g + x + x.g)"),
         ("x^2", "e1*x"),
         ("y^2", "e1*y + t*(x + x.g)"),
         ("x.y", "y.x + s*x + t*(1 - g)")],
        {"x": "x⊗1 + g⊗x", "y": "y⊗1 + 1⊗y + " + _omega_text(2, "x", "g", 1)},
        ["e1", "s", "t"], ["e1"])


def _cbp(p, d):
    return Blueprint(
        ["g", "x", "y"], ["g"],
        [(_pw("g", p), "1"),
         ("g.x", "x.g"),
         ("g.y", "y.g"),
         (_pw("x", p), "0"),
         (_pw("y", p), f"-t^{p - 1}*(1 - g)^{p - 1}*x"),
         ("x.y", "y.x + t*(1 - g)")],
        {"x": "x⊗1 + g⊗x", "y": "y⊗1 + 1⊗y + " + _omega_text(p, "x", "g", 1)},
        ["t"], [])


def _d1(variant):
    def build(p, d):
        rules = [(_pw("g", p * p), "1")]
        if variant == "a":
            rules += [("g.x", "x.g"), (_pw("x", p), "l*x")]
            cop, params, eps = "x⊗1 + 1⊗x", ["l"], []
        elif variant == "b":
            rules += [("g.x", "x.g + e1*(g - g^2)"), (_pw("x", p), f"e1*x + l*(1 - g^{p})")]
            cop, params, eps = "x⊗1 + g⊗x", ["e1", "l"], ["e1"]
        else:
            rules += [("g.x", f"x.g + e1*(g - g^{p + 1})"), (_pw("x", p), "0")]
            cop, params, eps = f"x⊗1 + g^{p}⊗x", ["e1"], ["e1"]
        return Blueprint(["g", "x"], ["g"], rules, {"x": cop}, params, eps)
    return build


def _d2(variant):
    def build(p, d):
        rules = [(_pw("g1", p), "1"), (_pw("g2", p), "1"), ("g1.g2", "g2.g1")]
        if variant == "a":
            rules += [("g1.x", "x.g1"), ("g2.x", "x.g2"), (_pw("x", p), "l*x")]
            cop, params, eps = "x⊗1 + 1⊗x", ["l"], []
        else:
            rules += [("g1.x", "x.g1 + e1*(g1 - g1^2)"),
                      ("g2.x", "x.g2 + t*(g2 - g2.g1)"),
                      (_pw("x", p), "e1*x")]
            cop, params, eps = "x⊗1 + g1⊗x", ["e1", "t"], ["e1"]
        return Blueprint(["g1", "g2", "x"], ["g1", "g2"], rules, {"x": cop}, params, eps)
    return build


# gr H rows, transcribed from the table of bosonizations


def _gr_common(p, ga="a.g", gb="b.g", ab=("a.b", "b.a"), prec=("g", "a", "b")):
    return [(_pw("g", p), "1"), ("g.a", ga), ("g.b", gb),
            (_pw("a", p), "0"), (_pw("b", p), "0"), ab], list(prec)


def _gr_a1(p, d):
    u = d["u"]
    rules, prec = _gr_common(p)
    return Blueprint(prec, ["g"], rules,
                     {"a": "a⊗1 + g⊗a", "b": f"b⊗1 + {_pw('g', u)}⊗b"},
                     antipode={"g": _pw("g", p - 1), "a": f"-a.{_pw('g', p - 1)}",
                               "b": f"-b.{_pw('g', (p - u) % p)}"})


def _gr_a2(p, d):
    rules, prec = _gr_common(p)
    return Blueprint(prec, ["g"], rules, {"a": "a⊗1 + 1⊗a", "b": "b⊗1 + 1⊗b"},
                     antipode={"g": _pw("g", p - 1), "a": "-a", "b": "-b"})


def _gr_a3(p, d):
    rules, prec = _gr_common(p, ga="b.g", gb="a.g")
    return Blueprint(prec, ["g"], rules, {"a": "a⊗1 + 1⊗a", "b": "b⊗1 + 1⊗b"},
                     antipode={"g": _pw("g", p - 1), "a": "-a", "b": "-b"})


def _gr_b(p, d):
    # ab - ba = 1/2 a^2 read as a rule for ba
    rules, prec = _gr_common(p, gb="(a + b).g", ab=("b.a", f"a.b - {half(p)}*a^2"),
                             prec=("g", "b", "a"))
    gi = _pw("g", p - 1)
    return Blueprint(prec, ["g"], rules, {"a": "a⊗1 + g⊗a", "b": "b⊗1 + g⊗b"},
                     antipode={"g": gi, "a": f"-a.{gi}", "b": f"(a - b).{gi}"})


def _gr_c(p, d):
    e = d["eps"]
    rules, prec = _gr_common(p)
    ge = _pw("g", e)
    return Blueprint(prec, ["g"], rules,
                     {"a": f"a⊗1 + {ge}⊗a", "b": "b⊗1 + 1⊗b + " + _omega_text(p, "a", "g", e)},
                     antipode={"g": _pw("g", p - 1), "a": f"-a.{_pw('g', (-e) % p)}", "b": "-b"})


def _gr_d1(p, d):
    e = d["eps"]
    q = p * p
    return Blueprint(["g", "a"], ["g"],
                     [(_pw("g", q), "1"), ("g.a", "a.g"), (_pw("a", p), "0")],
                     {"a": f"a⊗1 + {_pw('g', e)}⊗a"},
                     antipode={"g": _pw("g", q - 1), "a": f"-a.{_pw('g', (-e) % q)}"})


def _gr_d2(p, d):
    e = d["eps"]
    return Blueprint(["g1", "g2", "a"], ["g1", "g2"],
                     [(_pw("g1", p), "1"), (_pw("g2", p), "1"), ("g1.g2", "g2.g1"),
                      ("g1.a", "a.g1"), ("g2.a", "a.g2"), (_pw("a", p), "0")],
                     {"a": f"a⊗1 + {_pw('g1', e)}⊗a"},
                     antipode={"g1": _pw("g1", p - 1), "g2": _pw("g2", p - 1),
                               "a": f"-a.{_pw('g1', (-e) % p)}"})


# ------------------------------------------------------------------ registry


@dataclass
class FamilyDef:
    tag: str
    anchor: str
    build: object
    discrete: dict = field(default_factory=dict)  # name -> function p -> allowed values
    primes: object = None  # predicate on p
    group: str = "Cp"

    def admissible(self, p):
        return self.primes is None or self.primes(p)


def _u_range(p):
    return list(range(1, p))


FAMILIES = {
    "A1a": FamilyDef("A1a", "Case A1, u = 0 liftings", _a1a),
    "A1b": FamilyDef("A1b", "Case A1, u != 0 liftings", _a1b, {"u": _u_range}),
    "A2": FamilyDef("A2", "Case A2 liftings, generic restricted Lie data", _a2),
    "A3": FamilyDef("A3", "Case A3 liftings (p = 2), generic data", _a3, primes=lambda p: p == 2),
    "B3": FamilyDef("B3", "Case B liftings at p = 3", _b3, primes=lambda p: p == 3),
    "Bgen": FamilyDef("Bgen", "Case B conjectural liftings for p > 3 (experimental)", _bgen,
                      primes=lambda p: p > 3),
    "Ca": FamilyDef("Ca", "Case C, eps = 0 liftings (before the constraint sigma = 0)", _ca),
    "Cb2": FamilyDef("Cb2", "Case C, eps = 1 liftings at p = 2", _cb2, primes=lambda p: p == 2),
    "CbP": FamilyDef("CbP", "Case C, eps = 1 liftings for p > 2 with gx = xg", _cbp,
                     primes=lambda p: p > 2),
    "D1a": FamilyDef("D1a", "Case D1, eps = 0 liftings", _d1("a"), group="Cp2"),
    "D1b": FamilyDef("D1b", "Case D1, eps = 1 liftings", _d1("b"), group="Cp2"),
    "D1c": FamilyDef("D1c", "Case D1, eps = p liftings", _d1("c"), group="Cp2"),
    "D2a": FamilyDef("D2a", "Case D2, eps = 0 liftings", _d2("a"), group="CpxCp"),
    "D2b": FamilyDef("D2b", "Case D2, eps = 1 liftings", _d2("b"), group="CpxCp"),
    "GR-A1": FamilyDef("GR-A1", "gr H, type A1", _gr_a1, {"u": lambda p: list(range(p))}),
    "GR-A2": FamilyDef("GR-A2", "gr H, type A2", _gr_a2),
    "GR-A3": FamilyDef("GR-A3", "gr H, type A3 (p = 2)", _gr_a3, primes=lambda p: p == 2),
    "GR-B": FamilyDef("GR-B", "gr H, type B (p > 2)", _gr_b, primes=lambda p: p > 2),
    "GR-C": FamilyDef("GR-C", "gr H, type C", _gr_c, {"eps": lambda p: [0, 1]}),
    "GR-D1": FamilyDef("GR-D1", "gr H, type D1", _gr_d1, {"eps": lambda p: [0, 1, p]},
                       group="Cp2"),
    "GR-D2": FamilyDef("GR-D2", "gr H, type D2", _gr_d2, {"eps": lambda p: [0, 1]},
                       group="CpxCp"),
}

# Named points of the generic A2/A3 families.
A2_VARIANTS = {
    "a": {},
    "b": {"l": 1},
    "c": {"m": 1},
    "d": {"l": 1, "t": 1},
    "e": {"l": 1, "be": 1},
}
for _v in A2_VARIANTS:
    FAMILIES[f"A2{_v}"] = FamilyDef(f"A2{_v}", f"Case A2, class A2-{_v}", _a2)
    FAMILIES[f"A3{_v}"] = FamilyDef(f"A3{_v}", f"Case A3, class A3-{_v}", _a3,
                                    primes=lambda p: p == 2)


def _fixed_values(tag):
    if len(tag) == 3 and tag[:2] in ("A2", "A3") and tag[2] in A2_VARIANTS:
        base = {n: 0 for n in ("l", "m", "s", "t", "al", "be")}
        base.update(A2_VARIANTS[tag[2]])
        return base
    return None


def blueprint(tag, p, **discrete):
    fam = FAMILIES.get(tag)
    if fam is None:
        raise Inadmissible(f"unknown family {tag}")
    if not fam.admissible(p):
        raise Inadmissible(f"{tag} is not defined for p = {p}")
    for name, allowed in fam.discrete.items():
        if name not in discrete:
            raise Inadmissible(f"{tag} needs the discrete parameter {name}")
        if discrete[name] not in allowed(p):
            raise Inadmissible(f"{name} = {discrete[name]} is not allowed for {tag} at p = {p}")
    extra = set(discrete) - set(fam.discrete)
    if extra:
        raise Inadmissible(f"{tag} takes no parameter {sorted(extra)}")
    return fam.build(p, discrete)


def family_params(tag, p, **discrete):
    bp = blueprint(tag, p, **discrete)
    fixed = _fixed_values(tag)
    if fixed is not None:
        return [], []
    return list(bp.params), list(bp.eps)


def _substitute(text, values):
    for name, v in values.items():
        text = re.sub(rf"\b{re.escape(name)}\b", f"({v})", text)
    return text


def build_family(tag, p, values=None, **discrete):
    """HopfPresentation for a family.

    ``values`` maps parameter names to residues; parameters left out stay
    symbolic (the coefficient ring is then F_p[remaining parameters]).
    """
    bp = blueprint(tag, p, **discrete)
    vals = dict(_fixed_values(tag) or {})
    vals.update(values or {})
    unknown = set(vals) - set(bp.params)
    if unknown:
        raise Inadmissible(f"{tag} has no parameters {sorted(unknown)}")
    for name in bp.eps:
        if name in vals and vals[name] not in (0, 1):
            raise Inadmissible(f"{name} must be 0 or 1")
    free = [n for n in bp.params if n not in vals]
    ring = ParamRing(p, free, [e for e in bp.eps if e in free]) if free else PrimeField(p)
    weights = bp.weights or {g: 0 for g in bp.grouplike}
    alphabet = Alphabet(bp.precedence, weights)
    sub = lambda s: _substitute(s, vals)
    rules = []
    for lhs, rhs in bp.rules:
        lw = parse_ncpoly(lhs, PrimeField(2), alphabet)
        (word,) = lw.terms
        rules.append((word, parse_ncpoly(sub(rhs), ring, alphabet)))
    disc = tuple(sorted(discrete.items()))
    fid = FamilyId(tag, p, disc, tuple(sorted(vals.items())) if vals else None)
    rs = RewriteSystem(alphabet, rules, ring, fid.label())
    cop = {k: sub(v) for k, v in bp.coproduct.items()}
    anti = {k: sub(v) for k, v in bp.antipode.items()}
    H = HopfPresentation(rs, cop, {}, anti, bp.grouplike, fid.label())
    H.family = fid
    return H


# ------------------------------------------------------------------ constraints


def printed_constraints(tag, p, **discrete):
    """The printed coefficient constraints, as ParamPolys over the family ring.

    Returns (polys, marker) where marker is "printed", "none-needed" (the
    family is stated to have no ambiguity condition) or "not-printed".
    """
    params, eps = family_params(tag, p, **discrete)
    R = ParamRing(p, params, eps) if params else None
    v = R.var if R else None
    if tag == "A1a":
        e1, e2, l, s, t = (v(n) for n in ("e1", "e2", "l", "s", "t"))
        q = e2 - s ** (p - 1)
        return [e1 * s, l * s, l * t, q * s, q * t], "printed"
    if tag == "Ca":
        e3, s, t = (v(n) for n in ("e3", "s", "t"))
        third = t * s if p == 2 else (t + s ** (p - 1) * e3 * half(p)) * s
        return [e3 * s, (e3 - s ** (p - 1)) * s, third], "printed"
    if tag == "Cb2":
        e1, s, t = (v(n) for n in ("e1", "s", "t"))
        return [s * t, s * s - e1 * s, e1 * s], "printed"
    if tag in ("A1b", "B3", "CbP", "D1a", "D1b", "D1c", "D2a", "D2b"):
        return [], "none-needed"
    return [], "not-printed"


@dataclass
class ConstraintVerdict:
    tag: str
    p: int
    discrete: dict
    marker: str
    derived: list
    match: bool
    derived_locus: object
    stated_locus: object

    def to_json(self):
        out = {
            "family": self.tag,
            "p": self.p,
            "discrete": dict(self.discrete),
            "statedMarker": self.marker,
            "derivedConstraints": [c.to_text() for c in self.derived],
            "derivedLocusSize": len(self.derived_locus),
            "statedLocusSize": len(self.stated_locus) if self.stated_locus is not None else None,
            "parameterSpaceSize": len(full_locus(self.p, self.derived_locus.params,
                                                 _eps_of(self.tag, self.p, self.discrete))),
            "match": self.match,
        }
        if not self.match and self.stated_locus is not None:
            out["derivedOnly"] = sorted(map(list, self.derived_locus.points - self.stated_locus.points))
            out["statedOnly"] = sorted(map(list, self.stated_locus.points - self.derived_locus.points))
        return out


def _eps_of(tag, p, discrete):
    return family_params(tag, p, **discrete)[1]


def derived_constraints(tag, p, **discrete):
    H = build_family(tag, p, **discrete)
    return confluence_constraints(H.rs)


def cross_check_constraints(tag, p, **discrete):
    params, eps = family_params(tag, p, **discrete)
    derived = derived_constraints(tag, p, **discrete) if params else []
    dl = vanishing_locus(derived, p, params, eps)
    polys, marker = printed_constraints(tag, p, **discrete)
    if marker == "not-printed":
        return ConstraintVerdict(tag, p, discrete, marker, derived, True, dl, None)
    pl = vanishing_locus(polys, p, params, eps)
    return ConstraintVerdict(tag, p, discrete, marker, derived, dl == pl, dl, pl)


# ------------------------------------------------------------------ class lists


@dataclass
class ClassList:
    group: str
    p: int
    representatives: list  # (tag, discrete dict, values dict)
    families: list  # (tag, discrete dict, fixed values dict, free parameter names)

    def counts(self):
        return len(self.representatives), len(self.families)

    def to_json(self):
        return {
            "caseGroup": self.group,
            "p": self.p,
            "finiteCount": len(self.representatives),
            "familyCount": len(self.families),
            "representatives": [
                {"family": t, "discrete": d, "values": v} for t, d, v in self.representatives],
            "families": [
                {"family": t, "discrete": d, "values": v, "free": f} for t, d, v, f in self.families],
        }


CASE_GROUPS = ("A1u0", "A1u", "A2", "A3", "B3", "Ca", "Cb", "D1", "D2")


def list_representatives(group, p):
    reps, fams = [], []
    if group == "A1u0":
        for lam, tau in ((0, 0), (1, 0), (0, 1)):
            reps.append(("A1a", {}, dict(e1=0, e2=0, l=lam, s=0, t=tau)))
        for sig, lam, tau in ((0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 0, 1)):
            reps.append(("A1a", {}, dict(e1=0, e2=1, l=lam, s=sig, t=tau)))
        for lam, tau in ((0, 0), (1, 0), (0, 1)):
            reps.append(("A1a", {}, dict(e1=1, e2=0, l=lam, s=0, t=tau)))
        fams.append(("A1a", {}, dict(e1=1, e2=1, s=0, t=0), ["l"]))
    elif group == "A1u":
        for u in range(1, p):
            for e1, e2 in ((0, 0), (0, 1), (1, 0)):
                for tau in (0, 1):
                    reps.append(("A1b", {"u": u}, dict(e1=e1, e2=e2, t=tau)))
            fams.append(("A1b", {"u": u}, dict(e1=1, e2=1), ["t"]))
    elif group in ("A2", "A3"):
        if group == "A3" and p != 2:
            raise Inadmissible("case A3 needs p = 2")
        for v in A2_VARIANTS:
            reps.append((f"{group}{v}", {}, {}))
    elif group == "B3":
        if p != 3:
            raise Inadmissible("case B is catalogued at p = 3")
        for tau in (0, 1):
            reps.append(("B3", {}, dict(e=0, m=0, t=tau)))
        fams.append(("B3", {}, dict(e=0, m=1), ["t"]))
        fams.append(("B3", {}, dict(e=1), ["m", "t"]))
    elif group == "Ca":
        for tau in (0, 1):
            reps.append(("Ca", {}, dict(e3=0, s=0, t=tau)))
        fams.append(("Ca", {}, dict(e3=1, s=0), ["t"]))
    elif group == "Cb":
        if p == 2:
            for tau in (0, 1):
                reps.append(("Cb2", {}, dict(e1=0, s=0, t=tau)))
            fams.append(("Cb2", {}, dict(e1=1, s=0), ["t"]))
        else:
            for tau in (0, 1):
                reps.append(("CbP", {}, dict(t=tau)))
    elif group == "D1":
        for lam in (0, 1):
            reps.append(("D1a", {}, dict(l=lam)))
        for lam in (0, 1):
            reps.append(("D1b", {}, dict(e1=0, l=lam)))
        fams.append(("D1b", {}, dict(e1=1), ["l"]))
        for e1 in (0, 1):
            reps.append(("D1c", {}, dict(e1=e1)))
    elif group == "D2":
        for lam in (0, 1):
            reps.append(("D2a", {}, dict(l=lam)))
        for tau in (0, 1):
            reps.append(("D2b", {}, dict(e1=0, t=tau)))
        fams.append(("D2b", {}, dict(e1=1), ["t"]))
    else:
        raise Inadmissible(f"unknown case group {group}")
    return ClassList(group, p, reps, fams)


def expected_counts(group, p, source):
    """Stated class counts: ``source`` is "summary" (the up-front overview
    counts) or "case" (the case-by-case discussion)."""
    table = {
        "A1u0": (10, 1),
        "A1u": (6 * (p - 1), 2 * (p - 1) if source == "summary" else p - 1),
        "A2": (5, 0),
        "A3": (5, 0),
        "B3": (2, 2),
        "Ca": (2, 1),
        "Cb": (2, 1) if p == 2 else (2, 0),
        "D1": (6, 1),
        "D2": (4, 1),
    }
    return table[group]


def representative_points(cl):
    """Concrete parameter points: representatives plus every value of each
    family's free parameters."""
    import itertools

    out = []
    for tag, d, v in cl.representatives:
        out.append((tag, d, v))
    for tag, d, v, free in cl.families:
        for vals in itertools.product(range(cl.p), repeat=len(free)):
            pt = dict(v)
            pt.update(zip(free, vals))
            out.append((tag, d, pt))
    return out


# ------------------------------------------------------------------ B3 identities

B3_IDENTITIES = [
    ("[g,x]", "g", "x", "e*(g - g^2)"),
    ("[g,x^2]", "g", "x^2", "-e*x.g + e*x.g^2 + e*(g - 1)"),
    ("[g^2,x]", "g^2", "x", "e*(1 - g^2)"),
    ("[g,y]", "g", "y", "x.g + m*(g - g^2)"),
    ("[g^2,y]", "g^2", "y", "-x.g^2 + (e - m)*(g^2 - 1)"),
    ("[g,y^2]", "g", "y^2",
     "-y.x.g + e*x.g - (m + e)*y.g + m*y.g^2 + (m*e - m^2 - t) + (t + m^2)*g - m*e*g^2"),
    ("[x^2,y]", "x^2", "y",
     "-(t + m*e)*x - m*x^2 + t*x.g^2 + e*y.x + e*y + e*t*(1 - g^2)"),
    ("[x,y^2]", "x", "y^2",
     "y.x^2 + (e - m)*y.x + e*y^2 + (e - t - e*m)*y + (t + e + m^2)*x - e*x^2 + t*y.g^2"
     " + t*e - t*e*g^2"),
    ("[g,y^3]", "g", "y^3",
     "-e*y.x.g + (t + m^2 - m*e + e)*x.g - (e*m + e)*y.g + m*e*y.g^2"
     " + (m*e - e*t - m^2*e) + (e*t + t*m + m^3)*g + (m^2*e - m*e - t*m - m^3)*g^2"),
    ("[x,y^3]", "x", "y^3",
     "e*y.x^2 + (e - e*m)*y.x + e*y^2 + (e + t*e - m^2*e)*y"
     " + (e*m^2 + t*m + e + m^3 - t*e - e*m)*x + (m*e - t - m^2 - e)*x^2 + t*e*y.g^2"
     " + (t*e + t^2 + t*m^2 - t*m*e)*(1 - g^2)"),
]


def _eps_reduce(f, eps):
    """Replace e^k by e for the {0,1}-valued parameters."""
    idx = [f.params.index(e) for e in eps]
    terms = {}
    for ex, c in f.terms.items():
        ex = list(ex)
        for i in idx:
            ex[i] = min(ex[i], 1)
        ex = tuple(ex)
        terms[ex] = terms.get(ex, 0) + c
    return type(f)(f.p, f.params, terms)


def b3_identity_suite(values=None):
    """Check the displayed bracket identities of the p = 3 case B lifting.

    Returns a list of dicts {identity, holds, nested?}. Equality is exact in
    F_3[m, t] after replacing e^k by e.
    """
    H = build_family("B3", 3, values)
    rs, ring = H.rs, H.ring
    P = lambda s: rs.reduce(parse_ncpoly(_substitute(s, values or {}), ring, rs.alphabet))
    results = []
    for name, a, b, rhs in B3_IDENTITIES:
        A, B = P(a), P(b)
        lhs = rs.reduce(A * B - B * A)
        diff = lhs - P(rhs)
        ok = _vanishes(diff, ring)
        entry = {"identity": name, "holds": ok}
        if name in ("[g,y^3]", "[x,y^3]"):
            y = P("y")
            nested = A
            for _ in range(3):
                nested = rs.reduce(nested * y - y * nested)
            entry["nestedHolds"] = _vanishes(lhs - nested, ring)
        results.append(entry)
    return results


def _vanishes(f, ring):
    if not ring.is_parametric:
        return f.is_zero()
    return all(_eps_reduce(c, ring.eps).is_zero() for c in f.terms.values())


# ------------------------------------------------------------------ manifest


def manifest():
    """Every family tag with its description, parameter schema and admissible primes."""
    out = []
    for tag, fam in sorted(FAMILIES.items()):
        primes = [p for p in (2, 3, 5) if fam.admissible(p)]
        p0 = primes[0]
        disc0 = {k: f(p0)[0] for k, f in fam.discrete.items()}
        params, eps = family_params(tag, p0, **disc0)
        out.append({
            "family": tag,
            "anchor": fam.anchor,
            "primes": primes,
            "discrete": {k: "per p" for k in fam.discrete},
            "params": params,
            "epsParams": eps,
            "fixedValues": _fixed_values(tag) or {},
            "groupShape": fam.group,
        })
    return out


# ------------------------------------------------------------------ R rows

R_TO_GR = {
    "R-A1": ("GR-A1", {"r1": "a", "r2": "b"}),
    "R-A2": ("GR-A2", {"r1": "a", "r2": "b"}),
    "R-A3": ("GR-A3", {"r1": "a", "r2": "b"}),
    "R-B": ("GR-B", {"r1": "a", "r2": "b"}),
    "R-C": ("GR-C", {"r": "a", "z": "b"}),
    "R-D1": ("GR-D1", {"r": "a"}),
    "R-D2": ("GR-D2", {"r": "a"}),
}

R_ROWS = {
    "R-A1": ({"u": lambda p: list(range(p))}, None, "Diagonal"),
    "R-A2": ({}, None, "Diagonal"),
    "R-A3": ({}, lambda p: p == 2, "Diagonal"),
    "R-B": ({}, lambda p: p > 2, "Jordan"),
    "R-C": ({"eps": lambda p: [0, 1]}, None, "Diagonal"),
    "R-D1": ({"eps": lambda p: [0, 1, p]}, None, "Diagonal"),
    "R-D2": ({"eps": lambda p: [0, 1]}, None, "Diagonal"),
}


def r_row_module(tag, p, **d):
    from .ydnichols import YDModule, cp_times_cp, cyclic

    spec = R_ROWS.get(tag)
    if spec is None:
        raise Inadmissible(f"unknown braided row {tag}")
    disc, primes, _ = spec
    if primes is not None and not primes(p):
        raise Inadmissible(f"{tag} is not defined for p = {p}")
    if set(d) != set(disc):
        raise Inadmissible(f"{tag} takes discrete parameters {sorted(disc)}")
    for k, allowed in disc.items():
        if d[k] not in allowed(p):
            raise Inadmissible(f"{k} = {d[k]} is not allowed for {tag}")
    G = cyclic(p)
    if tag == "R-A1":
        return YDModule(G, p, ("r1", "r2"), ((1,), (d["u"],)))
    if tag == "R-A2":
        return YDModule(G, p, ("r1", "r2"), ((0,), (0,)))
    if tag == "R-A3":
        return YDModule(G, p, ("r1", "r2"), ((0,), (0,)), {"g": [[0, 1], [1, 0]]})
    if tag == "R-B":
        # g·r1 = r1, g·r2 = r2 + r1
        return YDModule(G, p, ("r1", "r2"), ((1,), (1,)), {"g": [[1, 1], [0, 1]]})
    if tag == "R-C":
        return YDModule(G, p, ("r", "z"), ((d["eps"],), (0,)))
    if tag == "R-D1":
        return YDModule(cyclic(p * p), p, ("r",), ((d["eps"],),))
    return YDModule(cp_times_cp(p), p, ("r",), ((d["eps"], 0),))


def build_r_row(tag, p, **d):
    """Braided Hopf algebra R of a braided row; Nichols rows use B(V)."""
    from .ncalg import parse_tensor
    from .ydnichols import BraidedHopfData, nichols_presentation

    V = r_row_module(tag, p, **d)
    label = " ".join([tag, f"p={p}"] + [f"{k}={v}" for k, v in sorted(d.items())])
    if tag != "R-C":
        nr = nichols_presentation(V)
        return BraidedHopfData(label, V, nr.rs)
    ring = PrimeField(p)
    alphabet = Alphabet(["r", "z"])
    rs = RewriteSystem(alphabet, [(("r",) * p, "0"), (("z",) * p, "0"), (("r", "z"), "z.r")],
                       ring, label)
    cop = {"z": parse_tensor("z⊗1 + 1⊗z + " + _omega_text(p, "r"), ring, alphabet)}
    return BraidedHopfData(label, V, rs, cop)


def r_row_discretes(tag, p):
    import itertools

    disc = R_ROWS[tag][0]
    names = sorted(disc)
    return [dict(zip(names, vals)) for vals in itertools.product(*(disc[n](p) for n in names))]


def r_row_admissible(tag, p):
    primes = R_ROWS[tag][1]
    return primes is None or primes(p)


# ------------------------------------------------------------------ stated data

# dim P(H) as stated for each lifted family
PRIMITIVE_DIMS = {
    "A1a": 1, "A1b": 0, "A2": 2, "A3": 2, "B3": 0, "Ca": 1, "Cb2": 0, "CbP": 0,
    "D1a": 1, "D1b": 0, "D1c": 0, "D2a": 1, "D2b": 0,
}


def primitive_dim(tag):
    if tag[:2] in ("A2", "A3"):
        return 2
    return PRIMITIVE_DIMS[tag]


# family -> (gr row, discrete values of the gr row as a function of p and the
# family's own discrete values, generator renaming)
DEGENERATIONS = {
    "A1a": ("GR-A1", lambda p, d: {"u": 0}),
    "A1b": ("GR-A1", lambda p, d: {"u": d["u"]}),
    "A2": ("GR-A2", lambda p, d: {}),
    "A3": ("GR-A3", lambda p, d: {}),
    "B3": ("GR-B", lambda p, d: {}),
    "Ca": ("GR-C", lambda p, d: {"eps": 0}),
    "Cb2": ("GR-C", lambda p, d: {"eps": 1}),
    "CbP": ("GR-C", lambda p, d: {"eps": 1}),
    "D1a": ("GR-D1", lambda p, d: {"eps": 0}),
    "D1b": ("GR-D1", lambda p, d: {"eps": 1}),
    "D1c": ("GR-D1", lambda p, d: {"eps": p}),
    "D2a": ("GR-D2", lambda p, d: {"eps": 0}),
    "D2b": ("GR-D2", lambda p, d: {"eps": 1}),
}

GEN_RENAME = {"x": "a", "y": "b"}


def degeneration_check(tag, p, **discrete):
    """Set every continuous parameter (and ε) to 0 and compare with gr H.

    ε-type parameters that select the coalgebra (the exponent of g in Δx) are
    fixed by the family itself, so zeroing the remaining parameters must give
    the gr H row exactly. Returns the list of differences.
    """
    from .ydnichols import compare_presentations

    params, _ = family_params(tag, p, **discrete)
    H = build_family(tag, p, {n: 0 for n in params}, **discrete)
    gr, disc = DEGENERATIONS[tag]
    G = build_family(gr, p, **disc(p, discrete))
    return compare_presentations(H, G, GEN_RENAME)

