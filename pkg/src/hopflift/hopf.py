"""Hopf algebra presentations on top of a rewriting system."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import NotConfluent, ParametricScalars
from .fplinalg import nullspace
from .ncalg import NCPoly, TensorElt, parse_ncpoly, parse_tensor, tensor_mul, word_text
from .rewrite import enumerate_basis, is_confluent, load_rewrite_json


class HopfPresentation:
    """Rewriting system plus Δ, ε, S on generators.

    ``coproduct`` maps generator -> TensorElt, ``counit`` generator -> scalar,
    ``antipode`` generator -> NCPoly. Missing antipode entries are derived from
    Δ and ε (see ``derive_antipode``).
    """

    def __init__(self, rs, coproduct, counit, antipode=None, grouplike=(), name=""):
        self.rs = rs
        self.ring = rs.ring
        self.alphabet = rs.alphabet
        self.name = name or rs.name
        self.grouplike = tuple(grouplike)
        self.coproduct = {}
        for gsym in rs.alphabet.symbols:
            if gsym in self.grouplike and gsym not in coproduct:
                w = self.gen(gsym)
                coproduct = dict(coproduct)
                coproduct[gsym] = TensorElt.pure(w, w)
        for k, v in coproduct.items():
            if isinstance(v, str):
                v = parse_tensor(v, self.ring, self.alphabet)
            self.coproduct[k] = v.reduced(rs)
        self.counit = {k: self.ring.coerce(1 if k in self.grouplike else 0)
                       for k in rs.alphabet.symbols}
        for k, v in (counit or {}).items():
            self.counit[k] = self.ring.coerce(v)
        self.orders = {g: group_order(rs, g) for g in self.grouplike}
        given = {}
        for k, v in (antipode or {}).items():
            if isinstance(v, str):
                v = parse_ncpoly(v, self.ring, self.alphabet)
            given[k] = v
        self.antipode = derive_antipode(self, given)
        self._delta = {}
        self._anti = {}

    def gen(self, name):
        return NCPoly.word(self.ring, (name,), 1, self.alphabet)

    def word(self, w):
        return NCPoly.word(self.ring, tuple(w), 1, self.alphabet)

    def poly(self, text):
        return parse_ncpoly(text, self.ring, self.alphabet)

    def reduce(self, f):
        return self.rs.reduce(f)

    def inverse_word(self, g):
        return (g,) * (self.orders[g] - 1)

    def delta_word(self, w):
        hit = self._delta.get(w)
        if hit is not None:
            return hit
        if not w:
            one = NCPoly.scalar(self.ring, 1, self.alphabet)
            out = TensorElt.pure(one, one)
        elif len(w) == 1:
            out = self.coproduct[w[0]]
        else:
            out = tensor_mul(self.delta_word(w[:-1]), self.coproduct[w[-1]], self.rs)
        self._delta[w] = out
        return out

    def counit_word(self, w):
        c = self.ring.one
        for s in w:
            c = self.ring.mul(c, self.counit[s])
        return c

    def counit_of(self, f):
        ring = self.ring
        c = ring.zero
        for w, a in f.terms.items():
            c = ring.add(c, ring.mul(a, self.counit_word(w)))
        return c

    def antipode_word(self, w):
        hit = self._anti.get(w)
        if hit is not None:
            return hit
        out = NCPoly.scalar(self.ring, 1, self.alphabet)
        for s in reversed(w):
            out = self.rs.reduce(out * self.antipode[s])
        self._anti[w] = out
        return out

    def antipode_of(self, f):
        out = NCPoly.zero(self.ring, self.alphabet)
        for w, a in f.terms.items():
            out = out + self.antipode_word(w).scale(a)
        return out

    def specialize(self, point):
        if not self.ring.is_parametric:
            return self
        if isinstance(point, dict):
            point = self.ring.point_from_mapping(point)
        rs = self.rs.specialize(point)
        f = rs.ring
        ev = lambda c: c.evaluate(point)
        cop = {k: v.map_coefficients(ev, f) for k, v in self.coproduct.items()}
        cou = {k: ev(v) for k, v in self.counit.items()}
        anti = {k: v.map_coefficients(ev, f) for k, v in self.antipode.items()}
        return HopfPresentation(rs, cop, cou, anti, self.grouplike, self.name)

    def to_json(self):
        doc = self.rs.to_json({g: n for g, n in self.orders.items()})
        doc["name"] = self.name
        doc["coproduct"] = {k: v.to_text() for k, v in sorted(self.coproduct.items())}
        doc["counit"] = {k: self.ring.fmt(v) for k, v in sorted(self.counit.items())}
        doc["antipode"] = {k: v.to_text() for k, v in sorted(self.antipode.items())}
        doc["grouplikeGens"] = list(self.grouplike)
        return doc


def load_hopf_json(doc):
    if isinstance(doc, str):
        doc = json.loads(doc)
    rs = load_rewrite_json(doc)
    cop = {k: parse_tensor(v, rs.ring, rs.alphabet) for k, v in doc.get("coproduct", {}).items()}
    counit = {}
    for k, v in doc.get("counit", {}).items():
        counit[k] = parse_ncpoly(str(v), rs.ring).terms.get((), rs.ring.zero)
    anti = {k: parse_ncpoly(v, rs.ring, rs.alphabet) for k, v in doc.get("antipode", {}).items()}
    return HopfPresentation(rs, cop, counit, anti, doc.get("grouplikeGens", []), doc.get("name", ""))


def group_order(rs, g):
    for r in rs.rules:
        if r.lhs and set(r.lhs) == {g} and r.rhs.terms == {(): rs.ring.one}:
            return len(r.lhs)
    raise ValueError(f"no relation {g}^n = 1 found for the grouplike {g}")


def derive_antipode(H, given):
    """Fill in S on generators not listed in ``given``.

    Grouplikes get g^(order-1). A generator v with Δ(v) = v⊗1 + Σ a_j⊗b_j,
    where no a_j involves v, gets S(v) = ε(v) - Σ S(a_j) b_j.
    """
    ring, rs = H.ring, H.rs
    S = dict(given)
    for g in H.grouplike:
        if g not in S:
            S[g] = NCPoly.word(ring, H.inverse_word(g), 1, H.alphabet)
    pending = [s for s in H.alphabet.symbols if s not in S]
    while pending:
        progress = False
        for v in list(pending):
            delta = H.coproduct[v]
            rest = {}
            ok = delta.terms.get(((v,), ())) == ring.one
            for (a, b), c in delta.terms.items():
                if (a, b) == ((v,), ()):
                    continue
                if any(s not in S for s in a):
                    ok = False
                    break
                rest[(a, b)] = c
            if not ok:
                continue
            acc = NCPoly.scalar(ring, H.counit[v], H.alphabet)
            for (a, b), c in rest.items():
                sa = NCPoly.scalar(ring, 1, H.alphabet)
                for s in reversed(a):
                    sa = sa * S[s]
                acc = acc - (sa * NCPoly.word(ring, b, 1, H.alphabet)).scale(c)
            S[v] = rs.reduce(acc)
            pending.remove(v)
            progress = True
        if not progress:
            raise ValueError(f"cannot derive the antipode on {pending}")
    return {k: rs.reduce(v) for k, v in S.items()}


def extend_coproduct(f, H):
    ring = H.ring
    out = TensorElt.zero(ring, 2, H.alphabet)
    for w, c in f.terms.items():
        out = out + H.delta_word(w).scale(c)
    return out


def _delta_left(t, H):
    """(Δ⊗id) applied to an arity-2 tensor."""
    ring = H.ring
    terms = {}
    for (u, v), c in t.terms.items():
        for (a, b), d in H.delta_word(u).terms.items():
            k = (a, b, v)
            cd = ring.mul(c, d)
            terms[k] = ring.add(terms[k], cd) if k in terms else cd
    return TensorElt(ring, 3, terms, H.alphabet)


def _delta_right(t, H):
    ring = H.ring
    terms = {}
    for (u, v), c in t.terms.items():
        for (a, b), d in H.delta_word(v).terms.items():
            k = (u, a, b)
            cd = ring.mul(c, d)
            terms[k] = ring.add(terms[k], cd) if k in terms else cd
    return TensorElt(ring, 3, terms, H.alphabet)


@dataclass
class AxiomReport:
    deltaIsAlgebraMap: bool = True
    coassociative: bool = True
    counitAxiom: bool = True
    antipodeAxiom: bool = True
    antipodeKillsRelations: bool = True
    witnesses: list = field(default_factory=list)

    @property
    def all_pass(self):
        return (self.deltaIsAlgebraMap and self.coassociative and self.counitAxiom
                and self.antipodeAxiom and self.antipodeKillsRelations and not self.witnesses)

    def fail(self, check, element, residue):
        setattr(self, check, False)
        self.witnesses.append({"check": check, "element": element, "residue": residue})

    def to_json(self):
        return {
            "allPass": self.all_pass,
            "deltaIsAlgebraMap": self.deltaIsAlgebraMap,
            "coassociative": self.coassociative,
            "counitAxiom": self.counitAxiom,
            "antipodeAxiom": self.antipodeAxiom,
            "antipodeKillsRelations": self.antipodeKillsRelations,
            "witnesses": self.witnesses,
        }


def verify_hopf_axioms(H, check_confluence=True):
    rs, ring = H.rs, H.ring
    if check_confluence and not is_confluent(rs):
        raise NotConfluent(f"{H.name or 'presentation'} is not confluent")
    rep = AxiomReport()
    one = NCPoly.scalar(ring, 1, H.alphabet)
    for rule in rs.rules:
        rel = NCPoly.word(ring, rule.lhs, 1, H.alphabet) - rule.rhs
        d = extend_coproduct(rel, H)
        if not d.is_zero():
            rep.fail("deltaIsAlgebraMap", rule.text(), d.to_text())
        e = H.counit_of(rel)
        if not ring.is_zero(e):
            rep.fail("counitAxiom", rule.text(), ring.fmt(e))
        s = rs.reduce(H.antipode_of(rel))
        if not s.is_zero():
            rep.fail("antipodeKillsRelations", rule.text(), s.to_text())
    for g in H.alphabet.symbols:
        x = H.gen(g)
        d = H.coproduct[g]
        diff = _delta_left(d, H) - _delta_right(d, H)
        if not diff.is_zero():
            rep.fail("coassociative", g, diff.to_text())
        left = NCPoly.zero(ring, H.alphabet)
        right = NCPoly.zero(ring, H.alphabet)
        sl = NCPoly.zero(ring, H.alphabet)
        sr = NCPoly.zero(ring, H.alphabet)
        for (u, v), c in d.terms.items():
            left = left + NCPoly.word(ring, v, ring.mul(c, H.counit_word(u)), H.alphabet)
            right = right + NCPoly.word(ring, u, ring.mul(c, H.counit_word(v)), H.alphabet)
            sl = sl + (H.antipode_word(u) * NCPoly.word(ring, v, 1, H.alphabet)).scale(c)
            sr = sr + (NCPoly.word(ring, u, 1, H.alphabet) * H.antipode_word(v)).scale(c)
        for lab, val in (("(ε⊗id)Δ", left), ("(id⊗ε)Δ", right)):
            res = rs.reduce(val - x)
            if not res.is_zero():
                rep.fail("counitAxiom", f"{lab}({g})", res.to_text())
        target = one.scale(H.counit[g])
        for lab, val in (("m(S⊗id)Δ", sl), ("m(id⊗S)Δ", sr)):
            res = rs.reduce(val - target)
            if not res.is_zero():
                rep.fail("antipodeAxiom", g, f"{lab}: {res.to_text()}")
    return rep


def skew_primitives(H, g=(), h=()):
    """Basis of {v : Δ(v) = v⊗g + h⊗v} over the normal-form basis."""
    ring = H.ring
    if ring.is_parametric:
        raise ParametricScalars("specialize the presentation before solving")
    g, h = tuple(g), tuple(h)
    basis = enumerate_basis(H.rs)
    gw = H.rs.nf_word(g)
    hw = H.rs.nf_word(h)
    cols = []
    for b in basis:
        t = dict(H.delta_word(b).terms)
        for w, c in gw.items():
            k = (b, w)
            t[k] = ring.sub(t.get(k, 0), c)
        for w, c in hw.items():
            k = (w, b)
            t[k] = ring.sub(t.get(k, 0), c)
        cols.append({k: c for k, c in t.items() if c})
    keys = sorted({k for col in cols for k in col})
    index = {k: i for i, k in enumerate(keys)}
    import numpy as np

    M = np.zeros((len(keys), len(basis)), dtype=np.int64)
    for j, col in enumerate(cols):
        for k, c in col.items():
            M[index[k], j] = c
    vecs = nullspace(M, ring.p) if keys else [np.eye(len(basis), dtype=np.int64)[i]
                                               for i in range(len(basis))]
    out = []
    for v in vecs:
        out.append(NCPoly(ring, {basis[j]: int(v[j]) for j in range(len(basis)) if v[j]},
                          H.alphabet))
    return out


def word_of_group_element(names, exps):
    """Normal word g1^e1 g2^e2 ... for a group element (names in word order)."""
    w = ()
    for n, e in zip(names, exps):
        w += (n,) * e
    return w


__all__ = [
    "HopfPresentation", "AxiomReport", "extend_coproduct", "verify_hopf_axioms",
    "skew_primitives", "load_hopf_json", "word_text",
]
