"""Yetter-Drinfeld modules over small abelian p-groups, rank <= 2 Nichols
algebras and Radford bosonization."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IncompatibleData, JordanP2Dim, NotConfluent, Unclassifiable
from .hopf import HopfPresentation
from .ncalg import (Alphabet, BraidingData, NCPoly, TensorElt, braided_tensor_mul,
                    parse_ncpoly, word_text)
from .rewrite import (MonomialOrder, RewriteSystem, complete, enumerate_basis, interreduce,
                      is_confluent)
from .scalars import ParamRing, PrimeField, inv_mod


@dataclass(frozen=True)
class GroupData:
    """Abelian group given by generator orders; elements are exponent tuples."""

    orders: tuple
    names: tuple

    def __post_init__(self):
        if len(self.orders) != len(self.names):
            raise IncompatibleData("one name per generator order")

    def identity(self):
        return (0,) * len(self.orders)

    def mul(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def inverse(self, a):
        return tuple((-x) % n for x, n in zip(a, self.orders))

    def word(self, a):
        """Normal word of an element (generators in listed order)."""
        w = ()
        for n, e in zip(self.names, a):
            w += (n,) * (e % self.orders[self.names.index(n)])
        return w

    def generator(self, i):
        return tuple(1 if j == i else 0 for j in range(len(self.orders)))

    def to_json(self):
        return {"orders": list(self.orders), "names": list(self.names)}


def cyclic(n, name="g"):
    return GroupData((n,), (name,))


def cp_times_cp(p):
    return GroupData((p, p), ("g1", "g2"))


@dataclass
class YDModule:
    """Action matrices act on column vectors: h·v_j = Σ_i M[i][j] v_i."""

    group: GroupData
    p: int
    basis: tuple
    grading: tuple
    action: dict = field(default_factory=dict)

    def __post_init__(self):
        self.basis = tuple(self.basis)
        self.grading = tuple(tuple(g) for g in self.grading)
        n = len(self.basis)
        full = {}
        for name in self.group.names:
            M = self.action.get(name)
            full[name] = (np.eye(n, dtype=np.int64) if M is None
                          else np.array(M, dtype=np.int64).reshape(n, n) % self.p)
        self.action = full

    @property
    def dim(self):
        return len(self.basis)

    def matrix_of(self, h):
        n = self.dim
        M = np.eye(n, dtype=np.int64)
        for name, e in zip(self.group.names, h):
            for _ in range(e):
                M = (self.action[name] @ M) % self.p
        return M

    def braiding_data(self):
        action = {}
        for i, name in enumerate(self.group.names):
            M = self.action[name]
            for j, v in enumerate(self.basis):
                img = {self.basis[k]: int(M[k, j]) for k in range(self.dim) if M[k, j]}
                if img != {v: 1}:
                    action[(i, v)] = img
        return BraidingData(self.group.orders,
                            {v: g for v, g in zip(self.basis, self.grading)}, action)

    def to_json(self):
        return {
            "group": self.group.to_json(),
            "p": self.p,
            "dim": self.dim,
            "basis": list(self.basis),
            "grading": [list(g) for g in self.grading],
            "action": {k: v.tolist() for k, v in self.action.items()},
        }

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        g = doc["group"]
        names = g.get("names") or [f"g{i + 1}" for i in range(len(g["orders"]))]
        group = GroupData(tuple(g["orders"]), tuple(names))
        basis = doc.get("basis") or [f"x{i + 1}" for i in range(doc["dim"])]
        return cls(group, doc["p"], basis, doc["grading"], doc.get("action", {}))


def yd_violations(V):
    """Reasons why V fails to be a Yetter-Drinfeld module (empty when valid)."""
    out = []
    p, n = V.p, V.dim
    eye = np.eye(n, dtype=np.int64)
    names = V.group.names
    for name, order in zip(names, V.group.orders):
        M = V.action[name]
        P = eye.copy()
        for _ in range(order):
            P = (M @ P) % p
        if not np.array_equal(P, eye):
            out.append(f"{name} does not act with order dividing {order}")
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            A, B = V.action[a], V.action[b]
            if not np.array_equal((A @ B) % p, (B @ A) % p):
                out.append(f"actions of {a} and {b} do not commute")
    if len(V.grading) != n:
        out.append("one grading per basis vector is required")
        return out
    for name in names:
        M = V.action[name]
        for j in range(n):
            for i in range(n):
                if M[i, j] and V.grading[i] != V.grading[j]:
                    out.append(f"{name} moves {V.basis[j]} out of its graded component")
    return out


def verify_yd(V):
    return not yd_violations(V)


@dataclass(frozen=True)
class BraidingClass:
    kind: str  # "Diagonal" or "Jordan"
    q: tuple | None = None
    t: int | None = None

    def to_json(self):
        if self.kind == "Diagonal":
            return {"kind": "Diagonal", "q": [list(r) for r in self.q]}
        return {"kind": "Jordan", "t": self.t}


def classify_braiding(V):
    """Diagonal when every grading element acts diagonally in the given
    basis, Jordan(t) for a single 2x2 block on a common grading."""
    if not verify_yd(V):
        raise IncompatibleData("; ".join(yd_violations(V)))
    p, n = V.p, V.dim
    mats = [V.matrix_of(h) for h in V.grading]
    if all(np.count_nonzero(M - np.diag(np.diag(M))) == 0 for M in mats):
        q = tuple(tuple(int(mats[i][j, j]) for j in range(n)) for i in range(n))
        return BraidingClass("Diagonal", q=q)
    if n == 2 and V.grading[0] == V.grading[1]:
        M = mats[0]
        tr = int(M[0, 0] + M[1, 1]) % p
        t = (tr * inv_mod(2, p)) % p if p != 2 else int(M[0, 0])
        N = (M - t * np.eye(2, dtype=np.int64)) % p
        if np.any(N) and not np.any((N @ N) % p):
            return BraidingClass("Jordan", t=t)
    raise Unclassifiable("no diagonal basis or single Jordan block found")


# ------------------------------------------------------------------ braided coproduct


class BraidedCoproduct:
    """Δ on a braided algebra R: given on generators, extended
    multiplicatively through the braided product on R⊗R."""

    def __init__(self, rs, bd, generators=None):
        self.rs = rs
        self.bd = bd
        self.ring = rs.ring
        self.alphabet = rs.alphabet
        one = NCPoly.scalar(self.ring, 1, self.alphabet)
        self.gens = {}
        for s in rs.alphabet.symbols:
            x = NCPoly.word(self.ring, (s,), 1, self.alphabet)
            self.gens[s] = TensorElt.pure(x, one) + TensorElt.pure(one, x)
        for k, v in (generators or {}).items():
            self.gens[k] = v
        self._memo = {}

    def word(self, w):
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        if not w:
            one = NCPoly.scalar(self.ring, 1, self.alphabet)
            out = TensorElt.pure(one, one)
        elif len(w) == 1:
            out = self.gens[w[0]].reduced(self.rs)
        else:
            out = braided_tensor_mul(self.word(w[:-1]), self.gens[w[-1]], self.bd, self.rs)
        self._memo[w] = out
        return out

    def __call__(self, f):
        out = TensorElt.zero(self.ring, 2, self.alphabet)
        for w, c in f.terms.items():
            out = out + self.word(w).scale(c)
        return out

    def reduced_part(self, f):
        """Δ(f) - f⊗1 - 1⊗f with f in normal form."""
        f = self.rs.reduce(f)
        one = NCPoly.scalar(self.ring, 1, self.alphabet)
        return self(f) - TensorElt.pure(f, one) - TensorElt.pure(one, f)


def braided_primitive(z, rs, bd):
    if not is_confluent(rs):
        raise NotConfluent("primitivity needs a confluent quotient")
    return BraidedCoproduct(rs, bd).reduced_part(z).is_zero()


# ------------------------------------------------------------------ Nichols algebras

JORDAN_P2_BASIS = (
    "1", "x1", "x2", "x1.x2", "x2.x1", "x2^2", "x1.x2.x1", "x1.x2^2",
    "x2.x1.x2", "x2^3", "x1.x2.x1.x2", "x1.x2^3", "x2.x1.x2^2", "x1.x2.x1.x2^2",
    "x2.x1.x2^3", "x1.x2.x1.x2^3",
)


@dataclass
class NicholsResult:
    V: YDModule
    braiding: BraidingClass
    rs: RewriteSystem
    relations: list  # (label, NCPoly) in certification order
    certificates: list  # (label, bool)
    basis: list
    excluded: bool = False  # the 16-dimensional Jordan case at p = 2

    @property
    def all_certified(self):
        return all(ok for _, ok in self.certificates)

    def to_json(self):
        return {
            "braiding": self.braiding.to_json(),
            "relations": [lab for lab, _ in self.relations],
            "rules": self.rs.rule_texts(),
            "certificates": {lab: ok for lab, ok in self.certificates},
            "basisCount": len(self.basis),
            "basis": [word_text(w) for w in self.basis],
            "excludedFromLifting": self.excluded,
        }


def _relation_texts(kind, p, x1, x2, dim):
    if dim == 1:
        return [f"{x1}^{p}"]
    if kind == "Diagonal":
        return [f"{x1}.{x2} - {x2}.{x1}", f"{x1}^{p}", f"{x2}^{p}"]
    if p == 2:
        return [f"{x1}^2", f"{x2}^2.{x1} + {x1}.{x2}^2 + {x1}.{x2}.{x1}",
                f"{x1}.{x2}.{x1}.{x2} + {x2}.{x1}.{x2}.{x1}", f"{x2}^4"]
    h = inv_mod(2, p)
    return [f"{x1}.{x2} - {x2}.{x1} - {h}*{x1}^2", f"{x1}^{p}", f"{x2}^{p}"]


def _system_from_relations(polys, alphabet, ring, name):
    """Confluent rewriting system for the ideal generated by ``polys``."""
    return complete(interreduce(polys, ring, alphabet, MonomialOrder(alphabet), name))


def nichols_presentation(V, strict=False, ring=None):
    """Presentation of B(V) for dim V <= 2 with braided-primitivity certificates.

    Each relation is certified primitive in the quotient by the relations
    listed before it. The Jordan p = 2 algebra (dimension 16) is returned with
    ``excluded`` set, or raises JordanP2Dim when ``strict``.
    """
    bc = classify_braiding(V)
    p = V.p
    if V.dim > 2:
        raise Unclassifiable("only rank <= 2 is supported")
    if bc.kind == "Jordan" and p == 2 and strict:
        raise JordanP2Dim("the Jordan plane at p = 2 has dimension 16")
    ring = ring or PrimeField(p)
    x1 = V.basis[0]
    x2 = V.basis[1] if V.dim == 2 else None
    # Jordan: x2 leads so that the normal words are x1^i x2^j
    prec = [x2, x1] if bc.kind == "Jordan" else list(V.basis)
    alphabet = Alphabet(prec)
    texts = _relation_texts(bc.kind, p, x1, x2, V.dim)
    polys = [parse_ncpoly(t, ring, alphabet) for t in texts]
    bd = V.braiding_data()
    certs = []
    for k, (t, f) in enumerate(zip(texts, polys)):
        sub = _system_from_relations(polys[:k], alphabet, ring, "prefix") if k else \
            RewriteSystem(alphabet, [], ring, "free")
        ok = BraidedCoproduct(sub, bd).reduced_part(sub.reduce(f)).is_zero()
        certs.append((t, ok))
    rs = _system_from_relations(polys, alphabet, ring, f"B(V) {bc.kind}")
    basis = enumerate_basis(rs)
    return NicholsResult(V, bc, rs, list(zip(texts, polys)), certs, basis,
                         excluded=(bc.kind == "Jordan" and p == 2))


def jordan_module(p, group=None, t=1):
    group = group or cyclic(p)
    g = group.generator(0)
    return YDModule(group, p, ("x1", "x2"), (g, g), {group.names[0]: [[t, 1], [0, t]]})


def diagonal_module(p, gradings=None, group=None):
    group = group or cyclic(p)
    gradings = gradings or (group.generator(0), group.identity())
    return YDModule(group, p, ("x1", "x2"), gradings, {})


def adjoint_identity(p, n):
    """Check (x2⊗1)(ad(λ x2⊗1 + 1⊗x2))^n = -((n+1)!/2^n) λ^(n-1) x1^n⊗x2 in
    A⊗A, A = k<x1,x2>/(x1^p, x1x2 - x2x1 - x1^2/2), braided product."""
    if p == 2:
        raise IncompatibleData("the identity needs 1/2")
    ring = ParamRing(p, ["lam"])
    V = jordan_module(p)
    alphabet = Alphabet(["x2", "x1"])
    h = inv_mod(2, p)
    rels = [parse_ncpoly(f"x1.x2 - x2.x1 - {h}*x1^2", ring, alphabet),
            parse_ncpoly(f"x1^{p}", ring, alphabet)]
    lam = ring.var("lam")
    rs = _system_from_relations(rels, alphabet, ring, "A")
    bd = V.braiding_data()
    one = NCPoly.scalar(ring, 1, alphabet)
    x1 = NCPoly.word(ring, ("x1",), 1, alphabet)
    x2 = NCPoly.word(ring, ("x2",), 1, alphabet)
    u = TensorElt.pure(x2, one).scale(lam) + TensorElt.pure(one, x2)
    cur = TensorElt.pure(x2, one)
    for _ in range(n):
        cur = braided_tensor_mul(cur, u, bd, rs) - braided_tensor_mul(u, cur, bd, rs)
    coef = (-math.factorial(n + 1) * inv_mod(pow(2, n, p), p)) % p
    target = TensorElt.pure(rs.reduce(x1 ** n), x2).scale(lam ** (n - 1) * coef)
    return (cur - target).is_zero()


# ------------------------------------------------------------------ braided Hopf data


@dataclass
class BraidedHopfData:
    """A braided Hopf algebra R in the YD category of an abelian group."""

    name: str
    module: YDModule  # grading and action on the generators of R
    rs: RewriteSystem
    coproduct: dict = field(default_factory=dict)  # non-primitive generators only

    @property
    def group(self):
        return self.module.group

    def delta(self):
        return BraidedCoproduct(self.rs, self.module.braiding_data(), self.coproduct)

    def relations_respected(self):
        """Δ of every relation vanishes in R⊗R (braided bialgebra check)."""
        d = self.delta()
        bad = []
        for r in self.rs.rules:
            rel = NCPoly.word(self.rs.ring, r.lhs, 1, self.rs.alphabet) - r.rhs
            if not d(rel).is_zero():
                bad.append(r.text())
        return bad


def bosonize(R, rename=None, name=""):
    """R # kG as a HopfPresentation.

    Group generators get weight 0 and the highest precedence; the cross rules
    are g v -> (g·v) g. Δ(v) = Σ v' (v'')_(-1) ⊗ v'' for Δ_R(v) = Σ v'⊗v''.
    """
    V = R.module
    if not verify_yd(V):
        raise IncompatibleData("; ".join(yd_violations(V)))
    rename = dict(rename or {})
    rn = lambda s: rename.get(s, s)
    G = V.group
    p = R.rs.p
    for s in R.rs.alphabet.symbols:
        if s not in V.basis:
            raise IncompatibleData(f"generator {s} has no YD data")
    gens = list(G.names)
    rprec = [rn(s) for s in R.rs.alphabet.precedence]
    alphabet = Alphabet(gens + rprec, {g: 0 for g in gens})
    ring = PrimeField(p)
    rw = lambda w: tuple(rn(s) for s in w)
    poly = lambda terms: NCPoly(ring, terms, alphabet)
    rules = []
    for name_g, order in zip(G.names, G.orders):
        rules.append(((name_g,) * order, poly({(): 1})))
    for i, a in enumerate(G.names):
        for b in G.names[i + 1:]:
            rules.append(((a, b), poly({(b, a): 1})))
    bd = V.braiding_data()
    for i, gname in enumerate(G.names):
        for s in R.rs.alphabet.symbols:
            img = bd.act_word(G.generator(i), (s,), ring)
            rules.append(((gname, rn(s)), poly({rw(w) + (gname,): c for w, c in img.items()})))
    for r in R.rs.rules:
        rules.append((rw(r.lhs), poly({rw(w): c for w, c in r.rhs.terms.items()})))
    rs = RewriteSystem(alphabet, rules, ring, name or f"{R.name}#kG")
    delta = R.delta()
    cop, anti = {}, {}
    for s in R.rs.alphabet.symbols:
        terms = {}
        for (a, b), c in delta.word((s,)).terms.items():
            key = (rw(a) + G.word(bd.word_grading(b)), rw(b))
            terms[key] = (terms.get(key, 0) + c) % p
        cop[rn(s)] = TensorElt(ring, 2, terms, alphabet)
        if s not in R.coproduct:
            h = bd.word_grading((s,))
            anti[rn(s)] = poly({G.word(G.inverse(h)) + (rn(s),): p - 1})
    H = HopfPresentation(rs, cop, {}, anti, G.names, rs.name)
    return H


def normalized_rules(H, rename=None):
    """Comparable form: sorted (lhs, rhs) texts plus Δ and S on generators."""
    rename = rename or {}
    sub = lambda t: t if not rename else _rename_text(t, rename)
    rules = sorted((sub(word_text(r.lhs)), sub(H.rs.reduce(r.rhs).to_text())) for r in H.rs.rules)
    cop = {sub(k): sub(v.reduced(H.rs).to_text()) for k, v in H.coproduct.items()}
    anti = {sub(k): sub(H.rs.reduce(v).to_text()) for k, v in H.antipode.items()}
    return {"rules": rules, "coproduct": dict(sorted(cop.items())),
            "antipode": dict(sorted(anti.items()))}


def _rename_text(text, rename):
    import re

    pat = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
    return pat.sub(lambda m: rename.get(m.group(0), m.group(0)), text)


def compare_presentations(A, B, rename=None):
    """List of differences between two normalized presentations (empty = equal).

    ``rename`` maps generator names of A to those of B.
    """
    na, nb = normalized_rules(A, rename), normalized_rules(B)
    diffs = []
    if na["rules"] != nb["rules"]:
        sa, sb = set(na["rules"]), set(nb["rules"])
        diffs += [f"only in first: {l} -> {r}" for l, r in sorted(sa - sb)]
        diffs += [f"only in second: {l} -> {r}" for l, r in sorted(sb - sa)]
    for part in ("coproduct", "antipode"):
        for k in sorted(set(na[part]) | set(nb[part])):
            if na[part].get(k) != nb[part].get(k):
                diffs.append(f"{part}({k}): {na[part].get(k)} vs {nb[part].get(k)}")
    return diffs
