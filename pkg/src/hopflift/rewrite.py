"""Diamond-lemma rewriting: normal forms, overlaps, parametric constraints, bases."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import (InfiniteBasis, NotConfluent, NotInterReduced, OrderViolation,
                     ParametricScalars)
from .ncalg import Alphabet, NCPoly, parse_ncpoly, word_text
from .scalars import ParamRing, PrimeField, full_locus, vanishing_locus


class MonomialOrder:
    """Weighted degree-lexicographic order read off an Alphabet."""

    kind = "weighted-deglex"

    def __init__(self, alphabet):
        self.alphabet = alphabet

    def key(self, w):
        return self.alphabet.key(w)

    def less(self, u, v):
        return self.key(u) < self.key(v)


@dataclass(frozen=True)
class Rule:
    lhs: tuple
    rhs: NCPoly

    def text(self):
        return f"{word_text(self.lhs)} -> {self.rhs.to_text()}"


@dataclass
class Ambiguity:
    overlap_word: tuple
    rule_a: int
    rule_b: int
    spoly: NCPoly


class RewriteSystem:
    def __init__(self, alphabet, rules, ring, name=""):
        self.alphabet = alphabet
        self.order = MonomialOrder(alphabet)
        self.ring = ring
        self.name = name
        self.rules = []
        for lhs, rhs in rules:
            lhs = tuple(lhs)
            if not isinstance(rhs, NCPoly):
                rhs = parse_ncpoly(rhs, ring, alphabet)
            if rhs.ring != ring:
                raise ValueError("rule coefficients live in a different ring")
            rhs = NCPoly(ring, rhs.terms, alphabet)
            for w in rhs.terms:
                if not self.order.less(w, lhs):
                    raise OrderViolation(
                        f"{word_text(w)} is not below the leading word {word_text(lhs)}")
            self.rules.append(Rule(lhs, rhs))
        self.by_lhs = {}
        for i, r in enumerate(self.rules):
            if r.lhs in self.by_lhs:
                raise NotInterReduced(f"repeated leading word {word_text(r.lhs)}")
            self.by_lhs[r.lhs] = i
        for r in self.rules:
            for s in self.rules:
                if r is not s and _is_subword(r.lhs, s.lhs):
                    raise NotInterReduced(
                        f"{word_text(r.lhs)} occurs inside {word_text(s.lhs)}")
        self.lengths = sorted({len(r.lhs) for r in self.rules})
        self._memo = {"leftmost": {}, "rightmost": {}}
        self._ambiguities = None

    @property
    def p(self):
        return self.ring.p

    @property
    def params(self):
        return self.ring.params if self.ring.is_parametric else ()

    # ---------------------------------------------------------- reduction
    def find_redex(self, w, strategy="leftmost"):
        n = len(w)
        positions = range(n) if strategy == "leftmost" else range(n - 1, -1, -1)
        by_lhs = self.by_lhs
        for i in positions:
            for L in self.lengths:
                if i + L > n:
                    break
                j = by_lhs.get(w[i:i + L])
                if j is not None:
                    return i, self.rules[j]
        return None

    def is_irreducible(self, w):
        return self.find_redex(w) is None

    def nf_word(self, w, strategy="leftmost"):
        """Normal form of a single word as {word: coefficient} (memoized)."""
        memo = self._memo[strategy]
        hit = memo.get(w)
        if hit is not None:
            return hit
        ring = self.ring
        stack = [tuple(w)]
        while stack:
            top = stack[-1]
            if top in memo:
                stack.pop()
                continue
            red = self.find_redex(top, strategy)
            if red is None:
                memo[top] = {top: ring.one}
                stack.pop()
                continue
            i, rule = red
            pre, suf = top[:i], top[i + len(rule.lhs):]
            children = [(pre + m + suf, c) for m, c in rule.rhs.terms.items()]
            missing = [cw for cw, _ in children if cw not in memo]
            if missing:
                stack.extend(missing)
                continue
            acc = {}
            for cw, c in children:
                for v, d in memo[cw].items():
                    cd = ring.mul(c, d)
                    acc[v] = ring.add(acc[v], cd) if v in acc else cd
            memo[top] = {v: d for v, d in acc.items() if not ring.is_zero(d)}
            stack.pop()
        return memo[tuple(w)]

    def reduce(self, f, strategy="leftmost"):
        ring = self.ring
        out = {}
        for w, c in f.terms.items():
            for v, d in self.nf_word(w, strategy).items():
                cd = ring.mul(c, d)
                out[v] = ring.add(out[v], cd) if v in out else cd
        return NCPoly(ring, out, self.alphabet)

    # ---------------------------------------------------------- helpers
    def poly(self, text):
        return parse_ncpoly(text, self.ring, self.alphabet)

    def gen(self, name):
        return NCPoly.word(self.ring, (name,), 1, self.alphabet)

    def one(self):
        return NCPoly.scalar(self.ring, 1, self.alphabet)

    def specialize(self, point):
        """Numeric copy at a parameter point (tuple or name -> value mapping)."""
        if not self.ring.is_parametric:
            return self
        if isinstance(point, dict):
            point = self.ring.point_from_mapping(point)
        field = PrimeField(self.p)
        rules = [(r.lhs, r.rhs.map_coefficients(lambda c: c.evaluate(point), field))
                 for r in self.rules]
        return RewriteSystem(self.alphabet, rules, field, self.name)

    def rule_texts(self):
        return [r.text() for r in self.rules]

    def to_json(self, group_orders=None):
        return {
            "p": self.p,
            "alphabet": list(self.alphabet.symbols),
            "precedence": list(self.alphabet.precedence),
            "weights": dict(sorted(self.alphabet.weights.items())),
            "groupOrders": dict(group_orders or {}),
            "rules": [{"lhs": word_text(r.lhs), "rhs": r.rhs.to_text()} for r in self.rules],
            "params": list(self.params),
            "epsParams": list(self.ring.eps) if self.ring.is_parametric else [],
        }


def _is_subword(u, w):
    n = len(u)
    return any(w[i:i + n] == u for i in range(len(w) - n + 1))


def _parse_word(text, alphabet):
    poly = parse_ncpoly(text, PrimeField(2), alphabet)
    if len(poly.terms) != 1 or poly.terms[next(iter(poly.terms))] != 1:
        raise ValueError(f"{text!r} is not a word")
    return next(iter(poly.terms))


def load_rewrite_json(doc):
    """Build a RewriteSystem from the JSON document described in the README."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    p = int(doc["p"])
    alphabet = Alphabet(doc.get("precedence") or doc["alphabet"], doc.get("weights"))
    params = doc.get("params") or []
    ring = ParamRing(p, params, doc.get("epsParams") or []) if params else PrimeField(p)
    rules = []
    for r in doc["rules"]:
        rules.append((_parse_word(r["lhs"], alphabet), parse_ncpoly(r["rhs"], ring, alphabet)))
    return RewriteSystem(alphabet, rules, ring, doc.get("name", ""))


def reduce(f, rs, strategy="leftmost"):
    return rs.reduce(f, strategy)


def overlaps(rs):
    """All proper overlap ambiguities with their S-polynomials."""
    if rs._ambiguities is not None:
        return rs._ambiguities
    ring = rs.ring
    out = []
    for ia, a in enumerate(rs.rules):
        for ib, b in enumerate(rs.rules):
            la, lb = len(a.lhs), len(b.lhs)
            for k in range(1, min(la, lb)):
                if a.lhs[la - k:] != b.lhs[:k]:
                    continue
                tail = b.lhs[k:]
                head = a.lhs[:la - k]
                left = NCPoly(ring, {m + tail: c for m, c in a.rhs.terms.items()}, rs.alphabet)
                right = NCPoly(ring, {head + m: c for m, c in b.rhs.terms.items()}, rs.alphabet)
                out.append(Ambiguity(a.lhs + tail, ia, ib, left - right))
    rs._ambiguities = out
    return out


def resolved_spolys(rs):
    return [rs.reduce(a.spoly) for a in overlaps(rs)]


def confluence_constraints(rs):
    """Coefficients of all reduced S-polynomials (monic, deduplicated, sorted)."""
    ring = rs.ring
    found = {}
    for r in resolved_spolys(rs):
        for c in r.terms.values():
            if ring.is_parametric:
                m = c.monic()
                found[m] = None
            else:
                found[ring.coerce(1)] = None
    polys = list(found)
    if ring.is_parametric:
        polys.sort(key=lambda f: (f.degree(), len(f.terms), f.to_text()))
    return polys


def constraint_locus(rs):
    ring = rs.ring
    if not ring.is_parametric:
        raise ParametricScalars("constraint loci need a parametric system")
    return vanishing_locus(confluence_constraints(rs), ring.p, ring.params, ring.eps)


def is_confluent(rs):
    """Numeric systems: all S-polynomials reduce to zero.

    Parametric systems: the constraint locus is the whole parameter space.
    """
    if rs.ring.is_parametric:
        return constraint_locus(rs) == full_locus(rs.p, rs.params, rs.ring.eps)
    return all(r.is_zero() for r in resolved_spolys(rs))


def _leading(f, order):
    return max(f.terms, key=order.key)


def complete(rs, max_rounds=50):
    """Knuth-Bendix completion under the system's own order.

    Returns a confluent RewriteSystem presenting the same quotient algebra.
    Used to measure how far a non-confluent presentation collapses. Over a
    parametric ring every new leading coefficient must be a nonzero constant
    (ZeroInverse otherwise).
    """
    ring = rs.ring
    cur = rs
    for _ in range(max_rounds):
        pending = [f for f in resolved_spolys(cur) if not f.is_zero()]
        if not pending:
            return cur
        polys = [NCPoly.word(ring, r.lhs, 1, rs.alphabet) - r.rhs for r in cur.rules]
        polys += pending
        cur = interreduce(polys, ring, rs.alphabet, cur.order, rs.name)
    raise NotConfluent(f"completion of {rs.name or 'system'} did not finish")


def interreduce(polys, ring, alphabet, order, name):
    """Autoreduce a list of polynomials into an inter-reduced rule set."""
    basis = []
    work = list(polys)
    while work:
        f = work.pop()
        rules = [(lw, rhs) for lw, rhs in basis]
        tmp = RewriteSystem(alphabet, rules, ring, name) if rules else None
        if tmp is not None:
            f = tmp.reduce(f)
        if f.is_zero():
            continue
        lw = _leading(f, order)
        f = f.scale(ring.inv(f.terms[lw]))
        rhs = NCPoly.word(ring, lw, 1, alphabet) - f
        keep = []
        for lw2, rhs2 in basis:
            if _is_subword(lw, lw2):
                work.append(NCPoly.word(ring, lw2, 1, alphabet) - rhs2)
            else:
                keep.append((lw2, rhs2))
        basis = keep + [(lw, rhs)]
    # fully reduce right-hand sides
    final = []
    tmp = RewriteSystem(alphabet, basis, ring, name)
    for lw, rhs in sorted(basis, key=lambda r: alphabet.key(r[0])):
        final.append((lw, tmp.reduce(rhs)))
    return RewriteSystem(alphabet, final, ring, name)


# ---------------------------------------------------------- basis automaton


class AvoidanceAutomaton:
    """Aho-Corasick automaton over the leading words; live states accept
    exactly the words avoiding every leading word as a subword."""

    def __init__(self, patterns, letters):
        self.letters = tuple(letters)
        goto = [{}]
        terminal = [False]
        for pat in patterns:
            s = 0
            for ch in pat:
                if ch not in goto[s]:
                    goto.append({})
                    terminal.append(False)
                    goto[s][ch] = len(goto) - 1
                s = goto[s][ch]
            terminal[s] = True
        fail = [0] * len(goto)
        order = []
        queue = []
        for ch in self.letters:
            t = goto[0].get(ch)
            if t is None:
                goto[0][ch] = 0
            else:
                fail[t] = 0
                queue.append(t)
        while queue:
            s = queue.pop(0)
            order.append(s)
            terminal[s] = terminal[s] or terminal[fail[s]]
            for ch in self.letters:
                t = goto[s].get(ch)
                if t is None:
                    goto[s][ch] = goto[fail[s]][ch]
                else:
                    fail[t] = goto[fail[s]][ch]
                    queue.append(t)
        self.goto = goto
        self.dead = terminal

    def has_cycle(self):
        WHITE, GREY, BLACK = 0, 1, 2
        colour = [WHITE] * len(self.goto)
        stack = [(0, iter(self.letters))]
        colour[0] = GREY
        while stack:
            s, it = stack[-1]
            advanced = False
            for ch in it:
                t = self.goto[s][ch]
                if self.dead[t]:
                    continue
                if colour[t] == GREY:
                    return True
                if colour[t] == WHITE:
                    colour[t] = GREY
                    stack.append((t, iter(self.letters)))
                    advanced = True
                    break
            if not advanced:
                colour[s] = BLACK
                stack.pop()
        return False

    def words(self):
        if self.has_cycle():
            raise InfiniteBasis("the irreducible words form an infinite set")
        out = []
        stack = [(0, ())]
        while stack:
            s, w = stack.pop()
            out.append(w)
            for ch in self.letters:
                t = self.goto[s][ch]
                if not self.dead[t]:
                    stack.append((t, w + (ch,)))
        return out


def irreducible_words(rs):
    auto = AvoidanceAutomaton([r.lhs for r in rs.rules], rs.alphabet.symbols)
    return sorted(auto.words(), key=rs.alphabet.key)


def enumerate_basis(rs, check=True):
    if check and not is_confluent(rs):
        raise NotConfluent(f"{rs.name or 'system'} has unresolved ambiguities")
    return irreducible_words(rs)


def church_rosser_audit(rs, samples=500, seed=0, max_len=8):
    """Compare leftmost and rightmost reduction on random words."""
    import random

    rng = random.Random(seed)
    letters = rs.alphabet.symbols
    for _ in range(samples):
        n = rng.randint(0, max_len)
        w = tuple(rng.choice(letters) for _ in range(n))
        if rs.nf_word(w, "leftmost") != rs.nf_word(w, "rightmost"):
            return False, w
    return True, None


def rewrite_report(rs):
    ring = rs.ring
    amb = overlaps(rs)
    report = {"ambiguityCount": len(amb)}
    if ring.is_parametric:
        cons = confluence_constraints(rs)
        locus = vanishing_locus(cons, ring.p, ring.params, ring.eps)
        report["constraints"] = [c.to_text() for c in cons]
        report["locusSize"] = len(locus)
        report["parameterSpaceSize"] = len(full_locus(ring.p, ring.params, ring.eps))
        confluent = report["locusSize"] == report["parameterSpaceSize"]
    else:
        confluent = is_confluent(rs)
        report["constraints"] = [] if confluent else ["1"]
        report["locusSize"] = 1 if confluent else 0
    report["confluent"] = confluent
    try:
        report["basisCount"] = len(irreducible_words(rs))
    except InfiniteBasis:
        report["basisCount"] = None
    return report
