"""Noncommutative polynomials and tensor powers over a coefficient ring.

Words are tuples of generator names; the empty tuple is the unit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import AlphabetMismatch, ArityMismatch, InhomogeneousWord, ParseError
from .scalars import ParamPoly, inv_mod

ONE = ()


class Alphabet:
    """Generator names with a precedence (highest first) and letter weights.

    Words are compared by total weight, then length, then lexicographically by
    precedence. With every weight equal to 1 this is the plain deglex order.
    """

    def __init__(self, precedence, weights=None):
        precedence = list(precedence)
        if len(set(precedence)) != len(precedence):
            raise ValueError("duplicate generator names")
        self.precedence = tuple(precedence)
        self.symbols = tuple(precedence)
        n = len(precedence)
        self.rank = {s: n - i for i, s in enumerate(precedence)}
        self.weights = {s: 1 for s in precedence}
        if weights:
            for s, w in weights.items():
                if s not in self.rank:
                    raise ValueError(f"weight for unknown generator {s}")
                self.weights[s] = w

    def key(self, word):
        rank = self.rank
        wt = self.weights
        return (sum(wt[s] for s in word), len(word), tuple(rank[s] for s in word))

    def __contains__(self, s):
        return s in self.rank

    def __eq__(self, other):
        return (isinstance(other, Alphabet) and self.precedence == other.precedence
                and self.weights == other.weights)

    def __hash__(self):
        return hash((self.precedence, tuple(sorted(self.weights.items()))))

    def __repr__(self):
        return f"Alphabet({list(self.precedence)})"


def word_text(w):
    return ".".join(w) if w else "1"


def _same_alphabet(a, b):
    if a is not None and b is not None and a != b:
        raise AlphabetMismatch(f"{a} vs {b}")
    return a if a is not None else b


class NCPoly:
    __slots__ = ("ring", "terms", "alphabet")

    def __init__(self, ring, terms=None, alphabet=None):
        self.ring = ring
        self.alphabet = alphabet
        clean = {}
        if terms:
            for w, c in terms.items():
                if not ring.is_zero(c):
                    clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring, terms, alphabet):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj.alphabet = alphabet
        return obj

    @classmethod
    def word(cls, ring, w, coef=1, alphabet=None):
        return cls(ring, {tuple(w): ring.coerce(coef)}, alphabet)

    @classmethod
    def scalar(cls, ring, c, alphabet=None):
        return cls(ring, {ONE: ring.coerce(c)}, alphabet)

    @classmethod
    def zero(cls, ring, alphabet=None):
        return cls(ring, {}, alphabet)

    def _lift(self, other):
        if isinstance(other, NCPoly):
            if other.ring != self.ring:
                raise AlphabetMismatch("scalar rings differ")
            return other
        return NCPoly.scalar(self.ring, other, self.alphabet)

    def __add__(self, other):
        other = self._lift(other)
        ring = self.ring
        t = dict(self.terms)
        for w, c in other.terms.items():
            if w in t:
                s = ring.add(t[w], c)
                if ring.is_zero(s):
                    del t[w]
                else:
                    t[w] = s
            else:
                t[w] = c
        return NCPoly._raw(ring, t, _same_alphabet(self.alphabet, other.alphabet))

    __radd__ = __add__

    def __neg__(self):
        ring = self.ring
        return NCPoly._raw(ring, {w: ring.neg(c) for w, c in self.terms.items()}, self.alphabet)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c):
        ring = self.ring
        c = ring.coerce(c)
        if ring.is_zero(c):
            return NCPoly.zero(ring, self.alphabet)
        return NCPoly(ring, {w: ring.mul(c, v) for w, v in self.terms.items()}, self.alphabet)

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        return nc_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n):
        out = NCPoly.scalar(self.ring, 1, self.alphabet)
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == NCPoly.scalar(self.ring, other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, w):
        return self.terms.get(tuple(w), self.ring.zero)

    def words(self):
        return list(self.terms)

    def map_coefficients(self, fn, ring):
        return NCPoly(ring, {w: fn(c) for w, c in self.terms.items()}, self.alphabet)

    def sorted_words(self, alphabet=None):
        alphabet = alphabet or self.alphabet
        if alphabet is None:
            return sorted(self.terms, key=lambda w: (len(w), w), reverse=True)
        return sorted(self.terms, key=alphabet.key, reverse=True)

    def to_text(self, alphabet=None):
        if not self.terms:
            return "0"
        parts = []
        for w in self.sorted_words(alphabet):
            parts.append(_term_text(self.ring, self.terms[w], word_text(w), bool(w)))
        return " + ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"NCPoly({self.to_text()!r})"


def _term_text(ring, c, body, has_body):
    is_one = c == ring.one if ring.is_parametric else c == 1
    if not has_body:
        return ring.fmt(c)
    if is_one:
        return body
    return f"{ring.fmt(c)}*{body}"


def nc_mul(a, b):
    if a.ring != b.ring:
        raise AlphabetMismatch("scalar rings differ")
    alpha = _same_alphabet(a.alphabet, b.alphabet)
    ring = a.ring
    t = {}
    for u, c in a.terms.items():
        for v, d in b.terms.items():
            w = u + v
            cd = ring.mul(c, d)
            if w in t:
                t[w] = ring.add(t[w], cd)
            else:
                t[w] = cd
    return NCPoly(ring, t, alpha)


def commutator(a, b):
    return a * b - b * a


# ---------------------------------------------------------------- tensors


class TensorElt:
    __slots__ = ("ring", "arity", "terms", "alphabet")

    def __init__(self, ring, arity, terms=None, alphabet=None):
        if arity not in (2, 3):
            raise ArityMismatch("tensor arity must be 2 or 3")
        self.ring = ring
        self.arity = arity
        self.alphabet = alphabet
        clean = {}
        if terms:
            for k, c in terms.items():
                if len(k) != arity:
                    raise ArityMismatch("term of the wrong arity")
                if not ring.is_zero(c):
                    clean[tuple(tuple(w) for w in k)] = c
        self.terms = clean

    @classmethod
    def pure(cls, *factors):
        """Simple tensor f1 ⊗ f2 (⊗ f3) of NCPoly factors."""
        ring = factors[0].ring
        alpha = factors[0].alphabet
        t = {(): ring.one}
        for f in factors:
            alpha = _same_alphabet(alpha, f.alphabet)
            nt = {}
            for k, c in t.items():
                for w, d in f.terms.items():
                    key = k + (w,)
                    cd = ring.mul(c, d)
                    nt[key] = ring.add(nt[key], cd) if key in nt else cd
            t = nt
        return cls(ring, len(factors), t, alpha)

    @classmethod
    def zero(cls, ring, arity, alphabet=None):
        return cls(ring, arity, {}, alphabet)

    def _check(self, other):
        if not isinstance(other, TensorElt):
            raise TypeError("expected a TensorElt")
        if other.arity != self.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")
        if other.ring != self.ring:
            raise AlphabetMismatch("scalar rings differ")
        return _same_alphabet(self.alphabet, other.alphabet)

    def __add__(self, other):
        alpha = self._check(other)
        ring = self.ring
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = ring.add(t[k], c) if k in t else c
        return TensorElt(ring, self.arity, t, alpha)

    def __neg__(self):
        ring = self.ring
        return TensorElt(ring, self.arity, {k: ring.neg(c) for k, c in self.terms.items()},
                         self.alphabet)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        ring = self.ring
        c = ring.coerce(c)
        return TensorElt(ring, self.arity, {k: ring.mul(c, v) for k, v in self.terms.items()},
                         self.alphabet)

    def __mul__(self, other):
        if isinstance(other, TensorElt):
            return tensor_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorElt):
            return NotImplemented
        return self.arity == other.arity and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def reduced(self, rs):
        """Reduce every tensor factor to normal form under ``rs``."""
        return _reduce_factors(self.ring, self.arity, self.terms, rs, self.alphabet)

    def map_coefficients(self, fn, ring):
        return TensorElt(ring, self.arity, {k: fn(c) for k, c in self.terms.items()},
                         self.alphabet)

    def to_text(self, alphabet=None):
        if not self.terms:
            return "0"
        alphabet = alphabet or self.alphabet
        if alphabet is None:
            key = lambda k: tuple((len(w), w) for w in k)
        else:
            key = lambda k: tuple(alphabet.key(w) for w in k)
        parts = []
        for k in sorted(self.terms, key=key, reverse=True):
            body = "⊗".join(word_text(w) for w in k)
            c = self.terms[k]
            parts.append(_term_text(self.ring, c, body, True))
        return " + ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"TensorElt({self.to_text()!r})"


def _reduce_factors(ring, arity, terms, rs, alphabet):
    out = {}
    nf = rs.nf_word
    for k, c in terms.items():
        forms = [nf(w) for w in k]
        partial = [((), c)]
        for form in forms:
            nxt = []
            for key, coef in partial:
                for w, d in form.items():
                    nxt.append((key + (w,), ring.mul(coef, d)))
            partial = nxt
        for key, coef in partial:
            out[key] = ring.add(out[key], coef) if key in out else coef
    return TensorElt(ring, arity, out, alphabet)


def tensor_mul(s, t, rs=None):
    """Componentwise product; factors are reduced when ``rs`` is given."""
    alpha = s._check(t)
    ring = s.ring
    out = {}
    for k1, c1 in s.terms.items():
        for k2, c2 in t.terms.items():
            key = tuple(a + b for a, b in zip(k1, k2))
            c = ring.mul(c1, c2)
            out[key] = ring.add(out[key], c) if key in out else c
    if rs is None:
        return TensorElt(ring, s.arity, out, alpha)
    return _reduce_factors(ring, s.arity, out, rs, alpha)


def tensor_power(t, n, rs=None):
    out = TensorElt.pure(*[NCPoly.scalar(t.ring, 1, t.alphabet)] * t.arity)
    for _ in range(n):
        out = tensor_mul(out, t, rs)
    return out


# ---------------------------------------------------------------- braiding


@dataclass
class BraidingData:
    """Abelian group grading and linear action on generators.

    ``grading`` maps a generator name to an exponent tuple; ``action`` maps
    (group generator index, generator name) to {generator name: coefficient}.
    Missing action entries mean the generator is fixed.
    """

    orders: tuple
    grading: dict
    action: dict = field(default_factory=dict)

    def __post_init__(self):
        self.orders = tuple(self.orders)
        self._cache = {}

    def identity(self):
        return (0,) * len(self.orders)

    def mul(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def inverse(self, a):
        return tuple((-x) % n for x, n in zip(a, self.orders))

    def word_grading(self, w):
        h = self.identity()
        for s in w:
            if s not in self.grading:
                raise InhomogeneousWord(f"generator {s} has no grading")
            h = self.mul(h, self.grading[s])
        return h

    def _act_gen_letter(self, i, s, ring):
        img = self.action.get((i, s))
        if img is None:
            return {(s,): ring.one}
        return {(t,): ring.coerce(c) for t, c in img.items() if c % ring.p}

    def act_word(self, h, w, ring):
        """h · w as {word: coefficient}; the action is multiplicative."""
        key = (h, w, ring)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        cur = {w: ring.one}
        for i, e in enumerate(h):
            for _ in range(e):
                nxt = {}
                for word, c in cur.items():
                    partial = {(): c}
                    for s in word:
                        img = self._act_gen_letter(i, s, ring)
                        step = {}
                        for u, a in partial.items():
                            for v, b in img.items():
                                uv = u + v
                                ab = ring.mul(a, b)
                                step[uv] = ring.add(step[uv], ab) if uv in step else ab
                        partial = step
                    for u, a in partial.items():
                        nxt[u] = ring.add(nxt[u], a) if u in nxt else a
                cur = {u: a for u, a in nxt.items() if not ring.is_zero(a)}
        self._cache[key] = cur
        return cur


def braided_tensor_mul(s, t, bd, rs=None):
    """(a⊗b)(a'⊗b') = a (h_b · a') ⊗ b b' where h_b is the grading of b."""
    if s.arity != 2 or t.arity != 2:
        raise ArityMismatch("braided products are defined on arity 2 only")
    alpha = s._check(t)
    ring = s.ring
    out = {}
    for (a, b), c1 in s.terms.items():
        h = bd.word_grading(b)
        for (a2, b2), c2 in t.terms.items():
            bd.word_grading(a2)
            moved = bd.act_word(h, a2, ring)
            c12 = ring.mul(c1, c2)
            bb = b + b2
            for a3, c3 in moved.items():
                key = (a + a3, bb)
                c = ring.mul(c12, c3)
                out[key] = ring.add(out[key], c) if key in out else c
    if rs is None:
        return TensorElt(ring, 2, out, alpha)
    return _reduce_factors(ring, 2, out, rs, alpha)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text):
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        pos = m.end()
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif sym is not None and not sym.isspace():
            out.append(("sym", sym))
    return out


class _Parser:
    def __init__(self, text, ring, alphabet):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.alphabet = alphabet
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, sym):
        tok = self.take()
        if tok != ("sym", sym):
            raise ParseError(f"expected {sym!r} in {self.text!r}")

    def parse(self):
        out = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return out

    def expr(self):
        sign = 1
        if self.peek() in (("sym", "-"), ("sym", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        out = self.term()
        if sign < 0:
            out = -out
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.factor()
        while True:
            tok = self.peek()
            if tok in (("sym", "*"), ("sym", ".")):
                self.take()
                out = out * self.factor()
            elif tok == ("sym", "/"):
                self.take()
                d = self.take()
                if d[0] != "num":
                    raise ParseError("only division by integers is supported")
                out = out.scale(inv_mod(d[1], self.ring.p))
            elif tok[0] in ("name", "num") or tok == ("sym", "("):
                out = out * self.factor()
            else:
                return out

    def factor(self):
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            tok = self.take()
            if tok[0] == "num":
                n = tok[1]
            elif tok == ("sym", "("):
                t = self.take()
                self.expect(")")
                n = t[1]
            else:
                raise ParseError(f"bad exponent in {self.text!r}")
            base = base ** n
        return base

    def atom(self):
        kind, val = self.take()
        ring, alpha = self.ring, self.alphabet
        if kind == "num":
            return NCPoly.scalar(ring, val, alpha)
        if kind == "name":
            if alpha is not None and val in alpha:
                return NCPoly.word(ring, (val,), 1, alpha)
            if ring.is_parametric and val in ring.params:
                return NCPoly.scalar(ring, ring.var(val), alpha)
            if alpha is None:
                return NCPoly.word(ring, (val,), 1, alpha)
            raise ParseError(f"unknown name {val!r} in {self.text!r}")
        if (kind, val) == ("sym", "("):
            out = self.expr()
            self.expect(")")
            return out
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_ncpoly(text, ring, alphabet=None):
    """Parse expressions such as ``"x.g + 2*e1*(g - g^2)"``.

    Generator names become words, parameter names become scalars; ``.`` and
    ``*`` both denote the (noncommutative) product.
    """
    return _Parser(str(text), ring, alphabet).parse()


def _split_top(text):
    """Split on top-level + and - keeping the signs."""
    parts = []
    depth = 0
    cur = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip() and not cur.rstrip().endswith(("*", "^", "/")):
            parts.append(cur)
            cur = ch
        else:
            cur += ch
    if cur.strip():
        parts.append(cur)
    return parts


def parse_tensor(text, ring, alphabet=None, arity=2):
    """Parse ``"x⊗1 + g⊗x"`` (``|`` is accepted in place of ``⊗``).

    A bare ``0`` is the zero tensor of the given arity.
    """
    text = str(text).replace("|", "⊗")
    if text.strip() == "0":
        return TensorElt.zero(ring, arity, alphabet)
    total = None
    for part in _split_top(text):
        part = part.strip()
        sign = 1
        if part[0] in "+-":
            sign = -1 if part[0] == "-" else 1
            part = part[1:].strip()
        sides = _split_tensor(part)
        polys = [parse_ncpoly(s, ring, alphabet) for s in sides]
        t = TensorElt.pure(*polys)
        if sign < 0:
            t = -t
        total = t if total is None else total + t
    if total is None:
        raise ParseError("empty tensor expression")
    return total


def _split_tensor(text):
    sides = []
    depth = 0
    cur = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "⊗" and depth == 0:
            sides.append(cur)
            cur = ""
        else:
            cur += ch
    sides.append(cur)
    if len(sides) not in (2, 3):
        raise ParseError(f"tensor term {text!r} needs 2 or 3 factors")
    return sides
