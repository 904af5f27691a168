"""Exact arithmetic over F_p and over F_p[parameters].

Two coefficient rings are used by the rest of the package:

* ``PrimeField(p)`` whose elements are plain ints in ``range(p)``;
* ``ParamRing(p, params, eps)`` whose elements are ``ParamPoly`` values.

Both expose the same small method set (add, sub, mul, neg, is_zero, coerce,
fmt) so that noncommutative polynomials can be generic over the ring.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import total_ordering

from .errors import ArityMismatch, TooLarge, ZeroInverse

SUPPORTED_PRIMES = (2, 3, 5, 7)
ENUM_CAP_ENV = "HOPFLIFT_ENUM_CAP"
DEFAULT_ENUM_CAP = 5 ** 6


def _check_prime(p):
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"unsupported prime {p}")


@total_ordering
@dataclass(frozen=True)
class Fp:
    value: int
    p: int

    def __post_init__(self):
        _check_prime(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def _other(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other.value
        return other % self.p

    def __add__(self, other):
        return Fp(self.value + self._other(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.value - self._other(other), self.p)

    def __rsub__(self, other):
        return Fp(self._other(other) - self.value, self.p)

    def __mul__(self, other):
        return Fp(self.value * self._other(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __truediv__(self, other):
        return self * ff_inv(Fp(self._other(other), self.p))

    def __pow__(self, n):
        if n < 0:
            return ff_inv(self) ** (-n)
        return Fp(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __lt__(self, other):
        return self.value < self._other(other)

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value} mod {self.p})"


def ff_inv(a):
    """Inverse of a nonzero Fp element."""
    if a.value == 0:
        raise ZeroInverse(f"0 has no inverse mod {a.p}")
    return Fp(pow(a.value, a.p - 2, a.p), a.p)


def inv_mod(a, p):
    a %= p
    if a == 0:
        raise ZeroInverse(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


# ---------------------------------------------------------------- ParamPoly


class ParamPoly:
    """Sparse polynomial over F_p in an ordered tuple of named parameters.

    ``terms`` maps exponent tuples to nonzero residues. Instances are treated
    as immutable.
    """

    __slots__ = ("p", "params", "terms", "_hash")

    def __init__(self, p, params, terms=None):
        self.p = p
        self.params = tuple(params)
        clean = {}
        if terms:
            for e, c in terms.items():
                c %= p
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def constant(cls, p, params, c):
        return cls(p, params, {(0,) * len(params): c})

    @classmethod
    def var(cls, p, params, name, power=1):
        params = tuple(params)
        e = [0] * len(params)
        e[params.index(name)] = power
        return cls(p, params, {tuple(e): 1})

    def _wrap(self, other):
        if isinstance(other, ParamPoly):
            if other.params != self.params or other.p != self.p:
                raise ArityMismatch("parameter lists differ")
            return other
        if isinstance(other, Fp):
            other = other.value
        return ParamPoly.constant(self.p, self.params, other)

    def __add__(self, other):
        other = self._wrap(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return ParamPoly(self.p, self.params, t)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly(self.p, self.params, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        other = self._wrap(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return ParamPoly(self.p, self.params, t)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = ParamPoly.constant(self.p, self.params, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.params), 0)

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self.p == other.p and self.params == other.params and self.terms == other.terms
        if isinstance(other, (int, Fp)):
            return self == self._wrap(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.params, frozenset(self.terms.items())))
        return self._hash

    def evaluate(self, point):
        if len(point) != len(self.params):
            raise ArityMismatch(f"expected {len(self.params)} values, got {len(point)}")
        vals = [int(v) % self.p for v in point]
        total = 0
        for e, c in self.terms.items():
            m = c
            for v, k in zip(vals, e):
                if k:
                    m *= pow(v, k, self.p)
            total += m
        return total % self.p

    def coefficient_in(self, name, power):
        """Coefficient of name^power viewed as a polynomial in that one parameter."""
        i = self.params.index(name)
        t = {}
        for e, c in self.terms.items():
            if e[i] == power:
                e2 = list(e)
                e2[i] = 0
                t[tuple(e2)] = c
        return ParamPoly(self.p, self.params, t)

    def monic(self):
        """Scalar multiple with leading coefficient 1 (same vanishing set)."""
        if not self.terms:
            return self
        lead = self.terms[_sorted_exps(self.terms)[0]]
        return self * inv_mod(lead, self.p)

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for e in _sorted_exps(self.terms):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.params, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"ParamPoly({self.to_text()!r}, p={self.p})"


def _sorted_exps(terms):
    return sorted(terms, key=lambda e: (sum(e), e), reverse=True)


def poly_eval_at(f, point):
    """Substitute a point (ints or Fp values) into a ParamPoly."""
    return Fp(f.evaluate(point), f.p)


# ---------------------------------------------------------------- rings


class PrimeField:
    """Coefficient ring F_p with elements stored as ints."""

    is_parametric = False

    def __init__(self, p):
        _check_prime(p)
        self.p = p
        self.zero = 0
        self.one = 1

    def coerce(self, c):
        if isinstance(c, Fp):
            return c.value
        if isinstance(c, ParamPoly):
            if not c.is_constant():
                raise TypeError("parametric coefficient in a numeric ring")
            return c.constant_value()
        return c % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def is_zero(self, a):
        return a == 0

    def inv(self, a):
        return inv_mod(a, self.p)

    def fmt(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class ParamRing:
    """F_p[params]; ``eps`` names the parameters restricted to {0, 1}."""

    is_parametric = True

    def __init__(self, p, params, eps=()):
        _check_prime(p)
        self.p = p
        self.params = tuple(params)
        self.eps = tuple(e for e in self.params if e in set(eps))
        self.zero = ParamPoly(p, self.params)
        self.one = ParamPoly.constant(p, self.params, 1)

    def coerce(self, c):
        if isinstance(c, ParamPoly):
            if c.params != self.params:
                raise ArityMismatch("parameter lists differ")
            return c
        if isinstance(c, Fp):
            c = c.value
        return ParamPoly.constant(self.p, self.params, c)

    def var(self, name):
        return ParamPoly.var(self.p, self.params, name)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return not a.terms

    def inv(self, a):
        if not a.is_constant():
            raise ZeroInverse("non-constant parameter polynomial is not invertible")
        return self.coerce(inv_mod(a.constant_value(), self.p))

    def fmt(self, a):
        if len(a.terms) == 1:
            return a.to_text()
        return f"({a.to_text()})"

    def evaluate(self, a, point):
        return a.evaluate(point)

    def point_from_mapping(self, values):
        missing = [n for n in self.params if n not in values]
        if missing:
            raise ArityMismatch(f"missing parameter values: {missing}")
        return tuple(int(values[n]) % self.p for n in self.params)

    def __eq__(self, other):
        return isinstance(other, ParamRing) and (other.p, other.params, other.eps) == (
            self.p, self.params, self.eps)

    def __hash__(self):
        return hash(("R", self.p, self.params, self.eps))

    def __repr__(self):
        return f"ParamRing({self.p}, {self.params}, eps={self.eps})"


# ---------------------------------------------------------------- loci


@dataclass(frozen=True)
class Locus:
    p: int
    params: tuple
    points: frozenset

    def __len__(self):
        return len(self.points)

    def __contains__(self, pt):
        return tuple(pt) in self.points

    def sorted_points(self):
        return sorted(self.points)


def enum_cap():
    return int(os.environ.get(ENUM_CAP_ENV, DEFAULT_ENUM_CAP))


def parameter_space(p, params, eps=()):
    """All points of F_p^k with the eps coordinates restricted to {0, 1}."""
    eps = set(eps)
    ranges = [range(2) if n in eps else range(p) for n in params]
    size = 1
    for r in ranges:
        size *= len(r)
    if size > enum_cap():
        raise TooLarge(f"{size} parameter points exceed the cap {enum_cap()}")
    return itertools.product(*ranges)


def vanishing_locus(fs, p, params, eps=()):
    params = tuple(params)
    fs = [f for f in fs if not f.is_zero()]
    for f in fs:
        if f.params != params:
            raise ArityMismatch("constraint uses a different parameter list")
    pts = frozenset(pt for pt in parameter_space(p, params, eps)
                    if all(f.evaluate(pt) == 0 for f in fs))
    return Locus(p, params, pts)


def full_locus(p, params, eps=()):
    return Locus(p, tuple(params), frozenset(parameter_space(p, params, eps)))
