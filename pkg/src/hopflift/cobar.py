"""Cobar complexes of finite-dimensional augmented coalgebras over F_p.

B⁺ = ker ε has basis e_w = w - ε(w)1 for the non-unit normal words w. The
differential on (B⁺)^{⊗n} is

    ∂^n = Σ_{i=0}^{n-1} (-1)^(n+i+1) 1^{⊗i} ⊗ Δ̄ ⊗ 1^{⊗(n-i-1)},

so that ∂¹ = Δ̄ and ∂²(x⊗y) = -Δ̄(x)⊗y + x⊗Δ̄(y).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionBlowup, Inadmissible
from .fplinalg import in_column_space, matmul, rank
from .hopf import HopfPresentation
from .ncalg import Alphabet, NCPoly, TensorElt, parse_tensor, word_text
from .rewrite import RewriteSystem, enumerate_basis
from .scalars import PrimeField

DEFAULT_CAP = 40000


def cobar_cap():
    return int(os.environ.get("HOPFLIFT_COBAR_CAP", DEFAULT_CAP))


@dataclass
class FiniteCoalgebra:
    p: int
    basis: list  # normal words, unit word () included
    delta: dict  # word -> {(u, v): coef}
    counit: dict  # word -> coef
    adams: dict | None = None  # word -> integer degree
    grading: dict | None = None  # word -> group element (for coinvariants)
    name: str = ""
    plus: list = field(init=False)
    index: dict = field(init=False)
    reduced: list = field(init=False)

    def __post_init__(self):
        if () not in self.basis:
            raise Inadmissible("the unit word must be a basis element")
        self.plus = [w for w in self.basis if w != ()]
        self.index = {w: i for i, w in enumerate(self.plus)}
        p = self.p
        self.reduced = []
        for w in self.plus:
            out = {}
            for (u, v), c in self.delta[w].items():
                if u == () or v == ():
                    continue
                k = (self.index[u], self.index[v])
                out[k] = (out.get(k, 0) + c) % p
            self.reduced.append({k: c for k, c in out.items() if c})

    @property
    def dim_plus(self):
        return len(self.plus)

    def check_coassociative(self):
        """(Δ̄⊗1)Δ̄ = (1⊗Δ̄)Δ̄ on B⁺ (equivalent to coassociativity of Δ)."""
        p = self.p
        for i, red in enumerate(self.reduced):
            left, right = {}, {}
            for (a, b), c in red.items():
                for (a1, a2), d in self.reduced[a].items():
                    k = (a1, a2, b)
                    left[k] = (left.get(k, 0) + c * d) % p
                for (b1, b2), d in self.reduced[b].items():
                    k = (a, b1, b2)
                    right[k] = (right.get(k, 0) + c * d) % p
            if {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}:
                return False
        return True

    def tensor_degree(self, idx):
        return sum(self.adams[self.plus[i]] for i in idx)


def coalgebra_from_hopf(H, adams=None, grading=None, name=""):
    """Coalgebra underlying a numeric confluent HopfPresentation."""
    basis = enumerate_basis(H.rs)
    delta = {w: dict(H.delta_word(w).terms) for w in basis}
    counit = {w: H.counit_word(w) for w in basis}
    ad = {w: adams(w) for w in basis} if adams else None
    gr = {w: grading(w) for w in basis} if grading else None
    return FiniteCoalgebra(H.ring.p, basis, delta, counit, ad, gr, name or H.name)


def truncated_polynomial(p, name="r", grading_exp=0):
    """k[r]/(r^p) with r primitive, Adams degree = word length and G-grading
    g^(grading_exp * length) in C_p."""
    ring = PrimeField(p)
    alphabet = Alphabet([name])
    rs = RewriteSystem(alphabet, [((name,) * p, "0")], ring, f"k[{name}]/({name}^{p})")
    H = HopfPresentation(rs, {name: f"{name}⊗1 + 1⊗{name}"}, {}, None, (), rs.name)
    return coalgebra_from_hopf(H, adams=len, grading=lambda w: (grading_exp * len(w)) % p)


def omega(p, name="r"):
    """ω(r) = Σ_{i=1}^{p-1} ((p-1)!/(i!(p-i)!)) r^i ⊗ r^(p-i)."""
    from .catalog import omega_coefficients

    ring = PrimeField(p)
    alphabet = Alphabet([name])
    terms = {((name,) * i, (name,) * (p - i)): c for i, c in omega_coefficients(p).items()}
    return TensorElt(ring, 2, terms, alphabet)


@dataclass
class CobarDiff:
    n: int
    matrix: np.ndarray  # (d^(n+1)) x (d^n)
    domain: list  # index tuples
    codomain: list


def _tuples(d, n):
    return list(itertools.product(range(d), repeat=n))


def build_complex(B, max_degree=2, restrict=None):
    """Differentials ∂^1..∂^max_degree as dense matrices.

    ``restrict`` is an optional predicate on index tuples selecting a
    subcomplex (e.g. one Adams degree or the trivial group grading).
    """
    if max_degree > 3:
        raise Inadmissible("degrees above 3 are not supported")
    d = B.dim_plus
    if d ** (max_degree + 1) > cobar_cap():
        raise DimensionBlowup(f"(dim B⁺)^{max_degree + 1} = {d ** (max_degree + 1)} "
                              f"exceeds the cap {cobar_cap()}")
    keep = restrict or (lambda t: True)
    spaces = {n: [t for t in _tuples(d, n) if keep(t)] for n in range(1, max_degree + 2)}
    out = []
    for n in range(1, max_degree + 1):
        dom, cod = spaces[n], spaces[n + 1]
        row = {t: i for i, t in enumerate(cod)}
        M = np.zeros((len(cod), len(dom)), dtype=np.int64)
        for j, t in enumerate(dom):
            for i in range(n):
                sign = 1 if (n + i + 1) % 2 == 0 else -1
                for (a, b), c in B.reduced[t[i]].items():
                    key = t[:i] + (a, b) + t[i + 1:]
                    r = row.get(key)
                    if r is None:
                        raise Inadmissible("restriction is not a subcomplex")
                    M[r, j] = (M[r, j] + sign * c) % B.p
        out.append(CobarDiff(n, M, dom, cod))
    return out


def square_zero(diffs, p):
    """∂^{n+1}∘∂^n = 0 for consecutive differentials."""
    for a, b in zip(diffs, diffs[1:]):
        if a.matrix.size and b.matrix.size and np.any(matmul(b.matrix, a.matrix, p)):
            return False
    return True


def _cohomology(diffs, i, p, dim0=1):
    if i == 0:
        return dim0
    D = diffs[i - 1].matrix
    ker = D.shape[1] - (rank(D, p) if D.size else 0)
    if i == 1:
        return ker  # ∂^0 = 0 on the cobar degree-0 term k
    prev = diffs[i - 2].matrix
    return ker - (rank(prev, p) if prev.size else 0)


def cohomology_dim(B, i):
    if i == 0:
        return 1
    return _cohomology(build_complex(B, max(i, 1)), i, B.p)


def graded_cohomology_dim(B, i, j):
    if B.adams is None:
        raise Inadmissible("no Adams grading on this coalgebra")
    if i == 0:
        return 1 if j == 0 else 0
    diffs = build_complex(B, i, restrict=lambda t: B.tensor_degree(t) == j)
    return _cohomology(diffs, i, B.p, 0)


def _vector(omega_t, B, n=2):
    d = B.dim_plus
    v = np.zeros(d ** n, dtype=np.int64)
    for k, c in omega_t.terms.items():
        if any(w not in B.index for w in k):
            raise Inadmissible("tensor is not in (B⁺)^{⊗n}")
        pos = 0
        for w in k:
            pos = pos * d + B.index[w]
        v[pos] = (v[pos] + c) % B.p
    return v


def is_cocycle(omega_t, B):
    diffs = build_complex(B, 2)
    return not np.any(matmul(diffs[1].matrix, _vector(omega_t, B), B.p))


def is_coboundary(omega_t, B):
    diffs = build_complex(B, 2)
    return in_column_space(diffs[0].matrix, _vector(omega_t, B), B.p)


def differential_of(B, x):
    """∂¹(x) = Δ̄(x) for x ∈ B⁺ as a TensorElt."""
    p = B.p
    terms = {}
    for w, c in x.terms.items():
        for (a, b), e in B.reduced[B.index[w]].items():
            k = (B.plus[a], B.plus[b])
            terms[k] = (terms.get(k, 0) + c * e) % p
    return TensorElt(PrimeField(p), 2, terms, x.alphabet)


def hopf_subalgebra(p, eps):
    """k<g,x>/(g^p - 1, x^p - εx, gx - xg - ε(g - g^2)), Δx = x⊗1 + g^ε⊗x."""
    if eps not in (0, 1):
        raise Inadmissible("ε must be 0 or 1")
    ring = PrimeField(p)
    alphabet = Alphabet(["g", "x"], {"g": 0})
    rules = [(("g",) * p, "1"), (("g", "x"), f"x.g + {eps}*(g - g^2)"),
             (("x",) * p, f"{eps}*x")]
    rs = RewriteSystem(alphabet, rules, ring, f"A(p={p}, eps={eps})")
    cop = {"x": "x⊗1 + g⊗x" if eps else "x⊗1 + 1⊗x"}
    return HopfPresentation(rs, cop, {}, None, ("g",), rs.name)


def hopf_subalgebra_h2(p, eps):
    if p not in (2, 3):
        raise DimensionBlowup("the Hopf subalgebra complex is supported for p <= 3")
    B = coalgebra_from_hopf(hopf_subalgebra(p, eps))
    return cohomology_dim(B, 2)


def coinvariant_h2(p, eps):
    """dim of the trivially G-graded part of H²(Ω k[r]/(r^p)), r graded g^ε."""
    B = truncated_polynomial(p, grading_exp=eps)
    trivial = lambda t: sum(B.grading[B.plus[i]] for i in t) % p == 0
    diffs = build_complex(B, 2, restrict=trivial)
    return _cohomology(diffs, 2, p, 1)


def cobar_report(B, omega_t=None, max_j=None):
    diffs = build_complex(B, 3 if B.dim_plus ** 4 <= cobar_cap() else 2)
    p = B.p
    rep = {
        "algebra": B.name,
        "p": p,
        "dimBplus": B.dim_plus,
        "dims": {"H0": 1, "H1": _cohomology(diffs, 1, p), "H2": _cohomology(diffs, 2, p)},
        "squareZero": square_zero(diffs, p),
    }
    if B.adams is not None:
        top = max_j if max_j is not None else 2 * max(B.adams.values())
        rep["graded"] = {f"2,{j}": graded_cohomology_dim(B, 2, j) for j in range(top + 1)}
        rep["graded"] = {k: v for k, v in rep["graded"].items() if v}
    if omega_t is not None:
        rep["omegaCocycle"] = is_cocycle(omega_t, B)
        rep["omegaCoboundary"] = is_coboundary(omega_t, B)
    return rep
