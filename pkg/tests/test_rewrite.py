import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopflift.catalog import build_family, printed_constraints
from hopflift.errors import InfiniteBasis, NotInterReduced, OrderViolation
from hopflift.ncalg import Alphabet, NCPoly
from hopflift.rewrite import (
    RewriteSystem, church_rosser_audit, complete, confluence_constraints, constraint_locus,
    enumerate_basis, is_confluent, overlaps, rewrite_report,
)
from hopflift.scalars import PrimeField, vanishing_locus


def _sys(rules, letters=("x",), p=2):
    return RewriteSystem(Alphabet(list(letters)), rules, PrimeField(p))


def test_square_zero_system():
    rs = _sys([(("x", "x"), "0")])
    amb = overlaps(rs)
    assert [a.overlap_word for a in amb] == [("x", "x", "x")]
    assert is_confluent(rs)
    assert enumerate_basis(rs) == [(), ("x",)]


def test_reduce_examples():
    H = build_family("A1a", 3, {"e1": 1, "e2": 0, "l": 0, "s": 0, "t": 0})
    assert H.reduce(H.poly("g.x")) == H.poly("x.g + g - g^2")
    assert H.reduce(H.poly("g^3")) == H.poly("1")
    assert H.reduce(H.poly("x.y")) == H.poly("y.x")


def test_g_cubed_against_gx_overlap_present():
    H = build_family("A1a", 3)
    words = {a.overlap_word for a in overlaps(H.rs)}
    assert ("g", "g", "g", "x") in words


def test_rules_must_decrease():
    with pytest.raises(OrderViolation):
        _sys([(("x",), "x.x")])


def test_rules_must_be_interreduced():
    with pytest.raises(NotInterReduced):
        _sys([(("x", "x"), "0"), (("x", "x", "x"), "0")])


def test_infinite_basis_detected():
    rs = _sys([(("x", "y"), "y.x")], ("x", "y"))
    with pytest.raises(InfiniteBasis):
        enumerate_basis(rs)


@pytest.mark.parametrize("tag,p", [("A1a", 2), ("A1a", 3), ("Ca", 2), ("Ca", 3), ("Cb2", 2)])
def test_derived_constraints_match_printed(tag, p):
    H = build_family(tag, p)
    polys, marker = printed_constraints(tag, p)
    assert marker == "printed"
    assert constraint_locus(H.rs) == vanishing_locus(polys, p, H.ring.params, H.ring.eps)


@pytest.mark.parametrize("u", [1, 2])
def test_a1b_is_constraint_free(u):
    H = build_family("A1b", 3, u=u)
    assert is_confluent(H.rs)
    # whatever survives is a multiple of e^2 - e, which vanishes on {0, 1}
    assert len(constraint_locus(H.rs)) == 4 * 3


def test_a2a_basis_is_pbw():
    H = build_family("A2a", 3)
    want = sorted(("y",) * a + ("x",) * b + ("g",) * c
                  for a in range(3) for b in range(3) for c in range(3))
    assert sorted(enumerate_basis(H.rs)) == want


def _brute_irreducible(rs, max_len):
    letters = rs.alphabet.symbols
    out = []
    for n in range(max_len + 1):
        for w in itertools.product(letters, repeat=n):
            if not any(w[i:i + len(r.lhs)] == r.lhs for r in rs.rules
                       for i in range(n - len(r.lhs) + 1)):
                out.append(w)
    return sorted(out)


@pytest.mark.parametrize("tag,p,values", [
    ("A1a", 2, {"e1": 1, "e2": 1, "l": 1, "s": 0, "t": 0}),
    ("A2e", 3, None),
    ("D1b", 2, {"e1": 1, "l": 1}),
    ("Cb2", 2, {"e1": 1, "s": 0, "t": 1}),
])
def test_basis_automaton_against_brute_force(tag, p, values):
    H = build_family(tag, p, values)
    fast = sorted(enumerate_basis(H.rs))
    longest = max(len(w) for w in fast)
    assert fast == _brute_irreducible(H.rs, longest + 2)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["A1a", "Ca", "D2b", "B3"]), st.integers(0, 10 ** 6))
def test_church_rosser_on_confluent_points(tag, seed):
    import random

    p = 3
    H = build_family(tag, p)
    pts = sorted(constraint_locus(H.rs).points)
    pt = random.Random(seed).choice(pts)
    K = H.specialize(pt)
    assert is_confluent(K.rs)
    ok, witness = church_rosser_audit(K.rs, samples=60, seed=seed)
    assert ok, witness


def test_completion_of_noncommuting_generators_collapses():
    # xy = yx + x together with x^2 = 0 and y^2 = y is not confluent; completion
    # must still present the same algebra
    ab = Alphabet(["x", "y"])
    rs = RewriteSystem(ab, [(("x", "y"), "y.x + x"), (("x", "x"), "0"), (("y", "y"), "y")],
                       PrimeField(3))
    done = complete(rs)
    assert is_confluent(done)
    for r in rs.rules:
        rel = NCPoly.word(rs.ring, r.lhs, 1, ab) - r.rhs
        assert done.reduce(rel).is_zero()


def test_report_parametric_and_numeric():
    H = build_family("Ca", 3)
    rep = rewrite_report(H.rs)
    assert rep["locusSize"] < rep["parameterSpaceSize"]
    assert not rep["confluent"]
    K = build_family("Ca", 3, {"e3": 1, "s": 0, "t": 2})
    rep = rewrite_report(K.rs)
    assert rep["confluent"] and rep["basisCount"] == 27
