import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopflift.errors import TooLarge, ZeroInverse
from hopflift.scalars import (
    Fp, ParamPoly, ParamRing, PrimeField, full_locus, inv_mod, vanishing_locus,
)


@pytest.mark.parametrize("a,p,inv", [(2, 3, 2), (1, 5, 1), (3, 5, 2)])
def test_inverse_examples(a, p, inv):
    assert inv_mod(a, p) == inv
    assert Fp(a, p) * Fp(inv, p) == Fp(1, p)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroInverse):
        inv_mod(0, 3)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_every_nonzero_residue_inverts(p):
    for a in range(1, p):
        assert (a * inv_mod(a, p)) % p == 1


PARAMS = ("l", "s", "t")


def _poly(p, terms):
    return ParamPoly(p, PARAMS, {e: c for e, c in terms})


def polys(p):
    exps = st.tuples(*(st.integers(0, 3) for _ in PARAMS))
    return st.lists(st.tuples(exps, st.integers(0, p - 1)), max_size=5).map(
        lambda ts: _poly(p, ts))


@settings(max_examples=60, deadline=None)
@given(polys(3), polys(3), polys(3))
def test_ring_axioms_f3(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@settings(max_examples=40, deadline=None)
@given(polys(5), polys(5), st.tuples(*(st.integers(0, 4) for _ in PARAMS)))
def test_evaluation_is_a_ring_map(a, b, pt):
    assert (a * b).evaluate(pt) == (a.evaluate(pt) * b.evaluate(pt)) % 5
    assert (a + b).evaluate(pt) == (a.evaluate(pt) + b.evaluate(pt)) % 5


def test_evaluation_examples():
    R = ParamRing(3, ["l", "s", "t"])
    l, s, t = R.var("l"), R.var("s"), R.var("t")
    assert (l * s + t).evaluate((1, 2, 1)) == 0
    R2 = ParamRing(3, ["s", "e2"], ["e2"])
    s, e2 = R2.var("s"), R2.var("e2")
    assert (s ** 2 - e2).evaluate((0, 0)) == 0
    assert (s ** 2 - e2).evaluate((2, 1)) == 0


def test_loci_examples():
    R = ParamRing(2, ["s", "t"])
    loc = vanishing_locus([R.var("s")], 2, ["s", "t"])
    assert loc.sorted_points() == [(0, 0), (0, 1)]
    assert vanishing_locus([], 3, ["t"]) == full_locus(3, ["t"])
    assert len(full_locus(3, ["t"])) == 3


def test_eps_parameters_range_over_zero_and_one():
    loc = full_locus(5, ["e", "m"], ["e"])
    assert {pt[0] for pt in loc.points} == {0, 1}
    assert len(loc) == 10


def test_a1a_printed_set_against_brute_force():
    # locus of the five printed conditions, evaluated point by point by hand
    R = ParamRing(3, ["e1", "e2", "l", "s", "t"], ["e1", "e2"])
    e1, e2, l, s, t = (R.var(n) for n in R.params)
    q = e2 - s ** 2
    fs = [e1 * s, l * s, l * t, q * s, q * t]
    want = set()
    for E1, E2, L, S, T in itertools.product(range(2), range(2), range(3), range(3), range(3)):
        Q = E2 - S * S
        if all(v % 3 == 0 for v in (E1 * S, L * S, L * T, Q * S, Q * T)):
            want.add((E1, E2, L, S, T))
    assert set(vanishing_locus(fs, 3, R.params, R.eps).points) == want


def test_enumeration_cap(monkeypatch):
    monkeypatch.setenv("HOPFLIFT_ENUM_CAP", "10")
    with pytest.raises(TooLarge):
        list(full_locus(3, ["a", "b", "c"]))


def test_prime_field_interface():
    F = PrimeField(5)
    assert F.mul(3, 2) == 1
    assert F.inv(3) == 2
    assert not F.is_parametric
