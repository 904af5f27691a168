import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopflift.errors import AlphabetMismatch, ArityMismatch, ParseError
from hopflift.ncalg import (
    Alphabet, BraidingData, NCPoly, TensorElt, braided_tensor_mul, parse_ncpoly, parse_tensor,
    tensor_mul, tensor_power,
)
from hopflift.scalars import PrimeField

AB = Alphabet(["g", "x", "y"], {"g": 0})


def P(text, p=3, alphabet=AB):
    return parse_ncpoly(text, PrimeField(p), alphabet)


def T(text, p=3, alphabet=AB):
    return parse_tensor(text, PrimeField(p), alphabet)


def test_product_examples():
    assert P("(x + y)*(x - y)") == P("x^2 - x.y + y.x - y^2")
    assert P("1") * P("x.y") == P("x.y")
    assert P("x", 2) * P("x", 2) == P("x^2", 2)


def test_noncommutative():
    assert P("x*y") != P("y*x")


def test_tensor_examples():
    assert T("x⊗1") * T("1⊗x") == T("x⊗x")
    d = T("x⊗1 + g⊗x", 2)
    assert tensor_power(d, 2) == T("x^2⊗1 + x.g⊗x + g.x⊗x + g^2⊗x^2", 2)


def test_arity_mismatch():
    a = TensorElt.pure(P("x"), P("y"))
    b = TensorElt.pure(P("x"), P("y"), P("g"))
    with pytest.raises(ArityMismatch):
        a + b


def test_alphabet_mismatch():
    other = Alphabet(["a"])
    with pytest.raises(AlphabetMismatch):
        P("x") + parse_ncpoly("a", PrimeField(3), other)


@pytest.mark.parametrize("bad", ["x +", "x..y", "(x", "q"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        P(bad)


def test_order_key_puts_grouplikes_last():
    # weight first: g has weight 0 so x.g < g.x is decided by ranks, y.x > x
    assert AB.key(("g", "g", "g")) < AB.key(("x",))
    assert AB.key(("x",)) < AB.key(("y", "x"))


words = st.lists(st.sampled_from(["g", "x", "y"]), max_size=4).map(tuple)
nc = st.dictionaries(words, st.integers(1, 4), max_size=5).map(
    lambda d: NCPoly(PrimeField(5), d, AB))


@settings(max_examples=80, deadline=None)
@given(nc)
def test_text_round_trip(f):
    assert parse_ncpoly(f.to_text(), PrimeField(5), AB) == f


@settings(max_examples=40, deadline=None)
@given(nc, nc, nc)
def test_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None)
@given(nc, nc)
def test_tensor_round_trip(a, b):
    t = TensorElt.pure(a, b)
    assert parse_tensor(t.to_text(), PrimeField(5), AB) == t


def test_braided_product_with_trivial_data_is_plain_product():
    bd = BraidingData((3,), {"g": (0,), "x": (0,), "y": (0,)})
    rng = random.Random(1)
    letters = ["g", "x", "y"]
    for _ in range(20):
        mk = lambda: TensorElt(PrimeField(3), 2, {
            (tuple(rng.choices(letters, k=rng.randint(0, 2))),
             tuple(rng.choices(letters, k=rng.randint(0, 2)))): rng.randint(1, 2)
            for _ in range(3)}, AB)
        s, t = mk(), mk()
        assert braided_tensor_mul(s, t, bd) == tensor_mul(s, t)


def test_braided_product_moves_past_grading():
    # (1⊗x)(x⊗1) = (g·x)⊗x with g acting by 2 on x
    ab = Alphabet(["x"])
    bd = BraidingData((3,), {"x": (1,)}, {(0, "x"): {"x": 2}})
    s = parse_tensor("1⊗x", PrimeField(3), ab)
    t = parse_tensor("x⊗1", PrimeField(3), ab)
    assert braided_tensor_mul(s, t, bd) == parse_tensor("2*x⊗x", PrimeField(3), ab)
