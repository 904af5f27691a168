import pytest

from hopflift.catalog import build_family
from hopflift.errors import NotConfluent
from hopflift.hopf import HopfPresentation, extend_coproduct, skew_primitives, verify_hopf_axioms
from hopflift.ncalg import parse_tensor


def tensor(H, text):
    return parse_tensor(text, H.ring, H.alphabet).reduced(H.rs)


def test_grouplike_squares():
    H = build_family("A1a", 3, {"e1": 1, "e2": 0, "l": 0, "s": 0, "t": 0})
    assert extend_coproduct(H.poly("g^2"), H) == tensor(H, "g^2⊗g^2")


def test_coproduct_of_x_squared_in_cb2():
    H = build_family("Cb2", 2, {"e1": 1, "s": 0, "t": 0})
    want = tensor(H, "x^2⊗1 + (g + g^2)⊗x + g^2⊗x^2")
    assert extend_coproduct(H.poly("x.x"), H) == want


@pytest.mark.parametrize("p", [3, 5])
def test_coproduct_of_y_in_ca(p):
    from math import factorial

    H = build_family("Ca", p, {"e3": 1, "s": 0, "t": 0})
    c = {i: factorial(p - 1) // (factorial(i) * factorial(p - i)) % p for i in range(1, p)}
    omega = " + ".join(f"{c[i]}*x^{i}⊗x^{p - i}" for i in range(1, p))
    assert H.coproduct["y"] == tensor(H, "y⊗1 + 1⊗y + " + omega)
    if p == 3:
        assert c == {1: 1, 2: 1}


@pytest.mark.parametrize("tag,p,disc,values", [
    ("GR-B", 3, {}, None),
    ("A2e", 3, {}, None),
    ("B3", 3, {}, {"e": 1, "m": 2, "t": 1}),
    ("D2b", 5, {}, {"e1": 1, "t": 3}),
    ("GR-C", 5, {"eps": 1}, None),
])
def test_axioms_pass(tag, p, disc, values):
    H = build_family(tag, p, values, **disc)
    assert verify_hopf_axioms(H).all_pass


def test_sabotaged_antipode_is_caught():
    H = build_family("D1b", 3, {"e1": 1, "l": 1})
    bad = HopfPresentation(H.rs, H.coproduct, {}, {"x": "x"}, H.grouplike, "sabotaged")
    rep = verify_hopf_axioms(bad)
    assert not rep.antipodeAxiom
    assert any(w["element"] == "x" for w in rep.witnesses if w["check"] == "antipodeAxiom")


def test_non_confluent_input_rejected():
    H = build_family("A3b", 2)
    with pytest.raises(NotConfluent):
        verify_hopf_axioms(H)


def _span(H, polys):
    return {frozenset(f.terms.items()) for f in polys}


def test_primitives_of_a2():
    H = build_family("A2a", 3)
    prims = skew_primitives(H)
    assert len(prims) == 2
    words = {w for f in prims for w in f.terms}
    assert words == {("x",), ("y",)}


def test_primitives_of_ca():
    H = build_family("Ca", 3, {"e3": 1, "s": 0, "t": 0})
    prims = skew_primitives(H)
    assert len(prims) == 1 and set(prims[0].terms) == {("x",)}


def test_no_primitives_in_b3():
    H = build_family("B3", 3, {"e": 1, "m": 0, "t": 0})
    assert skew_primitives(H) == []


def test_skew_primitive_of_x_in_d1b():
    # Δx = x⊗1 + g⊗x
    H = build_family("D1b", 3, {"e1": 0, "l": 0})
    sp = skew_primitives(H, g=(), h=("g",))
    assert any(set(f.terms) == {("x",)} for f in sp)


def test_specialization_commutes_with_construction():
    H = build_family("A1a", 3)
    pt = {"e1": 1, "e2": 1, "l": 2, "s": 0, "t": 0}
    a, b = H.specialize(pt), build_family("A1a", 3, pt)
    assert a.rs.rule_texts() == b.rs.rule_texts()
    assert all(a.coproduct[k] == b.coproduct[k] for k in b.coproduct)
