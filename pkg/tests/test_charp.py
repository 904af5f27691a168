import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopflift.catalog import build_family
from hopflift.charp import (
    LEMMA_SUITES, ad_power, annihilation_check, closed_form_coefficients, cyclic_derivation,
    delta_p_equals_delta, derivation_power, iterated_coefficients, jacobson_contract,
    jacobson_correction, rho_power_omega, skew_group_system, tensor_pth_power_check,
    verify_coeff_table,
)
from hopflift.errors import Inadmissible
from hopflift.ncalg import Alphabet, NCPoly, TensorElt, commutator, tensor_power
from hopflift.rewrite import RewriteSystem
from hopflift.scalars import PrimeField

AB = Alphabet(["x", "y"])

words = st.lists(st.sampled_from(["x", "y"]), min_size=1, max_size=3).map(tuple)


def nc(p):
    return st.dictionaries(words, st.integers(1, p - 1), min_size=1, max_size=3).map(
        lambda d: NCPoly(PrimeField(p), d, AB))


@settings(max_examples=25, deadline=None)
@given(nc(2), nc(2))
def test_jacobson_p2_against_explicit_commutator(a, b):
    # (a+b)^2 - a^2 - b^2 = ab + ba = [a, b] in characteristic 2
    assert jacobson_correction(a, b) == commutator(a, b)
    assert jacobson_contract(a, b)


@settings(max_examples=25, deadline=None)
@given(nc(3), nc(3))
def test_jacobson_p3_against_explicit_brackets(a, b):
    # (a+b)^3 = a^3 + b^3 + [a,[a,b]] + [[a,b],b]
    ab = commutator(a, b)
    want = commutator(a, ab) + commutator(ab, b)
    assert jacobson_correction(a, b) == want
    assert ((a + b) ** 3 - a ** 3 - b ** 3) == want


def test_jacobson_in_a_quotient():
    H = build_family("A2e", 3)
    x, y = H.poly("x"), H.poly("y")
    assert jacobson_contract(x, y, H.rs)


def test_commuting_elements_obey_the_freshmans_dream():
    rs = RewriteSystem(AB, [(("x", "y"), "y.x")], PrimeField(5))
    x, y = rs.poly("x"), rs.poly("y")
    assert jacobson_correction(x, y, rs).is_zero()


def _leibniz_power(p, q, image, m):
    """δ^m(g) by expanding δ(g^a) = a g^(a-1) δ(g) on dictionaries."""
    cur = {1: 1}
    for _ in range(m):
        nxt = {}
        for a, c in cur.items():
            if a == 0:
                continue
            for e, d in image.items():
                k = (a - 1 + e) % q
                nxt[k] = (nxt.get(k, 0) + a * c * d) % p
        cur = {k: v for k, v in nxt.items() if v}
    return cur


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2, 2), (2, 4), (3, 3), (3, 9), (5, 5)]),
       st.dictionaries(st.integers(0, 24), st.integers(1, 4), min_size=1, max_size=3),
       st.integers(1, 6))
def test_derivation_power_against_leibniz_expansion(pq, raw, m):
    p, q = pq
    image = {}
    for e, c in raw.items():
        image[e % q] = (image.get(e % q, 0) + c) % p
    image = {e: c for e, c in image.items() if c}
    text = " + ".join(f"{c}*g^{e}" for e, c in sorted(image.items())) or "0"
    spec = cyclic_derivation(p, q, text)
    got = {e[0]: c for e, c in derivation_power(spec, m)["g"].items()}
    assert got == _leibniz_power(p, q, image, m)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_delta_p_equals_delta(p):
    for q in (p, p * p):
        assert delta_p_equals_delta(cyclic_derivation(p, q, "g - g^2"))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_delta_p_minus_one_of_g(p):
    img = derivation_power(cyclic_derivation(p, p, "g - g^2"), p - 1)["g"]
    # g - g^p = g - 1
    assert img == {(1,): 1, (0,): p - 1}


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)])
def test_coefficient_table(p, n):
    for m in range(1, 2 * p + 1):
        assert closed_form_coefficients(p, p ** n, m) == iterated_coefficients(p, p ** n, m)
    assert verify_coeff_table(p, n, 2 * p)


def test_coefficient_table_size_guard():
    with pytest.raises(Inadmissible):
        verify_coeff_table(3, 3, 1)


@pytest.mark.parametrize("p", [3, 5])
def test_annihilation(p):
    assert all(annihilation_check(p, u) for u in range(1, p))


@pytest.mark.parametrize("p", [3, 5])
def test_pth_power_of_coproduct(p):
    for mu in range(p):
        assert tensor_pth_power_check(p, mu)


def test_central_g_gives_freshmans_dream():
    rs = skew_group_system(3, 0)
    x, g, one = rs.poly("x"), rs.poly("g"), rs.one()
    t = TensorElt.pure(x, one) + TensorElt.pure(g, x)
    want = (TensorElt.pure(rs.reduce(x ** 3), one)
            + TensorElt.pure(one, rs.reduce(x ** 3))).reduced(rs)
    assert tensor_power(t, 3, rs) == want
    assert ad_power(g, x, 2, rs).is_zero()


def test_rho_examples():
    r = rho_power_omega(3, 1, 0)
    assert r["lhs"].is_zero() and r["dZ"].is_zero()
    for s in range(3):
        r = rho_power_omega(3, 0, s)
        assert r["lhs"] == r["dZ"]
    r = rho_power_omega(3, 1, 1)
    assert r["lhs"] == r["dZ"]


@pytest.mark.parametrize("name", sorted(LEMMA_SUITES))
@pytest.mark.parametrize("p", [2, 3, 5])
def test_lemma_suites(name, p):
    res = LEMMA_SUITES[name](p)
    assert res["pass"], [c for c in res["cases"] if not c["pass"]]
