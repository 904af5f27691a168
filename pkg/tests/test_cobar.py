import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopflift.catalog import build_family
from hopflift.cobar import (
    build_complex, coalgebra_from_hopf, cobar_report, cohomology_dim, coinvariant_h2,
    differential_of, graded_cohomology_dim, hopf_subalgebra, hopf_subalgebra_h2, is_coboundary,
    is_cocycle, omega, square_zero, truncated_polynomial,
)
from hopflift.errors import DimensionBlowup
from hopflift.hopf import skew_primitives
from hopflift.ncalg import Alphabet, NCPoly, TensorElt
from hopflift.scalars import PrimeField
from hopflift.suite import constraint_points


def test_complex_shapes_for_the_subalgebra():
    B = coalgebra_from_hopf(hopf_subalgebra(2, 1))
    assert B.dim_plus == 3
    d1, d2 = build_complex(B, 2)
    assert d1.matrix.shape == (9, 3) and d2.matrix.shape == (27, 9)
    assert square_zero([d1, d2], 2)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_truncated_polynomial(p):
    B = truncated_polynomial(p)
    assert B.check_coassociative()
    rep = cobar_report(B, omega(p))
    assert rep["dims"] == {"H0": 1, "H1": 1, "H2": 1}
    assert rep["squareZero"] and rep["omegaCocycle"] and not rep["omegaCoboundary"]
    assert rep["graded"] == {f"2,{p}": 1}


@pytest.mark.parametrize("p", [2, 3, 5])
def test_graded_pieces_add_up(p):
    B = truncated_polynomial(p)
    total = sum(graded_cohomology_dim(B, 2, j) for j in range(2 * p + 1))
    assert total == cohomology_dim(B, 2)


def _r(p, n):
    return NCPoly.word(PrimeField(p), ("r",) * n, 1, Alphabet(["r"]))


def test_coboundary_examples():
    B = truncated_polynomial(3)
    d = differential_of(B, _r(3, 2))
    assert is_cocycle(d, B) and is_coboundary(d, B)
    rr = TensorElt.pure(_r(3, 1), _r(3, 1))
    assert is_cocycle(rr, B) and is_coboundary(rr, B)
    assert d == rr.scale(2)


@pytest.mark.parametrize("p,eps", [(2, 0), (2, 1), (3, 0), (3, 1)])
def test_subalgebra_h2(p, eps):
    assert hopf_subalgebra_h2(p, eps) == 1


def test_subalgebra_cap():
    with pytest.raises(DimensionBlowup):
        hopf_subalgebra_h2(5, 0)


def test_environment_cap(monkeypatch):
    monkeypatch.setenv("HOPFLIFT_COBAR_CAP", "5")
    with pytest.raises(DimensionBlowup):
        build_complex(truncated_polynomial(3), 2)


@pytest.mark.parametrize("p,eps", [(2, 0), (3, 0), (3, 1)])
def test_coinvariant_part_matches_subalgebra(p, eps):
    assert coinvariant_h2(p, eps) == hopf_subalgebra_h2(p, eps)


CASES = [("A1a", 2), ("Ca", 2), ("D1b", 2), ("Cb2", 2), ("D2b", 2), ("A2e", 2)]


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(CASES), st.integers(0, 10 ** 6))
def test_square_zero_and_h1_equals_primitives(case, seed):
    import random

    tag, p = case
    pts = constraint_points(tag, p)
    pt = random.Random(seed).choice(pts)
    H = build_family(tag, p, pt or None)
    B = coalgebra_from_hopf(H)
    assert B.check_coassociative()
    diffs = build_complex(B, 2)
    assert square_zero(diffs, p)
    assert cohomology_dim(B, 1) == len(skew_primitives(H))
