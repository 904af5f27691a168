import pytest

from hopflift.catalog import (
    A2_VARIANTS, CASE_GROUPS, DEGENERATIONS, FAMILIES, b3_identity_suite, build_family,
    cross_check_constraints, expected_counts, list_representatives, manifest, primitive_dim,
)
from hopflift.errors import Inadmissible
from hopflift.rewrite import complete, enumerate_basis, is_confluent


def zero_in(H, text):
    return H.reduce(H.poly(text)).is_zero()


def test_b3_relations():
    H = build_family("B3", 3, {"e": 1, "m": 0, "t": 0})
    assert zero_in(H, "y^3 - y^2")
    assert zero_in(H, "x.y - y.x + x^2 - x + y")


def test_cb2_bracket():
    H = build_family("Cb2", 2, {"e1": 1, "s": 0, "t": 0})
    assert zero_in(H, "g.y - y.g - (1 + g + x + x.g)")


@pytest.mark.parametrize("p", [2, 3, 5])
def test_d1a_degenerate_point_is_commutative(p):
    H = build_family("D1a", p, {"l": 0})
    assert zero_in(H, "g.x - x.g") and zero_in(H, f"x^{p}")
    assert len(enumerate_basis(H.rs)) == p ** 3


def _all_discretes(tag, p):
    fam = FAMILIES[tag]
    if not fam.discrete:
        return [{}]
    (name, allowed), = fam.discrete.items()
    return [{name: v} for v in allowed(p)]


DEGENERATION_CASES = [(t, p) for t in sorted(DEGENERATIONS) for p in (2, 3, 5)
                      if FAMILIES[t].admissible(p)]


@pytest.mark.parametrize("tag,p", DEGENERATION_CASES)
def test_zero_parameters_give_the_graded_row(tag, p):
    from hopflift.catalog import degeneration_check

    for d in _all_discretes(tag, p):
        assert degeneration_check(tag, p, **d) == []


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("tag", ["A1a", "Ca"])
def test_printed_constraints_match(tag, p):
    v = cross_check_constraints(tag, p)
    assert v.match and v.marker == "printed"


@pytest.mark.parametrize("tag", ["D2b", "B3", "CbP", "D1c"])
def test_constraint_free_families(tag):
    v = cross_check_constraints(tag, 3)
    assert v.match and v.marker == "none-needed"
    assert len(v.derived_locus) == len(v.stated_locus)


def test_representative_counts():
    assert list_representatives("A2", 3).counts() == (5, 0)
    assert [t for t, _, _ in list_representatives("A2", 3).representatives] == \
        [f"A2{v}" for v in A2_VARIANTS]
    assert list_representatives("A1u0", 3).counts() == (10, 1)
    assert list_representatives("D1", 3).counts() == (6, 1)
    for g in CASE_GROUPS:
        p = 2 if g == "A3" else 3
        assert list_representatives(g, p).counts() == expected_counts(g, p, "case")


def test_a1u_family_count_differs_between_sources():
    assert expected_counts("A1u", 3, "summary") != expected_counts("A1u", 3, "case")


def test_inadmissible_requests():
    with pytest.raises(Inadmissible):
        build_family("A3", 3)
    with pytest.raises(Inadmissible):
        build_family("A1b", 3, u=0)
    with pytest.raises(Inadmissible):
        build_family("A1a", 3, {"zz": 1})
    with pytest.raises(Inadmissible):
        build_family("A1a", 3, {"e1": 2})


def test_b3_identities_parametric_and_at_points():
    for vals in (None, {"e": 1, "m": 1, "t": 1}, {"e": 0, "m": 0, "t": 0}):
        rows = b3_identity_suite(vals)
        assert len(rows) == 10
        assert all(r["holds"] and r.get("nestedHolds", True) for r in rows)


def test_manifest_lists_every_family():
    m = manifest()
    assert {r["family"] for r in m} == set(FAMILIES)
    for r in m:
        assert r["primes"] and r["anchor"]


def test_stated_primitive_dimensions():
    assert primitive_dim("A2c") == 2 and primitive_dim("B3") == 0


@pytest.mark.parametrize("tag", ["A3b", "A3c", "A3e"])
def test_some_a3_points_collapse(tag):
    # these named A3 points are not confluent; completion shows the quotient
    # is far smaller than p^3
    H = build_family(tag, 2)
    assert not is_confluent(H.rs)
    assert len(enumerate_basis(complete(H.rs))) < 8


@pytest.mark.parametrize("tag", ["A3a", "A3d"])
def test_other_a3_points_have_dimension_eight(tag):
    H = build_family(tag, 2)
    assert is_confluent(H.rs) and len(enumerate_basis(H.rs)) == 8
