from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from b3lift.datum import ROOTS, DatumError, canonical_datum, datum_from_json
from b3lift.liftings import (
    big_g,
    braided_commutator,
    build_lifting,
    counit_of_terms,
    expand_recursion_check,
    mu_from_values,
    root_vector_by_commutators,
    u_alpha,
    u_alpha_terms,
)
from b3lift.pbwalg import build_rewrite_system
from b3lift.pbwalg.confluence import check_local_confluence


def subgroup_of_powers(d):
    """All products of g_i^N, enumerated by closure."""
    G = d.group
    gens = [G.power(g, d.N) for g in d.g]
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def test_simple_root_power_is_one_deformation(d3, serre3):
    mu = {"a1": Fraction(2)}
    u = u_alpha("a1", mu, d3, serre3)
    g = big_g(d3, "a1")
    assert u == (serre3.group(g) - serre3.one()).scale(d3.field(2))


def test_u_a21_has_correction_from_a1(d3):
    mu = {"a1": 1, "a2": 1, "a21": 0}
    terms = u_alpha_terms("a21", mu, d3)
    groups = {g for g, _ in terms}
    assert groups == {big_g(d3, "a1"), d3.group.identity}
    x2 = (1 - d3.q33() ** -2) ** 3
    assert terms[(big_g(d3, "a1"), (0,) * 9)] == -x2
    assert counit_of_terms(terms) == {}


@pytest.mark.parametrize("N", [3, 5, 7])
def test_closed_forms_match_recursion(N):
    assert expand_recursion_check(canonical_datum(N)) == []


@pytest.mark.parametrize("root", ROOTS)
def test_u_is_in_augmentation_ideal_of_power_subgroup(d3, root):
    terms = u_alpha_terms(root, "symbolic", d3)
    assert counit_of_terms(terms) == {}
    sub = subgroup_of_powers(d3)
    assert {g for g, _ in terms} <= sub


@pytest.mark.parametrize("root", ROOTS)
def test_zero_parameters_give_zero(d3, root):
    assert not u_alpha_terms(root, "zero", d3)


@given(st.dictionaries(st.sampled_from(ROOTS), st.integers(-2, 2), max_size=4))
def test_numeric_counit_vanishes(vals):
    d = canonical_datum(5)
    for r in ROOTS:
        assert counit_of_terms(u_alpha_terms(r, vals, d)) == {}


def test_commutator_examples(serre3, d3):
    y = serre3.gen
    assert braided_commutator(y("a2"), y("a1")) == y("a21")
    assert braided_commutator(y("a32"), y("a1")) == y("a31")
    assert braided_commutator(y("a3"), y("a3")) == (y("a3") * y("a3")).scale(1 - d3.q33())


@pytest.mark.parametrize("root", ROOTS)
def test_root_vectors_rebuild_from_simple_generators(serre3, root):
    assert root_vector_by_commutators(serre3, root) == serre3.gen(root)


def test_zero_lifting_is_the_nichols_algebra(d3):
    lift = build_lifting(d3, "zero")
    nich = build_rewrite_system(d3, "nichols")
    for r in ROOTS:
        assert not lift.gen(r) ** 3
        assert not nich.gen(r) ** 3
    w = ["a1", "a2", "a3", "a3", "a2", "a1", "a2"]
    assert str(lift.word(w)) == str(nich.word(w))


def test_all_ones_lifting_is_confluent_at_seven(d7):
    rs = build_lifting(d7, {r: 1 for r in ROOTS})
    assert check_local_confluence(rs) == []


def test_symbolic_lifting_is_confluent(lift3):
    assert check_local_confluence(lift3) == []


def test_partial_system_leaves_one_power_free(d3):
    rs = build_lifting(d3, "symbolic", untruncated=("a21",))
    assert rs.mode == "partial"
    y = rs.gen("a21") ** 3
    assert y.terms and all(k[0] != (0,) * 9 for k in y.terms)


def _masked_datum():
    doc = canonical_datum(3).to_json()
    doc["invariant_factors"] = [3, 3, 3]
    doc["chi"] = [[c // 3 for c in x] for x in doc["chi"]]
    doc.pop("mu", None)
    return datum_from_json(doc)


def test_masked_roots_reject_parameters():
    d = _masked_datum()
    mask = d.mu_mask()
    assert not any(mask.values())
    with pytest.raises(DatumError):
        mu_from_values(d, {"a1": 1})
    assert not mu_from_values(d, {"a1": 1}, strict=False)["a1"]
    assert all(not u_alpha_terms(r, "symbolic", d) for r in ROOTS)
