import pytest
from hypothesis import given
from hypothesis import strategies as st

from b3lift.datum import ROOT_DEGREE, ROOTS, canonical_datum, twisted_datum
from b3lift.liftings import build_lifting
from b3lift.pbwalg import (
    PBW_ORDER,
    BudgetExceeded,
    RewriteSystem,
    build_rewrite_system,
    commutation_table,
    graded_dimension,
    multiply,
    normalize,
    power,
)
from b3lift.pbwalg.confluence import check_local_confluence
from b3lift.pbwalg.oracle import get_oracle, oracle_dimension, oracle_reduce, wlin, wmul

D5 = canonical_datum(5)
SERRE5 = build_rewrite_system(D5, "serre")
LIFT3 = build_lifting(canonical_datum(3), "symbolic")

letters = st.lists(st.sampled_from(["a1", "a2", "a3"]), min_size=0, max_size=4)
coeffs = st.integers(-3, 3)


def word_element(rs, terms):
    out = rs.zero()
    for c, w in terms:
        out = out + rs.word(w, c)
    return out


def raw_words(o, terms):
    out: dict = {}
    for c, w in terms:
        t = {(): o.F(c)}
        for r in w:
            t = wmul(t, o.letter(int(r[1]) - 1))
        out = wlin(out, t, o.F.one)
    return out


def test_in_order_word_is_fixed(serre3):
    y1, y2 = serre3.gen("a1"), serre3.gen("a2")
    assert (y2 * y1).terms == serre3.monomial({"a2": 1, "a1": 1}).terms


def test_out_of_order_pair(serre3, d3):
    y1, y2 = serre3.gen("a1"), serre3.gen("a2")
    qi = d3.q(2, 1).inv()
    want = serre3.monomial({"a2": 1, "a1": 1}).scale(qi) - serre3.gen("a21").scale(qi)
    assert y1 * y2 == want


def test_group_straightening(serre3, d3):
    g = (2, 5, 1)
    y3 = serre3.gen("a3")
    chi = d3.field.zeta(serre3.chi_exp((1, 0, 0, 0, 0, 0, 0, 0, 0), d3.group.element(g)))
    assert serre3.group(g) * y3 == (y3 * serre3.group(g)).scale(chi)
    assert y3 * serre3.group(g) == serre3.monomial({"a3": 1}, g)


def test_nichols_power_vanishes(d3):
    rs = build_rewrite_system(d3, "nichols")
    assert not rs.gen("a31") ** 3
    assert rs.gen("a31") ** 2


def test_lifting_power_rule(lift3, d3):
    g1N = d3.group.power(d3.g[0], 3)
    want = (lift3.group(g1N) - lift3.one()) * lift3.mu_var("a1")
    assert lift3.gen("a1") ** 3 == want


def test_unit_and_idempotence(lift3):
    a = lift3.word(["a1", "a3", "a2", "a2"]) + lift3.gen("at31")
    assert multiply(lift3.one(), a) == a
    assert normalize(normalize(a)) == normalize(a)


def test_normalize_reexpresses_in_another_system(d3, serre3):
    lift = build_lifting(d3, "zero")
    e = serre3.gen("a1") ** 3 + serre3.gen("a2")
    assert normalize(e, lift) == lift.gen("a2")


def test_step_budget_is_enforced(d3):
    rs = RewriteSystem(d3, "serre", step_budget=5)
    with pytest.raises(BudgetExceeded):
        rs.word(["a1", "a1", "a2", "a2", "a3", "a3", "a2", "a1"][::-1])


@given(st.lists(st.tuples(coeffs, letters), min_size=1, max_size=4))
def test_normal_form_matches_word_oracle(terms):
    o = get_oracle(D5)
    e = word_element(SERRE5, terms)
    residue = o.reduce(wlin(o.element_words(e), raw_words(o, terms), -D5.field.one))
    assert not residue
    assert (not e) == (not o.reduce(raw_words(o, terms)))


@given(letters, letters)
def test_product_matches_word_oracle(u, v):
    o = get_oracle(D5)
    a, b = SERRE5.word(u), SERRE5.word(v)
    prod = multiply(a, b)
    assert not o.reduce(wlin(o.element_words(prod), wmul(o.element_words(a), o.element_words(b)), -D5.field.one))


def _exps(roots):
    e = [0] * 9
    for r in roots:
        e[PBW_ORDER.index(r)] += 1
    return tuple(e)


monomials = st.tuples(
    st.lists(st.sampled_from(ROOTS), max_size=3).map(_exps),
    st.lists(st.integers(0, 8), min_size=3, max_size=3),
)


@given(monomials, monomials, monomials)
def test_associativity(a, b, c):
    x, y, z = (LIFT3.monomial(tuple(e), tuple(g)) for e, g in (a, b, c))
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


@given(letters, letters)
def test_serre_mode_preserves_degree(u, v):
    prod = SERRE5.word(u + v)
    if prod:
        want = tuple(sum(ROOT_DEGREE[r][i] for r in u + v) for i in range(3))
        assert prod.zdegrees() == {want}


def test_lifting_mode_drops_filtration(lift3):
    e = lift3.gen("a21") ** 3
    assert max(e.filtration_degrees()) < 6


def test_power_of_y21_against_oracle(serre3, d3):
    o = get_oracle(d3)
    y21 = serre3.gen("a21")
    lhs = o.element_words(power(y21, 3))
    rhs = wmul(wmul(o.root_words("a21"), o.root_words("a21")), o.root_words("a21"))
    assert not o.reduce(wlin(lhs, rhs, -d3.field.one))


@pytest.mark.parametrize("mode", ["serre", "nichols"])
@pytest.mark.parametrize("maker,N", [(canonical_datum, 3), (canonical_datum, 7), (twisted_datum, 5)])
def test_confluence(mode, maker, N):
    assert check_local_confluence(build_rewrite_system(maker(N), mode)) == []


def test_corrupted_tail_is_detected(d3):
    table = commutation_table()
    key = next(k for k, v in table.items() if v)
    factors, word = table[key][0]
    table[key] = [(tuple(factors) + (("xi", 1),), word)] + list(table[key][1:])
    rs = RewriteSystem(d3, "serre", table=table)
    bad = check_local_confluence(rs)
    assert bad
    assert all("*" in o.name for o in bad)


def test_graded_dimension_small_degrees(d3):
    assert graded_dimension(d3, 2) == [1, 3, 8]
    assert oracle_dimension(d3, 2) == 8


@pytest.mark.parametrize("k", range(0, 6))
def test_graded_dimension_equals_oracle(k):
    assert graded_dimension(D5, 5)[k] == oracle_dimension(D5, k)


def test_serre_relation_reduces_to_zero():
    o = get_oracle(D5)
    assert not oracle_reduce(D5, o.ad_power(2, 1, 3))
    assert oracle_reduce(D5, o.ad_power(2, 1, 2))


def test_truncated_dimension_counts(lift3):
    assert graded_dimension(lift3, 1) == [1, 3]
    # y3^3 etc. are no longer normal in degree 3
    assert graded_dimension(lift3, 3)[3] == graded_dimension(lift3.datum, 3)[3] - 3


def test_factor_order_and_heights():
    assert [r for r in PBW_ORDER] == ["a3", "at32", "a32", "a2", "at21", "at31", "a31", "a21", "a1"]
    assert sorted(ROOTS) == sorted(PBW_ORDER)


def test_serre_only_algebra_is_larger_at_three(d3):
    # one extra dimension in total degree 6 that the table relations remove
    assert graded_dimension(d3, 6)[6] == 126
    assert oracle_dimension(d3, 6) == 127
    assert graded_dimension(d3, 5) == [oracle_dimension(d3, k) for k in range(6)]
