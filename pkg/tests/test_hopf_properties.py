"""Hopf axioms on random elements of the symbolic lifting at N = 3."""

from hypothesis import given
from hypothesis import strategies as st

from b3lift.datum import ROOTS, canonical_datum
from b3lift.hopfverify.checks import antipode_defect
from b3lift.hopfverify.tensor import (
    antipode,
    coassociator,
    coproduct,
    counit_left,
    counit_right,
)
from b3lift.liftings import build_lifting
from b3lift.pbwalg import PBW_ORDER

D3 = canonical_datum(3)
LIFT = build_lifting(D3, "symbolic")


def _exps(roots):
    e = [0] * 9
    for r in roots:
        e[PBW_ORDER.index(r)] += 1
    return tuple(e)


def monomials(max_factors=3):
    return st.builds(
        lambda rs, g: LIFT.monomial(_exps(rs), tuple(g)),
        st.lists(st.sampled_from(ROOTS), max_size=max_factors),
        st.lists(st.integers(0, 8), min_size=3, max_size=3),
    )


elements = st.builds(
    lambda a, b, c: a + b.scale(D3.field(c)),
    monomials(2),
    monomials(2),
    st.integers(-2, 2),
)


@given(monomials())
def test_coassociativity(e):
    left, right = coassociator(e)
    assert left == right


@given(elements)
def test_counit_axioms(e):
    de = coproduct(e)
    assert counit_left(de) == e
    assert counit_right(de) == e


@given(monomials(2), monomials(2))
def test_coproduct_is_multiplicative(a, b):
    assert coproduct(a * b) == coproduct(a) * coproduct(b)


@given(monomials())
def test_antipode_axiom(e):
    left, right = antipode_defect(e)
    assert not left and not right


@given(monomials(2), monomials(1))
def test_antipode_reverses_products(a, b):
    assert antipode(a * b) == antipode(b) * antipode(a)
