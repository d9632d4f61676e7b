import cmath
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from b3lift.cyclo import (
    CycField,
    MuScalar,
    ScalarDivisionError,
    beta_scalars,
    format_cyc,
    q_binomial,
    q_binomial_poly,
    q_factorial,
    q_multinomial,
    q_number,
    xi,
)


def as_complex(s):
    z = cmath.exp(2j * cmath.pi / s.field.M)
    return sum(complex(Fraction(int(c.numerator), int(c.denominator))) * z ** k for k, c in s.c.items())


def sympy_reduce(coeffs, M):
    x = sympy.symbols("x")
    p = sympy.Poly(sum(c * x ** k for k, c in enumerate(coeffs)), x)
    r = p.rem(sympy.Poly(sympy.cyclotomic_poly(M, x), x))
    return {k: v for (k,), v in r.terms() if v}


scalars = st.builds(
    lambda M, cs: CycField(M).from_coeffs(cs),
    st.just(9),
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=1, max_size=9),
)


def test_root_of_unity_product():
    F = CycField(3)
    assert F.zeta(1) * F.zeta(2) == F.one


def test_inverse_of_one_plus_zeta7():
    F = CycField(7)
    a = 1 + F.zeta(1)
    assert a.inv() * a == F.one


def test_power_matches_polynomial_remainder():
    F = CycField(5)
    val = (1 + F.zeta(1)) ** 5
    want = sympy_reduce([sympy.binomial(5, k) for k in range(6)], 5)
    assert {k: int(v) for k, v in val.c.items()} == {k: int(v) for k, v in want.items()}


def test_division_by_zero_is_distinct():
    with pytest.raises(ScalarDivisionError):
        CycField(7).zero.inv()


@given(scalars, scalars)
def test_multiplication_agrees_with_complex_embedding(a, b):
    assert abs(as_complex(a * b) - as_complex(a) * as_complex(b)) < 1e-9


@given(scalars, scalars)
def test_canonical_after_add_sub(a, b):
    c = a + b - b
    assert c == a and c.c == a.c


@given(scalars)
def test_inverse(a):
    if a:
        assert a * a.inv() == a.field.one


@given(scalars, scalars, scalars)
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


def test_q_numbers():
    F = CycField(3)
    z = F.zeta(1)
    assert q_number(0, z) == F.one
    assert q_number(2, z) == 1 + z
    for N in (3, 5, 7):
        assert not q_number(N, CycField(N).zeta(1))


@pytest.mark.parametrize("N", [3, 5, 7])
def test_binomials_vanish_at_roots_of_unity(N):
    z = CycField(N).zeta(1)
    assert q_binomial(N, 0, z) == q_binomial(N, N, z) == z ** 0
    assert all(not q_binomial(N, j, z) for j in range(1, N))


def test_binom_7_3_against_polynomial():
    z = CycField(7).zeta(1)
    poly = q_binomial_poly(7, 3)
    assert not CycField(7).from_coeffs(poly)
    assert not q_binomial(7, 3, z)


def test_binom_4_2_polynomial():
    q = sympy.symbols("q")
    want = sympy.Poly(sympy.expand((1 + q ** 2) * (1 + q + q ** 2)), q).all_coeffs()[::-1]
    assert list(q_binomial_poly(4, 2)) == want


@pytest.mark.parametrize("n", range(0, 13))
def test_binomial_poly_times_factorials(n):
    q = sympy.symbols("q")
    fact = lambda m: sympy.prod([sum(q ** s for s in range(j)) for j in range(1, m + 1)])
    for k in range(n + 1):
        b = sum(c * q ** i for i, c in enumerate(q_binomial_poly(n, k)))
        assert sympy.expand(b * fact(k) * fact(n - k) - fact(n)) == 0


def test_multinomial_is_product_of_binomials():
    z = CycField(11).zeta(1)
    assert q_multinomial(6, (1, 2, 3), z) == q_binomial(6, 1, z) * q_binomial(5, 2, z)
    with pytest.raises(ValueError):
        q_multinomial(5, (1, 1), z)


def test_factorial_vanishes_past_order():
    z = CycField(5).zeta(1)
    assert q_factorial(4, z)
    assert not q_factorial(5, z)


def test_xi():
    F = CycField(7)
    z = F.zeta(1)
    assert xi(1, z) == 1 - z.inv()
    assert not xi(7, z)
    z3 = CycField(3).zeta(1)
    assert xi(2, z3) == 1 - z3


@pytest.mark.parametrize("N", [3, 5, 7])
def test_beta_scalars(N):
    q = CycField(N).zeta(1)
    b1, b2, beta = beta_scalars(q)
    assert b1 + b2 == q ** 0
    assert b1 ** N + b2 ** N == (1 + q).inv() ** N * 2
    assert beta == b1 * b2 * xi(2, q)
    if N == 3:
        assert beta == q * (1 + q).inv() ** 2 * (1 - q ** -2)


def test_mu_scalar_specialize():
    F = CycField(3)
    m = MuScalar.var(F, 0) * MuScalar.var(F, 1) + MuScalar.const(F(2))
    vals = [F(3), F(Fraction(1, 2))] + [F.zero] * 7
    assert m.specialize(vals) == F(Fraction(7, 2))


def test_format_uses_q_powers():
    F = CycField(9)
    assert format_cyc(F.zeta(2) * 3 - 1) == "-1 + 3*q^2"
