"""Closed formulas for powers in the untruncated algebra.

Each builder returns ``(lhs, rhs)``, both computed in the same rewrite
system; lhs is always obtained by direct multiplication.
"""

from __future__ import annotations

from math import comb

from ..cyclo import q_binomial, q_multinomial, q_number, xi
from ..datum import ROOT_DEGREE
from .claims import b_elements, yt21_elements
from .tensor import TensorElement


def _scal(rs):
    d = rs.datum
    q = d.q33()
    return q, q.inv(), d.bichar(ROOT_DEGREE["a3"], ROOT_DEGREE["a2"]), xi(1, q), xi(2, q)


def _m(rs, i=0, j=0, k=0, l=0):
    """y3^i yt32^j y32^k y2^l."""
    return rs.monomial({"a3": i, "at32": j, "a32": k, "a2": l})


def exchange_identities(rs, n: int) -> dict:
    """The six exchange identities with exponent n."""
    q, qi, q32, xi1, _ = _scal(rs)
    q32i = q32.inv()
    y2, y32, yt32, y3 = rs.gen("a2"), rs.gen("a32"), rs.gen("at32"), rs.gen("a3")
    out = {}
    i = n
    rhs = _m(rs, i=i, l=1) - _m(rs, i=i - 1, k=1).scale(q_number(i, qi))
    if i >= 2:
        rhs = rhs + _m(rs, i=i - 2, j=1).scale(qi * q_binomial(i, 2, qi))
    out["y2*y3^n"] = (y2 * y3 ** i, rhs.scale(q32i ** i))
    out["y32*y3^n"] = (
        y32 * y3 ** i,
        (_m(rs, i=i, k=1) - _m(rs, i=i - 1, j=1).scale(q_number(i, qi))).scale(qi ** i * q32i ** i),
    )
    out["yt32*y3^n"] = (yt32 * y3 ** i, _m(rs, i=i, j=1).scale(qi ** (2 * i) * q32i ** i))
    j = n
    out["y2*yt32^n"] = (
        y2 * yt32 ** j,
        (_m(rs, j=j, l=1) - _m(rs, j=j - 1, k=2).scale(q * q * q32 * xi1 * q_number(j, qi * qi))).scale(
            qi ** (2 * j) * q32i ** (2 * j)
        ),
    )
    out["y32*yt32^n"] = (y32 * yt32 ** j, _m(rs, j=j, k=1).scale(qi ** (2 * j) * q32i ** j))
    out["y2*y32^n"] = (y2 * y32 ** n, _m(rs, k=n, l=1).scale(qi ** (2 * n) * q32i ** n))
    return out


def _zeta(qi, r, s, t):
    return qi ** r * (1 - qi) ** s * (1 + qi) ** t


def _c2(r: int) -> int:
    """binom(r, 2), zero when r < 2."""
    return comb(r, 2) if r >= 2 else 0


def _square_factorial_ratio(k: int, q):
    """(k)_{q^2}! / (k)_q! as the product of (1 + q^s) / (1 + q), s = 1..k.

    Written this way it stays defined when (k)_q! vanishes at a root of unity.
    """
    out = q ** 0
    for s in range(1, k + 1):
        out = out * (1 + q ** s) / (1 + q)
    return out


def _factorial_quotient(top: int, bottom: int, q):
    """(top)_q! / (bottom)_q! for top >= bottom, as a plain product."""
    out = q ** 0
    for s in range(bottom + 1, top + 1):
        out = out * q_number(s, q)
    return out


def b2_power(rs, n: int):
    q, qi, q32, _, _ = _scal(rs)
    lhs = b_elements(rs)["b2"] ** n
    rhs = rs.zero()
    for jj in range(n + 1):
        k = n - jj
        c = (
            (-1) ** jj
            * q32 ** (-jj * (2 * n - jj))
            * q_multinomial(n, (jj, k), qi * qi)
            * qi ** (jj * (2 * n - jj + 1))
            * (1 + qi) ** jj
        )
        rhs = rhs + _m(rs, j=jj, k=2 * k, l=jj).scale(c)
    return lhs, rhs


def b3_power(rs, n: int):
    q, qi, q32, _, _ = _scal(rs)
    lhs = b_elements(rs)["b3"] ** n
    rhs = rs.zero()
    for jj in range(n + 1):
        for k in range(n - jj + 1):
            l = n - jj - k
            i = 2 * n - 2 * jj - k
            w = -2 * _c2(n) + _c2(jj) + _c2(n - l)
            c = (
                (-1) ** i
                * _zeta(qi, jj, i, k + l)
                * q32 ** w
                * q_multinomial(n, (jj, k, l), qi * qi)
                * _square_factorial_ratio(k, qi)
            )
            rhs = rhs + _m(rs, i=i, j=jj, k=k, l=l).scale(c)
    return lhs, rhs


def c4_power(rs, n: int):
    """(y32 - xi2 y3 y2)^n."""
    q, qi, q32, _, _ = _scal(rs)
    lhs = b_elements(rs)["c4"] ** n
    rhs = rs.zero()
    for jj in range(n + 1):
        for k in range(n - jj + 1):
            l = n - jj - k
            i = n - 2 * jj - k
            if i < 0:
                continue
            w = -_c2(n) + _c2(jj) + _c2(n - l)
            c = (
                (-1) ** i
                * q32 ** w
                / _square_factorial_ratio(jj, qi)
                * _factorial_quotient(l, i, qi)
                * q_multinomial(n, (jj, k, l), qi)
                * _zeta(qi, jj, i + jj, i)
            )
            rhs = rhs + _m(rs, i=i, j=jj, k=k, l=l).scale(c)
    return lhs, rhs


def special_forms(rs) -> dict:
    """The n = N specializations as printed."""
    N = rs.N
    q, qi, _, xi1, xi2 = _scal(rs)
    b = b_elements(rs)
    return {
        "b2^N": (b["b2"] ** N, _m(rs, k=2 * N) - _m(rs, j=N, l=N).scale((1 + qi) ** N)),
        "b3^N": (
            b["b3"] ** N,
            _m(rs, j=N) - _m(rs, i=N, k=N).scale((1 + qi) ** N * xi2 ** N * 2) + _m(rs, i=2 * N, l=N).scale(xi1 ** N * xi2 ** N),
        ),
        "(y32-xi2*y3*y2)^N": (b["c4"] ** N, _m(rs, k=N) - _m(rs, i=N, l=N).scale(xi2 ** N)),
    }


def b3_special_derived(rs):
    """b3^N with the middle coefficient read off the general-n sum at k = N."""
    N = rs.N
    _, qi, _, xi1, xi2 = _scal(rs)
    b = b_elements(rs)
    return b["b3"] ** N, _m(rs, j=N) - _m(rs, i=N, k=N).scale(xi1 ** N * 2) + _m(rs, i=2 * N, l=N).scale(xi1 ** N * xi2 ** N)


def summand_powers(rs) -> dict:
    """a2^N, a3^N, a4^N of the degree-5 split against their printed closed forms."""
    N = rs.N
    d = rs.datum
    _, qi, _, xi1, xi2 = _scal(rs)
    a = yt21_elements(rs)
    b = b_elements(rs)
    G = d.group

    def gN(root):
        return rs.group(G.power(d.root_group_data(root)[0], N))

    yN = lambda r: rs.gen(r) ** N
    return {
        "a2^N": (a["a2"] ** N, TensorElement.pure((b["b2"] ** N) * gN("a1"), yN("a1")).scale(-(xi1 ** N) * xi2 ** N)),
        "a3^N": (a["a3"] ** N, TensorElement.pure((b["b3"] ** N) * gN("a21"), yN("a21")).scale(xi2 ** N)),
        "a4^N": (a["a4"] ** N, TensorElement.pure((b["c4"] ** N) * gN("a31"), yN("a31")).scale(-(xi2 ** N))),
    }
