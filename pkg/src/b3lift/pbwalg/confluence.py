"""Overlap ambiguities of a straightening system.

Each ambiguity is a word that two rules can rewrite; both one-step results
are normalized and compared.  An empty report means every ambiguity
resolves, so sorted monomials form a basis (diamond lemma).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..datum import GENERATOR_NAME
from .relations import PBW_ORDER
from .rewrite import AlgElement, RewriteSystem


@dataclass(frozen=True)
class Overlap:
    name: str
    difference: AlgElement

    def __str__(self) -> str:
        return f"{self.name}: {self.difference}"


def _gname(i: int) -> str:
    return GENERATOR_NAME[PBW_ORDER[i]]


def rule_rhs(rs: RewriteSystem, b: int, a: int) -> AlgElement:
    """Right side of y_b y_a (b after a), normalized."""
    c0, tails = rs.rules[(b, a)]
    out = rs.word([PBW_ORDER[a], PBW_ORDER[b]], c0)
    for word, coeff in tails:
        out = out + rs.word([PBW_ORDER[i] for i in word], coeff)
    return out


def power_rhs(rs: RewriteSystem, x: int) -> AlgElement:
    terms: dict = {}
    base = (0,) * 9
    for g, mu, c in rs.power_tails[x]:
        k = (base, g, mu)
        terms[k] = terms[k] + c if k in terms else c
    return rs.element({k: v for k, v in terms.items() if v})


def _gen_power(rs: RewriteSystem, x: int, n: int) -> AlgElement:
    """y_x^n kept as a product (n < N so no power rule fires)."""
    out = rs.one()
    for _ in range(n):
        out = out * rs.gen(PBW_ORDER[x])
    return out


def check_local_confluence(rs: RewriteSystem, groups: bool = True) -> list:
    """List of unresolved overlaps (empty when the system is confluent)."""
    report = []
    gen = lambda i: rs.gen(PBW_ORDER[i])

    def record(name, lhs, rhs):
        diff = lhs - rhs
        if diff:
            report.append(Overlap(name, diff))

    # y_z y_y y_x with z after y after x
    for z in range(9):
        for y in range(z):
            for x in range(y):
                record(
                    f"{_gname(z)}*{_gname(y)}*{_gname(x)}",
                    rule_rhs(rs, z, y) * gen(x),
                    gen(z) * rule_rhs(rs, y, x),
                )

    N = rs.N
    for x in sorted(rs.truncated):
        u = power_rhs(rs, x)
        for b in range(9):
            if b > x:
                # y_b y_x^N
                record(
                    f"{_gname(b)}*{_gname(x)}^{N}",
                    rule_rhs(rs, b, x) * _gen_power(rs, x, N - 1),
                    gen(b) * u,
                )
            elif b < x:
                # y_x^N y_b
                record(
                    f"{_gname(x)}^{N}*{_gname(b)}",
                    u * gen(b),
                    _gen_power(rs, x, N - 1) * rule_rhs(rs, x, b),
                )
        for k in range(1, N):
            record(
                f"{_gname(x)}^{N + k}",
                u * _gen_power(rs, x, k),
                _gen_power(rs, x, k) * u,
            )

    if groups:
        zeta = rs.field.zeta
        for g in rs.G.generators():
            gel = rs.group(g)
            for b in range(9):
                for a in range(b):
                    ex = rs.chi_exp(_unit(b), g) + rs.chi_exp(_unit(a), g)
                    record(
                        f"g{list(g)}*{_gname(b)}*{_gname(a)}",
                        gel * rule_rhs(rs, b, a),
                        (rule_rhs(rs, b, a) * gel).scale(zeta(ex)),
                    )
            for x in sorted(rs.truncated):
                ex = rs.chi_exp(_unit(x), g) * N
                record(
                    f"g{list(g)}*{_gname(x)}^{N}",
                    gel * power_rhs(rs, x),
                    (power_rhs(rs, x) * gel).scale(zeta(ex)),
                )
    return report


def _unit(i: int) -> tuple:
    e = [0] * 9
    e[i] = 1
    return tuple(e)
