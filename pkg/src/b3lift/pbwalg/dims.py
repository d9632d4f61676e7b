"""Counting normal monomials."""

from __future__ import annotations

from ..datum import Datum
from .relations import PBW_ORDER
from .rewrite import RewriteSystem, enumerate_box


def graded_dimension(system, upto: int) -> list:
    """Number of normal root-vector monomials in each total degree 0..upto.

    ``system`` is a RewriteSystem or a Datum (read as the untruncated
    system).  Truncated roots contribute exponents below N only; the group
    part is left out, so these are the dimensions of the positive part.
    """
    if isinstance(system, Datum):
        N, truncated, heights = system.N, frozenset(), None
    else:
        N, truncated, heights = system.N, system.truncated, system.height
    if heights is None:
        from ..datum import ROOT_DEGREE

        heights = [sum(ROOT_DEGREE[r]) for r in PBW_ORDER]
    series = [1] + [0] * upto
    for i, h in enumerate(heights):
        cap = N - 1 if i in truncated else upto // h
        new = [0] * (upto + 1)
        for deg, c in enumerate(series):
            if c:
                for k in range(cap + 1):
                    t = deg + k * h
                    if t > upto:
                        break
                    new[t] += c
        series = new
    return series


def dimension_formula(d: Datum) -> int:
    """N^9 |Gamma|."""
    return d.N ** 9 * d.group.order


def box_count(rs: RewriteSystem) -> int:
    """Exponent tuples below N that are already normal (group part factored out)."""
    one = rs.G.identity
    mu = rs.one_key[2]
    return sum(1 for e in enumerate_box(rs.N) if rs.is_normal_key((e, one, mu)))
