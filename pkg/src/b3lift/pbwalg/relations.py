"""Commutation table between the nine root vectors of type B3.

Each entry ``(a, b) -> tail`` reads ``[y_a, y_b]_c = tail`` with ``y_a``
left of ``y_b`` in the PBW factor order.  Pairs absent from the table
q-commute (``[y_a, y_b]_c = 0``).  Coefficients are symbolic factor lists
evaluated against a datum by :func:`coefficient`, so a transcription error
shows up as a confluence failure instead of silently wrong arithmetic.

Factor vocabulary:
  ("q", r, s)   bicharacter q(deg r, deg s) = chi_s(g_r); r, s root names
  ("q33", k)    q33 ** k
  ("xi", i)     1 - q33 ** -i
  int           rational constant (signs included)
"""

from __future__ import annotations

from ..cyclo import CycScalar, xi
from ..datum import ROOT_DEGREE, ROOTS, Datum

# Left-to-right factor order of the PBW basis.
PBW_ORDER = ("a3", "at32", "a32", "a2", "at21", "at31", "a31", "a21", "a1")
PBW_POS = {r: i for i, r in enumerate(PBW_ORDER)}

# root-vector definitions: y_r = [y_left, y_right]_c
ROOT_VECTOR_DEF = {
    "a21": ("a2", "a1"),
    "a32": ("a3", "a2"),
    "a31": ("a3", "a21"),
    "at32": ("a3", "a32"),
    "at31": ("a3", "a31"),
    "at21": ("a2", "at31"),
}

DEFINITIONAL = {pair: [((1,), (r,))] for r, pair in ROOT_VECTOR_DEF.items()}

# The nine nontrivial relations beyond the definitions.
TABLE_RELATIONS = {
    ("a32", "a1"): [((1,), ("a31",))],
    ("at32", "a2"): [((("q", "a32", "a2"), ("xi", 1)), ("a32", "a32"))],
    ("at32", "a1"): [((1,), ("at31",))],
    ("a32", "a21"): [((("q", "a32", "a2"), ("xi", 2)), ("a2", "a31"))],
    ("a32", "a31"): [
        ((("q", "a32", "a2"), ("xi", 2)), ("a2", "at31")),
        ((-1, ("q", "a32", "a2")), ("at21",)),
    ],
    ("at31", "a21"): [((("q", "a31", "a21"), ("xi", 1)), ("a31", "a31"))],
    ("at21", "a1"): [
        ((("q", "a2", "at21"), ("xi", 2)), ("at31", "a21")),
        ((-1, ("q", "a31", "a1"), ("q", "a2", "a32"), ("xi", 1)), ("a31", "a31")),
    ],
    ("at32", "a31"): [((("q", "at32", "a32"), ("xi", 2)), ("a32", "at31"))],
    ("at32", "a21"): [
        ((("q", "a32", "a2"), ("xi", 2)), ("a32", "a31")),
        ((-1, ("q", "at32", "a2"), ("q33", 1), ("xi", 1), ("xi", 2)), ("a2", "at31")),
        ((("q", "at32", "a2"), ("q33", 1)), ("at21",)),
    ],
}


def commutation_table() -> dict:
    """Full table: definitions plus the nine nontrivial relations."""
    table = dict(DEFINITIONAL)
    table.update(TABLE_RELATIONS)
    return table


def coefficient(factors, d: Datum) -> CycScalar:
    F = d.field
    out = F.one
    q33 = d.q33()
    for f in factors:
        if isinstance(f, int):
            out = out * f
        elif f[0] == "q":
            out = out * d.bichar(ROOT_DEGREE[f[1]], ROOT_DEGREE[f[2]])
        elif f[0] == "q33":
            out = out * q33 ** f[1]
        elif f[0] == "xi":
            out = out * xi(f[1], q33)
        else:
            raise ValueError(f"unknown coefficient factor {f!r}")
    return out


def ordered_pairs():
    """All 36 pairs (a, b) with y_a left of y_b in the factor order."""
    for i, a in enumerate(PBW_ORDER):
        for b in PBW_ORDER[i + 1:]:
            yield a, b


assert sorted(PBW_ORDER) == sorted(ROOTS)
