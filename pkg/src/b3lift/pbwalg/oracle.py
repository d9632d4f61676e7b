"""Brute-force check of PBW normal forms by linear algebra on words.

Words in x1, x2, x3 are tuples of letter indices 0..2.  For each
Z^3-degree the span of {u r v : r a quantum Serre relation} is built
incrementally,

    I_D = sum_i (x_i I_{D-e_i} + I_{D-e_i} x_i) + R_D,

and kept in echelon form with the pivot at the lexicographically first
nonzero word.  A word combination reduces to its unique representative
supported on non-pivot words.
"""

from __future__ import annotations

import os
from itertools import permutations

from ..datum import ROOT_DEGREE, Datum
from .relations import PBW_ORDER, ROOT_VECTOR_DEF

DEFAULT_DEGREE_BUDGET = 8


class OracleBudgetExceeded(RuntimeError):
    pass


def default_degree_budget() -> int:
    env = os.environ.get("B3LIFT_ORACLE_DEGREE")
    return int(env) if env else DEFAULT_DEGREE_BUDGET


def _acc(out: dict, k, v) -> None:
    if k in out:
        s = out[k] + v
        if s:
            out[k] = s
        else:
            del out[k]
    elif v:
        out[k] = v


def word_degree(w) -> tuple:
    d = [0, 0, 0]
    for x in w:
        d[x] += 1
    return tuple(d)


def words_of_degree(D) -> list:
    """All words of Z^3-degree D, sorted lexicographically."""
    letters = [0] * D[0] + [1] * D[1] + [2] * D[2]
    return sorted(set(permutations(letters)))


def wmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            _acc(out, w1 + w2, c1 * c2)
    return out


def wlin(a: dict, b: dict, cb) -> dict:
    """a + cb * b."""
    out = dict(a)
    for w, c in b.items():
        _acc(out, w, c * cb)
    return out


class WordOracle:
    """Serre-ideal echelon data for one datum, filled lazily per degree."""

    def __init__(self, datum: Datum, degree_budget: int | None = None):
        self.datum = datum
        self.F = datum.field
        self.budget = degree_budget or default_degree_budget()
        self._pivots: dict = {}  # D -> {pivot word: row dict with leading 1}
        self._root_words: dict = {}
        self.relations = self._serre_relations()

    # -- words for generators and root vectors ------------------------------
    def letter(self, i: int) -> dict:
        return {(i,): self.F.one}

    def commutator(self, a: dict, b: dict) -> dict:
        """[a, b]_c for homogeneous word combinations."""
        if not a or not b:
            return {}
        da = word_degree(next(iter(a)))
        db = word_degree(next(iter(b)))
        return wlin(wmul(a, b), wmul(b, a), -self.datum.bichar(da, db))

    def root_words(self, root: str) -> dict:
        hit = self._root_words.get(root)
        if hit is None:
            if root in ROOT_VECTOR_DEF:
                left, right = ROOT_VECTOR_DEF[root]
                hit = self.commutator(self.root_words(left), self.root_words(right))
            else:
                hit = self.letter(int(root[1]) - 1)
            self._root_words[root] = hit
        return hit

    def ad_power(self, i: int, j: int, n: int) -> dict:
        out = self.letter(j)
        for _ in range(n):
            out = self.commutator(self.letter(i), out)
        return out

    def _serre_relations(self) -> dict:
        rels = [
            self.ad_power(0, 1, 2),
            self.ad_power(1, 0, 2),
            self.ad_power(1, 2, 2),
            self.ad_power(2, 1, 3),
            self.commutator(self.letter(0), self.letter(2)),
        ]
        by_deg: dict = {}
        for r in rels:
            by_deg.setdefault(word_degree(next(iter(r))), []).append(r)
        return by_deg

    # -- echelon ------------------------------------------------------------
    def _reduce(self, v: dict, piv: dict) -> dict:
        v = dict(v)
        while True:
            hit = None
            for w in sorted(v):
                if w in piv:
                    hit = w
                    break
            if hit is None:
                return v
            c = v[hit]
            for w, x in piv[hit].items():
                _acc(v, w, -c * x)

    def _insert(self, v: dict, piv: dict) -> None:
        v = self._reduce(v, piv)
        if not v:
            return
        lead = min(v)
        inv = v[lead].inv()
        piv[lead] = {w: c * inv for w, c in v.items()}

    def pivots(self, D) -> dict:
        D = tuple(D)
        hit = self._pivots.get(D)
        if hit is not None:
            return hit
        if sum(D) > self.budget:
            raise OracleBudgetExceeded(f"oracle degree {sum(D)} exceeds budget {self.budget}")
        piv: dict = {}
        for i in range(3):
            if D[i] == 0:
                continue
            lower = list(D)
            lower[i] -= 1
            for row in list(self.pivots(tuple(lower)).values()):
                self._insert({(i,) + w: c for w, c in row.items()}, piv)
                self._insert({w + (i,): c for w, c in row.items()}, piv)
        for r in self.relations.get(D, []):
            self._insert(r, piv)
        self._pivots[D] = piv
        return piv

    def rank(self, D) -> int:
        return len(self.pivots(D))

    def dimension(self, D) -> int:
        return len(words_of_degree(D)) - self.rank(D)

    def reduce(self, comb: dict) -> dict:
        """Coordinates of comb modulo the ideal on the complement of pivot words."""
        by_deg: dict = {}
        for w, c in comb.items():
            if c:
                by_deg.setdefault(word_degree(w), {})[w] = c
        out: dict = {}
        for D in sorted(by_deg):
            out.update(self._reduce(by_deg[D], self.pivots(D)))
        return out

    # -- PBW elements as words ----------------------------------------------
    def monomial_words(self, exps, cache: dict | None = None) -> dict:
        """Word expansion of the sorted root-vector monomial ``exps`` (factor order)."""
        out = {(): self.F.one}
        for i, n in enumerate(exps):
            for _ in range(n):
                out = wmul(out, self.root_words(PBW_ORDER[i]))
        return out

    def element_words(self, e) -> dict:
        """Word expansion of a group-free, parameter-free AlgElement."""
        out: dict = {}
        for (exps, g, mu), c in e.terms.items():
            if any(g) or any(mu):
                raise ValueError("only elements of the Nichols part expand to words")
            for w, x in self.monomial_words(exps).items():
                _acc(out, w, x * c)
        return out


def compositions3(total: int):
    for a in range(total + 1):
        for b in range(total - a + 1):
            yield (a, b, total - a - b)


_ORACLES: dict = {}


def get_oracle(d: Datum) -> WordOracle:
    key = (d.N, d.group.invariant_factors, d.g, d.chi)
    o = _ORACLES.get(key)
    if o is None:
        o = _ORACLES[key] = WordOracle(d)
    return o


def oracle_dimension(d: Datum, total: int) -> int:
    o = get_oracle(d)
    return sum(o.dimension(D) for D in compositions3(total))


def oracle_reduce(d: Datum, comb: dict) -> dict:
    return get_oracle(d).reduce(comb)


def table_identity_residues(d: Datum, table: dict | None = None) -> dict:
    """For every table entry, the oracle reduction of [y_a, y_b]_c - tail (words)."""
    from .relations import coefficient, commutation_table

    o = get_oracle(d)
    table = commutation_table() if table is None else table
    out = {}
    for (a, b), tail in table.items():
        lhs = o.commutator(o.root_words(a), o.root_words(b))
        for factors, word in tail:
            t = {(): d.field.one}
            for r in word:
                t = wmul(t, o.root_words(r))
            lhs = wlin(lhs, t, -coefficient(factors, d))
        out[(a, b)] = o.reduce(lhs)
    return out


__all__ = [
    "WordOracle",
    "OracleBudgetExceeded",
    "oracle_dimension",
    "oracle_reduce",
    "table_identity_residues",
    "get_oracle",
    "words_of_degree",
    "ROOT_DEGREE",
]
