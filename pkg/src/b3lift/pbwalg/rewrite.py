"""PBW straightening engine.

Elements of U#kGamma (U the algebra presented by the commutation table,
optionally with N-th power relations) are sparse maps

    (exps, group, mu) -> CycScalar

where ``exps`` is the exponent 9-tuple in PBW factor order, ``group`` a group
element tuple and ``mu`` the exponent tuple of a monomial in the lifting
parameters.  Products are computed by memoized straightening of
"sorted monomial times one root vector".
"""

from __future__ import annotations

import os
import sys
from itertools import product as iproduct

from ..cyclo import NMU, CycScalar, MuScalar, format_cyc, format_mu_monomial
from ..datum import GENERATOR_NAME, ROOT_DEGREE, ROOT_INDEX, Datum, DatumError, require_valid
from .relations import PBW_ORDER, PBW_POS, coefficient, commutation_table, ordered_pairs

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

ZERO_MU = (0,) * NMU
DEFAULT_STEP_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """A normalization used more rule applications than its step budget."""


def default_step_budget() -> int:
    env = os.environ.get("B3LIFT_STEP_BUDGET")
    return int(env) if env else DEFAULT_STEP_BUDGET


def _mu_add(a, b):
    if a is ZERO_MU:
        return b
    if b is ZERO_MU:
        return a
    s = tuple(x + y for x, y in zip(a, b))
    return ZERO_MU if not any(s) else s


class RewriteSystem:
    """Straightening rules instantiated for one datum.

    ``power_tails`` maps a root name to the right side of ``y_root^N`` as a
    list of ``(group, mu, coeff)`` triples (an element of the group algebra
    with parameter-polynomial coefficients); an empty list means
    ``y_root^N = 0``.  Roots missing from ``power_tails`` are untruncated.
    """

    def __init__(self, datum: Datum, mode: str = "serre", power_tails: dict | None = None,
                 table: dict | None = None, step_budget: int | None = None, validate: bool = True):
        if validate:
            require_valid(datum)
        self.datum = datum
        self.mode = mode
        self.field = F = datum.field
        self.N = datum.N
        self.G = datum.group
        self.step_budget = step_budget or default_step_budget()
        self.steps = 0
        self.table = commutation_table() if table is None else table

        n = len(PBW_ORDER)
        self.deg = [ROOT_DEGREE[r] for r in PBW_ORDER]
        self.height = [sum(d) for d in self.deg]
        M = datum.M
        facs = self.G.invariant_factors
        # chi_letter(g) = zeta_M ^ (sum_k w[letter][k] * g[k])
        self.w = []
        for r in PBW_ORDER:
            _, chi = datum.root_group_data(r)
            self.w.append(tuple(c * (M // m) for c, m in zip(chi, facs)))
        self.g_letter = [datum.root_group_data(r)[0] for r in PBW_ORDER]
        self.M = M
        self.one_key = ((0,) * n, self.G.identity, ZERO_MU)

        # pair rules: y_b y_a -> c0 y_a y_b + sum coeff * word   (a left of b)
        self.rules: dict = {}
        for a, b in ordered_pairs():
            ia, ib = PBW_POS[a], PBW_POS[b]
            qab = datum.bichar(ROOT_DEGREE[a], ROOT_DEGREE[b])
            c0 = qab.inv()
            tails = []
            for factors, word in self.table.get((a, b), []):
                coeff = -(c0 * coefficient(factors, datum))
                if coeff:
                    tails.append((tuple(PBW_POS[x] for x in word), coeff))
            self.rules[(ib, ia)] = (c0, tails)

        self.power_tails: dict = {}
        for root, tail in (power_tails or {}).items():
            self.power_tails[PBW_POS[root]] = [(self.G.element(g), tuple(mu), F(c)) for g, mu, c in tail if c]
        self.truncated = frozenset(PBW_POS[r] for r in (power_tails or {}))

        self._ml: dict = {}
        self._mm: dict = {}
        self._zeta = [F.zeta(k) for k in range(M)]

    # -- bookkeeping ------------------------------------------------------
    def _step(self, k: int = 1) -> None:
        self.steps += k
        if self.steps > self.step_budget:
            raise BudgetExceeded(f"step budget {self.step_budget} exceeded")

    def reset_budget(self) -> None:
        self.steps = 0

    def clear_cache(self) -> None:
        self._ml.clear()
        self._mm.clear()

    def chi_exp(self, exps, g) -> int:
        """Exponent of chi_{deg exps}(g)."""
        tot = 0
        w = self.w
        for i, e in enumerate(exps):
            if e:
                wi = w[i]
                tot += e * sum(a * b for a, b in zip(wi, g))
        return tot % self.M

    def gmul(self, g, h):
        return tuple((a + b) % m for a, b, m in zip(g, h, self.G.invariant_factors))

    # -- core straightening -----------------------------------------------
    def mono_letter(self, exps: tuple, x: int) -> dict:
        """Normal form of (sorted monomial exps) * y_x as {(exps, g, mu): coeff}."""
        key = (exps, x)
        hit = self._ml.get(key)
        if hit is not None:
            return hit
        last = -1
        for i in range(8, -1, -1):
            if exps[i]:
                last = i
                break
        ident = self.G.identity
        if last <= x:
            new = list(exps)
            new[x] += 1
            if x in self.truncated and new[x] >= self.N:
                self._step()
                new[x] -= self.N
                base = tuple(new)
                out = {}
                for g, mu, c in self.power_tails[x]:
                    # tails are central: chi_letter(g^N) = 1
                    k = (base, g, mu)
                    out[k] = out[k] + c if k in out else c
                out = {k: v for k, v in out.items() if v}
            else:
                out = {(tuple(new), ident, ZERO_MU): self.field.one}
        else:
            self._step()
            c0, tails = self.rules[(last, x)]
            rest = list(exps)
            rest[last] -= 1
            rest = tuple(rest)
            out = {}
            part = self.mono_letter(rest, x)
            self._acc_times_letter(out, part, last, c0)
            for word, coeff in tails:
                cur = {(rest, ident, ZERO_MU): coeff}
                for letter in word:
                    nxt: dict = {}
                    self._acc_times_letter(nxt, cur, letter, None)
                    cur = nxt
                for k, v in cur.items():
                    if k in out:
                        s = out[k] + v
                        if s:
                            out[k] = s
                        else:
                            del out[k]
                    else:
                        out[k] = v
        self._ml[key] = out
        return out

    def _acc_times_letter(self, out: dict, elem: dict, x: int, scale) -> None:
        """out += scale * elem * y_x."""
        zeta = self._zeta
        wx = self.w[x]
        M = self.M
        gmul = self.gmul
        for (e, g, mu), c in elem.items():
            if scale is not None:
                c = c * scale
            if any(g):
                k = sum(a * b for a, b in zip(wx, g)) % M
                if k:
                    c = c * zeta[k]
            for (e2, g2, mu2), c2 in self.mono_letter(e, x).items():
                gg = gmul(g2, g) if any(g2) else g
                kk = (e2, gg, _mu_add(mu2, mu))
                v = c * c2
                if kk in out:
                    s = out[kk] + v
                    if s:
                        out[kk] = s
                    else:
                        del out[kk]
                else:
                    out[kk] = v

    def mono_mono(self, e1: tuple, e2: tuple) -> dict:
        """Normal form of (monomial e1) * (monomial e2), no group parts."""
        if not any(e2):
            return {(e1, self.G.identity, ZERO_MU): self.field.one}
        key = (e1, e2)
        hit = self._mm.get(key)
        if hit is not None:
            return hit
        # peel the last letter of e2
        last = max(i for i in range(9) if e2[i])
        head = list(e2)
        head[last] -= 1
        part = self.mono_mono(e1, tuple(head))
        out: dict = {}
        self._acc_times_letter(out, part, last, None)
        self._mm[key] = out
        return out

    def key_product(self, k1, k2) -> dict:
        """(m1 g1)(m2 g2) = chi_{m2}(g1) (m1 m2) g1 g2, as {(exps, g, mu): coeff}."""
        e1, g1, mu1 = k1
        e2, g2, mu2 = k2
        c = None
        if any(g1):
            ex = self.chi_exp(e2, g1)
            if ex:
                c = self._zeta[ex]
        g12 = self.gmul(g1, g2)
        mu12 = _mu_add(mu1, mu2)
        out = {}
        for (e, g, mu), v in self.mono_mono(e1, e2).items():
            kk = (e, self.gmul(g, g12), _mu_add(mu, mu12))
            out[kk] = v * c if c is not None else v
        return out

    # -- element constructors ---------------------------------------------
    def element(self, terms: dict | None = None) -> "AlgElement":
        return AlgElement(self, terms or {})

    def zero(self) -> "AlgElement":
        return AlgElement(self, {})

    def one(self) -> "AlgElement":
        return AlgElement(self, {self.one_key: self.field.one})

    def scalar(self, c) -> "AlgElement":
        c = self.field(c)
        return AlgElement(self, {self.one_key: c} if c else {})

    def mu_var(self, root: str) -> "AlgElement":
        mu = [0] * NMU
        mu[ROOT_INDEX[root]] = 1
        return AlgElement(self, {(self.one_key[0], self.G.identity, tuple(mu)): self.field.one})

    def muscalar(self, s: MuScalar) -> "AlgElement":
        return AlgElement(self, {(self.one_key[0], self.G.identity, m): c for m, c in s.terms.items()})

    def gen(self, root: str) -> "AlgElement":
        e = [0] * 9
        e[PBW_POS[root]] = 1
        return AlgElement(self, {(tuple(e), self.G.identity, ZERO_MU): self.field.one})

    def monomial(self, exps, g=None) -> "AlgElement":
        """Sorted PBW monomial; exps maps root names (or is a 9-tuple in factor order)."""
        if isinstance(exps, dict):
            t = [0] * 9
            for r, n in exps.items():
                t[PBW_POS[r]] = n
            exps = tuple(t)
        g = self.G.identity if g is None else self.G.element(g)
        key = (tuple(exps), g, ZERO_MU)
        if self.is_normal_key(key):
            return AlgElement(self, {key: self.field.one})
        # a power rule applies: straighten the product factor by factor
        out = self.one()
        for i, n in enumerate(exps):
            for _ in range(n):
                out = out * self.gen(PBW_ORDER[i])
        return out * self.group(g)

    def group(self, g) -> "AlgElement":
        return AlgElement(self, {(self.one_key[0], self.G.element(g), ZERO_MU): self.field.one})

    def word(self, letters, coeff=None) -> "AlgElement":
        """Normal form of a product of root vectors given by name (left to right)."""
        out = self.scalar(1 if coeff is None else coeff)
        for r in letters:
            out = out * self.gen(r)
        return out

    def is_normal_key(self, key) -> bool:
        e = key[0]
        return all(e[i] < self.N for i in self.truncated)


class AlgElement:
    """Sparse linear combination of normal-form keys in a :class:`RewriteSystem`."""

    __slots__ = ("rs", "terms")

    def __init__(self, rs: RewriteSystem, terms: dict):
        self.rs = rs
        self.terms = terms

    def _same(self, other) -> "AlgElement":
        if isinstance(other, AlgElement):
            if other.rs is not self.rs:
                raise ValueError("elements belong to different rewrite systems")
            return other
        if isinstance(other, MuScalar):
            return self.rs.muscalar(other)
        return self.rs.scalar(other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        try:
            other = self._same(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        other = self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                s = out[k] + v
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = v
        return AlgElement(self.rs, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgElement(self.rs, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def scale(self, c) -> "AlgElement":
        if isinstance(c, MuScalar):
            return self.rs.muscalar(c) * self
        c = self.rs.field(c)
        if not c:
            return self.rs.zero()
        return AlgElement(self.rs, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, CycScalar)) or hasattr(other, "denominator"):
            return self.scale(other)
        other = self._same(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, CycScalar)) or hasattr(other, "denominator"):
            return self.scale(other)
        return self._same(other) * self

    def __pow__(self, n: int):
        return power(self, n)

    # -- queries ----------------------------------------------------------
    def zdegrees(self) -> set:
        rs = self.rs
        out = set()
        for e, _, _ in self.terms:
            out.add(tuple(sum(e[i] * rs.deg[i][k] for i in range(9)) for k in range(3)))
        return out

    def zdegree(self):
        """The Z^3-degree if homogeneous, else ValueError."""
        ds = self.zdegrees()
        if len(ds) != 1:
            raise ValueError("element is not Z^3-homogeneous")
        return next(iter(ds))

    def group_parts(self) -> set:
        return {g for _, g, _ in self.terms}

    def filtration_degrees(self) -> set:
        h = self.rs.height
        return {sum(a * b for a, b in zip(e, h)) for e, _, _ in self.terms}

    def coefficient(self, exps, g=None) -> MuScalar:
        """Parameter-polynomial coefficient of the monomial ``exps * g``."""
        rs = self.rs
        if isinstance(exps, dict):
            t = [0] * 9
            for r, n in exps.items():
                t[PBW_POS[r]] = n
            exps = tuple(t)
        g = rs.G.identity if g is None else rs.G.element(g)
        return MuScalar(rs.field, {mu: c for (e, gg, mu), c in self.terms.items() if e == tuple(exps) and gg == g})

    def counit(self) -> MuScalar:
        """epsilon: y -> 0, g -> 1."""
        out: dict = {}
        for (e, g, mu), c in self.terms.items():
            if not any(e):
                out[mu] = out[mu] + c if mu in out else c
        return MuScalar(self.rs.field, out)

    def specialize(self, values) -> "AlgElement":
        """Substitute mu (a 9-sequence of scalars indexed like datum.ROOTS)."""
        rs = self.rs
        vals = [rs.field(v) for v in values]
        out: dict = {}
        for (e, g, mu), c in self.terms.items():
            for v, k in zip(vals, mu):
                if k:
                    c = c * v ** k
            if c:
                kk = (e, g, ZERO_MU)
                s = out[kk] + c if kk in out else c
                if s:
                    out[kk] = s
                else:
                    out.pop(kk, None)
        return AlgElement(rs, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2]))

    def __repr__(self) -> str:
        return f"AlgElement({format_element(self)})"

    def __str__(self) -> str:
        return format_element(self)


def multiply(a: AlgElement, b: AlgElement) -> AlgElement:
    rs = a.rs
    rs.steps = 0
    out: dict = {}
    for k1, c1 in a.terms.items():
        for k2, c2 in b.terms.items():
            c = c1 * c2
            for kk, v in rs.key_product(k1, k2).items():
                v = v * c
                if kk in out:
                    s = out[kk] + v
                    if s:
                        out[kk] = s
                    else:
                        del out[kk]
                else:
                    out[kk] = v
    return AlgElement(rs, out)


def power(a: AlgElement, n: int) -> AlgElement:
    if n < 0:
        raise ValueError("negative power of an algebra element")
    out = a.rs.one()
    for _ in range(n):
        out = multiply(out, a)
    return out


def normalize(e: AlgElement, rs: RewriteSystem | None = None) -> AlgElement:
    """Normal form of ``e`` (keys of another system are re-multiplied in ``rs``)."""
    if rs is None or rs is e.rs:
        # elements are kept in normal form; re-straighten keys defensively
        rs = e.rs
        if all(rs.is_normal_key(k) for k in e.terms):
            return AlgElement(rs, dict(e.terms))
    out = rs.zero()
    for (exps, g, mu), c in e.terms.items():
        t = rs.one()
        for i in range(9):
            for _ in range(exps[i]):
                t = t * rs.gen(PBW_ORDER[i])
        t = t * rs.group(g)
        if any(mu):
            t = AlgElement(rs, {(k[0], k[1], _mu_add(k[2], mu)): v for k, v in t.terms.items()})
        out = out + t.scale(c)
    return out


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------


def format_monomial(exps, g) -> str:
    parts = []
    for i, n in enumerate(exps):
        if n:
            name = GENERATOR_NAME[PBW_ORDER[i]]
            parts.append(name if n == 1 else f"{name}^{n}")
    if any(g):
        parts.append("g[" + ",".join(str(x) for x in g) + "]")
    return "*".join(parts)


def format_element(e: AlgElement) -> str:
    if not e.terms:
        return "0"
    chunks = []
    for (exps, g, mu), c in e.sorted_terms():
        mono = "*".join(p for p in (format_mu_monomial(mu), format_monomial(exps, g)) if p)
        cs = format_cyc(c)
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        elif cs == "-1":
            body = "-" + mono
        elif len(c.c) == 1:
            body = f"{cs}*{mono}"
        else:
            body = f"({cs})*{mono}"
        chunks.append(body)
    out = chunks[0]
    for ch in chunks[1:]:
        out += " - " + ch[1:] if ch.startswith("-") else " + " + ch
    return out


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def build_rewrite_system(d: Datum, powers="serre", mu=None, table=None, step_budget=None) -> RewriteSystem:
    """Straightening system for ``d``.

    powers: "serre" (no power rules), "nichols" (y_alpha^N -> 0) or
    "lifting" (y_alpha^N -> u_alpha(mu)); ``mu`` is forwarded to the lifting
    construction ("symbolic" by default).
    """
    if powers in (None, "none", "serre"):
        return RewriteSystem(d, "serre", None, table, step_budget)
    if powers == "nichols":
        return RewriteSystem(d, "nichols", {r: [] for r in PBW_ORDER}, table, step_budget)
    if powers == "lifting":
        from ..liftings import build_lifting

        return build_lifting(d, mu if mu is not None else "symbolic", table=table, step_budget=step_budget)
    raise DatumError(f"unknown power mode {powers!r}")


def enumerate_box(N: int):
    """All exponent tuples with entries < N (the truncated PBW box)."""
    return iproduct(range(N), repeat=9)
