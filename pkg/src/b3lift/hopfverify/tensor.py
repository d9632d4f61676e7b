"""Tensor square A (x) A and the Hopf structure maps.

A TensorElement maps (e1, g1, e2, g2, mu) -> coeff, meaning
coeff * mu * (e1 g1) (x) (e2 g2) with both legs in normal form.
"""

from __future__ import annotations

from ..cyclo import MuScalar
from ..datum import GENERATOR_NAME
from ..pbwalg.relations import PBW_ORDER, PBW_POS, ROOT_VECTOR_DEF
from ..pbwalg.rewrite import ZERO_MU, AlgElement, RewriteSystem, _mu_add, format_element


def _acc(out: dict, k, v) -> None:
    if k in out:
        s = out[k] + v
        if s:
            out[k] = s
        else:
            del out[k]
    elif v:
        out[k] = v


def _leg_product(rs: RewriteSystem, e1, g1, e2, g2) -> dict:
    cache = rs.__dict__.setdefault("_legcache", {})
    key = (e1, g1, e2, g2)
    hit = cache.get(key)
    if hit is None:
        hit = rs.key_product((e1, g1, ZERO_MU), (e2, g2, ZERO_MU))
        cache[key] = hit
    return hit


class TensorElement:
    __slots__ = ("rs", "terms")

    def __init__(self, rs: RewriteSystem, terms: dict):
        self.rs = rs
        self.terms = terms

    @classmethod
    def pure(cls, a: AlgElement, b: AlgElement) -> "TensorElement":
        """a (x) b."""
        out: dict = {}
        for (e1, g1, m1), c1 in a.terms.items():
            for (e2, g2, m2), c2 in b.terms.items():
                _acc(out, (e1, g1, e2, g2, _mu_add(m1, m2)), c1 * c2)
        return cls(a.rs, out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return TensorElement(self.rs, out)

    def __neg__(self):
        return TensorElement(self.rs, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        if isinstance(c, MuScalar):
            out: dict = {}
            for (e1, g1, e2, g2, m), v in self.terms.items():
                for m2, c2 in c.terms.items():
                    _acc(out, (e1, g1, e2, g2, _mu_add(m, m2)), v * c2)
            return TensorElement(self.rs, out)
        c = self.rs.field(c)
        if not c:
            return TensorElement(self.rs, {})
        return TensorElement(self.rs, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        rs = self.rs
        rs.steps = 0
        out: dict = {}
        for (a1, h1, a2, h2, m), c in self.terms.items():
            for (b1, k1, b2, k2, n), d in other.terms.items():
                cd = c * d
                mn = _mu_add(m, n)
                left = _leg_product(rs, a1, h1, b1, k1)
                right = _leg_product(rs, a2, h2, b2, k2)
                for (x1, y1, p1), v1 in left.items():
                    v1 = v1 * cd
                    mp = _mu_add(mn, p1)
                    for (x2, y2, p2), v2 in right.items():
                        _acc(out, (x1, y1, x2, y2, _mu_add(mp, p2)), v1 * v2)
        return TensorElement(rs, out)

    __rmul__ = scale

    def __pow__(self, n: int):
        out = tensor_one(self.rs)
        for _ in range(n):
            out = out * self
        return out

    def legs(self):
        """Iterate (AlgElement-style keys) as ((e1, g1), (e2, g2), mu, coeff)."""
        for (e1, g1, e2, g2, m), c in self.terms.items():
            yield (e1, g1), (e2, g2), m, c

    def __str__(self):
        return format_tensor(self)

    def __repr__(self):
        return f"TensorElement({format_tensor(self)})"


def tensor_one(rs: RewriteSystem) -> TensorElement:
    e, g, m = rs.one_key
    return TensorElement(rs, {(e, g, e, g, m): rs.field.one})


def format_tensor(t: TensorElement) -> str:
    if not t.terms:
        return "0"
    rs = t.rs
    chunks = []
    for (e1, g1, e2, g2, m), c in sorted(t.terms.items(), key=lambda kv: kv[0]):
        left = format_element(AlgElement(rs, {(e1, g1, m): c}))
        right = format_element(AlgElement(rs, {(e2, g2, ZERO_MU): rs.field.one}))
        chunks.append(f"({left}) (x) {right}")
    return " + ".join(chunks)


# ---------------------------------------------------------------------------
# coproduct
# ---------------------------------------------------------------------------


def _dcache(rs: RewriteSystem) -> dict:
    return rs.__dict__.setdefault("_coproduct_cache", {})


def coproduct_root(rs: RewriteSystem, root: str) -> TensorElement:
    """Delta(y_root): y_i (x) 1 + g_i (x) y_i on simple roots, commutators otherwise."""
    cache = _dcache(rs)
    hit = cache.get(root)
    if hit is not None:
        return hit
    if root in ROOT_VECTOR_DEF:
        a, b = ROOT_VECTOR_DEF[root]
        from ..datum import ROOT_DEGREE

        q = rs.datum.bichar(ROOT_DEGREE[a], ROOT_DEGREE[b])
        da, db = coproduct_root(rs, a), coproduct_root(rs, b)
        hit = da * db - (db * da).scale(q)
    else:
        g, _ = rs.datum.root_group_data(root)
        hit = TensorElement.pure(rs.gen(root), rs.one()) + TensorElement.pure(rs.group(g), rs.gen(root))
    cache[root] = hit
    return hit


def coproduct_group(rs: RewriteSystem, g) -> TensorElement:
    return TensorElement.pure(rs.group(g), rs.group(g))


def coproduct_key(rs: RewriteSystem, key) -> TensorElement:
    exps, g, mu = key
    cache = rs.__dict__.setdefault("_coproduct_key_cache", {})
    base = (exps, g)
    t = cache.get(base)
    if t is None:
        t = tensor_one(rs)
        for i, n in enumerate(exps):
            if n:
                dr = coproduct_root(rs, PBW_ORDER[i])
                for _ in range(n):
                    t = t * dr
        if any(g):
            t = t * coproduct_group(rs, g)
        cache[base] = t
    if any(mu):
        t = TensorElement(rs, {(a, b, c, d, _mu_add(m, mu)): v for (a, b, c, d, m), v in t.terms.items()})
    return t


def coproduct(e: AlgElement) -> TensorElement:
    rs = e.rs
    out = TensorElement(rs, {})
    for key, c in e.terms.items():
        out = out + coproduct_key(rs, key).scale(c)
    return out


def power_coproduct(rs: RewriteSystem, root: str, n: int) -> TensorElement:
    """Delta(y_root)^n by repeated multiplication."""
    d = coproduct_root(rs, root)
    out = d
    for _ in range(n - 1):
        out = out * d
    return out


# ---------------------------------------------------------------------------
# counit, multiplication, antipode
# ---------------------------------------------------------------------------


def counit(e: AlgElement) -> MuScalar:
    return e.counit()


def counit_left(t: TensorElement) -> AlgElement:
    """(eps (x) id) t."""
    out: dict = {}
    for (e1, g1, e2, g2, m), c in t.terms.items():
        if not any(e1):
            _acc(out, (e2, g2, m), c)
    return AlgElement(t.rs, out)


def counit_right(t: TensorElement) -> AlgElement:
    out: dict = {}
    for (e1, g1, e2, g2, m), c in t.terms.items():
        if not any(e2):
            _acc(out, (e1, g1, m), c)
    return AlgElement(t.rs, out)


def tensor_map(t: TensorElement, f_left, f_right) -> TensorElement:
    """(f_left (x) f_right) t for maps AlgElement -> AlgElement (None = identity)."""
    rs = t.rs
    out = TensorElement(rs, {})
    for (e1, g1, e2, g2, m), c in t.terms.items():
        a = AlgElement(rs, {(e1, g1, m): c})
        b = AlgElement(rs, {(e2, g2, ZERO_MU): rs.field.one})
        if f_left is not None:
            a = f_left(a)
        if f_right is not None:
            b = f_right(b)
        out = out + TensorElement.pure(a, b)
    return out


def multiply_legs(t: TensorElement) -> AlgElement:
    """m: a (x) b -> ab."""
    rs = t.rs
    out: dict = {}
    for (e1, g1, e2, g2, m), c in t.terms.items():
        for (e, g, p), v in rs.key_product((e1, g1, m), (e2, g2, ZERO_MU)).items():
            _acc(out, (e, g, p), v * c)
    return AlgElement(rs, out)


def antipode_root(rs: RewriteSystem, root: str) -> AlgElement:
    cache = rs.__dict__.setdefault("_antipode_cache", {})
    hit = cache.get(root)
    if hit is not None:
        return hit
    if root in ROOT_VECTOR_DEF:
        from ..datum import ROOT_DEGREE

        a, b = ROOT_VECTOR_DEF[root]
        q = rs.datum.bichar(ROOT_DEGREE[a], ROOT_DEGREE[b])
        sa, sb = antipode_root(rs, a), antipode_root(rs, b)
        hit = sb * sa - (sa * sb).scale(q)
    else:
        g, _ = rs.datum.root_group_data(root)
        hit = -(rs.group(rs.G.inv(g)) * rs.gen(root))
    cache[root] = hit
    return hit


def antipode(e: AlgElement) -> AlgElement:
    """Anti-multiplicative S with S(g) = g^-1 and S(y_i) = -g_i^-1 y_i."""
    rs = e.rs
    out = rs.zero()
    for (exps, g, mu), c in e.terms.items():
        t = rs.group(rs.G.inv(g))
        for i in range(8, -1, -1):
            for _ in range(exps[i]):
                t = t * antipode_root(rs, PBW_ORDER[i])
        t = AlgElement(rs, {(k[0], k[1], _mu_add(k[2], mu)): v * c for k, v in t.terms.items()})
        out = out + t
    return out


def is_skew_primitive(e: AlgElement):
    """The group element g with Delta(e) = e (x) 1 + g (x) e, or None."""
    if not e:
        return None
    rs = e.rs
    rest = coproduct(e) - TensorElement.pure(e, rs.one())
    # the left legs of g (x) e are pure group elements
    lefts = {(k[0], k[1]) for k in rest.terms}
    if len(lefts) != 1:
        return None
    e1, g = next(iter(lefts))
    if any(e1):
        return None
    if rest == TensorElement.pure(rs.group(g), e):
        return g
    return None


def coassociator(e: AlgElement) -> tuple:
    """((Delta (x) id)Delta(e), (id (x) Delta)Delta(e)) as dicts over triples of legs."""
    rs = e.rs
    de = coproduct(e)
    left: dict = {}
    right: dict = {}
    for (e1, g1, e2, g2, m), c in de.terms.items():
        for (a1, h1, a2, h2, n), v in coproduct_key(rs, (e1, g1, ZERO_MU)).terms.items():
            _acc(left, ((a1, h1), (a2, h2), (e2, g2), _mu_add(m, n)), c * v)
        for (a1, h1, a2, h2, n), v in coproduct_key(rs, (e2, g2, ZERO_MU)).terms.items():
            _acc(right, ((e1, g1), (a1, h1), (a2, h2), _mu_add(m, n)), c * v)
    return left, right


def generator_name(root: str) -> str:
    return GENERATOR_NAME[root]


__all__ = [
    "TensorElement",
    "coproduct",
    "coproduct_root",
    "power_coproduct",
    "counit",
    "counit_left",
    "counit_right",
    "multiply_legs",
    "antipode",
    "coassociator",
    "is_skew_primitive",
    "tensor_map",
    "PBW_POS",
]
