"""Deformed power relations y_alpha^N = u_alpha(mu) and the lifting systems.

A group-algebra element with parameter-polynomial coefficients is a dict
``{(g, mu_monomial): coeff}``; :func:`u_alpha` returns one of these wrapped
in an AlgElement of the requested system.
"""

from __future__ import annotations

from .cyclo import NMU, MuScalar, xi
from .datum import ROOT_INDEX, ROOTS, Datum, DatumError, require_valid
from .pbwalg.rewrite import AlgElement, RewriteSystem, build_rewrite_system

MU_ORDER = ROOTS


class MuFamily(dict):
    """Root name -> MuScalar; masked roots hold the zero polynomial."""

    @property
    def field(self):
        return next(iter(self.values())).field


def symbolic_mu(d: Datum) -> MuFamily:
    """One indeterminate per root allowed by the datum's mask."""
    F = d.field
    mask = d.mu_mask()
    return MuFamily({r: MuScalar.var(F, ROOT_INDEX[r]) if mask[r] else MuScalar(F) for r in ROOTS})


def zero_mu(d: Datum) -> MuFamily:
    return MuFamily({r: MuScalar(d.field) for r in ROOTS})


def mu_from_values(d: Datum, values: dict, strict: bool = True) -> MuFamily:
    """Numeric parameters; nonzero values on masked roots raise DatumError."""
    F = d.field
    mask = d.mu_mask()
    out = {}
    for r in ROOTS:
        v = F(values.get(r, 0))
        if v and not mask[r]:
            if strict:
                raise DatumError(f"mu[{r}] must vanish: g^N = 1 or chi^N != eps for this root")
            v = F.zero
        out[r] = MuScalar.const(v) if v else MuScalar(F)
    for r in values:
        if r not in ROOT_INDEX:
            raise DatumError(f"unknown root {r!r} in mu")
    return MuFamily(out)


def as_mu_family(d: Datum, mu) -> MuFamily:
    if isinstance(mu, MuFamily):
        return mu
    if mu is None or mu == "zero":
        return zero_mu(d)
    if mu == "symbolic":
        return symbolic_mu(d)
    if isinstance(mu, dict):
        return mu_from_values(d, mu)
    raise DatumError(f"cannot interpret mu={mu!r}")


# ---------------------------------------------------------------------------
# group-algebra polynomials
# ---------------------------------------------------------------------------


def _gp_add(a: dict, b: dict, scale=None) -> dict:
    out = dict(a)
    for k, v in b.items():
        if scale is not None:
            v = v * scale
        s = out[k] + v if k in out else v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _gp_mul_mu(a: dict, p: MuScalar) -> dict:
    out: dict = {}
    for (g, m), c in a.items():
        for m2, c2 in p.terms.items():
            k = (g, tuple(x + y for x, y in zip(m, m2)))
            v = c * c2
            s = out[k] + v if k in out else v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def big_g(d: Datum, root: str) -> tuple:
    """g_root^N."""
    g, _ = d.root_group_data(root)
    return d.group.power(g, d.N)


def deformation_term(d: Datum, root: str, p: MuScalar) -> dict:
    """p * (g_root^N - 1) as a group-algebra polynomial."""
    one = d.group.identity
    base = {(big_g(d, root), (0,) * NMU): d.field.one, (one, (0,) * NMU): -d.field.one}
    if big_g(d, root) == one:
        return {}
    return _gp_mul_mu(base, p)


def _xin(d: Datum, i: int):
    return xi(i, d.q33()) ** d.N


def lambda_scalars(d: Datum, mu) -> dict:
    """The four scalars of the degree-5 recursion, keyed by root."""
    mu = as_mu_family(d, mu)
    x1, x2 = _xin(d, 1), _xin(d, 2)
    m1, m2, m3, m32, mt32 = mu["a1"], mu["a2"], mu["a3"], mu["a32"], mu["at32"]
    return {
        "at31": m2 * x2,
        "a31": (m2 * m3 * x2 - m32) * (2 * x1),
        "a21": (m2 * m3 * m3 * (x1 * x2) - m3 * m32 * (2 * x1) + mt32) * x2,
        "a1": (m2 * mt32 * x2 - m32 * m32 * x1) * x2,
    }


def recursion_coefficients(d: Datum, mu) -> dict:
    """root -> {lower root: c} with y_root^N = mu_root (g^N - 1) - sum c * y_lower^N."""
    mu = as_mu_family(d, mu)
    x1, x2 = _xin(d, 1), _xin(d, 2)
    m = mu
    return {
        "a1": {},
        "a2": {},
        "a3": {},
        "a21": {"a1": m["a2"] * x2},
        "a32": {"a2": m["a3"] * x2},
        "a31": {"a21": m["a3"] * x2, "a1": m["a32"] * x2},
        "at32": {"a32": m["a3"] * (2 * x1), "a2": m["a3"] * m["a3"] * (x1 * x2)},
        "at31": {"a31": m["a3"] * (2 * x1), "a21": m["a3"] * m["a3"] * (x1 * x2), "a1": m["at32"] * x2},
        "at21": lambda_scalars(d, mu),
    }


def u_alpha_terms(root: str, mu, d: Datum) -> dict:
    """Closed form of u_root as {(group element, mu monomial): coeff}."""
    if root not in ROOT_INDEX:
        raise DatumError(f"unknown root {root!r}")
    mu = as_mu_family(d, mu)
    mask = d.mu_mask()
    for r, p in mu.items():
        if p and not mask[r]:
            raise DatumError(f"mu[{r}] must vanish for this datum")
    x1, x2 = _xin(d, 1), _xin(d, 2)
    m = mu
    T = lambda r, p: deformation_term(d, r, p)
    parts = {
        "a1": [T("a1", m["a1"])],
        "a2": [T("a2", m["a2"])],
        "a3": [T("a3", m["a3"])],
        "a21": [T("a21", m["a21"]), T("a1", -(m["a2"] * m["a1"] * x2))],
        "a32": [T("a32", m["a32"]), T("a2", -(m["a3"] * m["a2"] * x2))],
        "a31": [
            T("a31", m["a31"]),
            T("a21", -(m["a3"] * m["a21"] * x2)),
            T("a1", -((m["a32"] - m["a3"] * m["a2"] * x2) * m["a1"] * x2)),
        ],
        "at32": [
            T("at32", m["at32"]),
            T("a32", -(m["a3"] * m["a32"] * (2 * x1))),
            T("a2", m["a3"] * m["a3"] * m["a2"] * (x1 * x2)),
        ],
        "at31": [
            T("at31", m["at31"]),
            T("a31", -(m["a3"] * m["a31"] * (2 * x1))),
            T("a21", m["a3"] * m["a3"] * m["a21"] * (x1 * x2)),
            T("a1", -((m["a3"] * m["a3"] * m["a2"] * (x1 * x2) - m["a3"] * m["a32"] * (2 * x1) + m["at32"]) * m["a1"] * x2)),
        ],
        "at21": [
            T("at21", m["at21"]),
            T("at31", -(m["a2"] * m["at31"] * x2)),
            T("a31", m["a32"] * m["a31"] * (2 * x1)),
            T("a21", -(m["at32"] * m["a21"] * x2)),
            T("a1", (m["a2"] * m["at32"] * x2 - m["a32"] * m["a32"] * x1) * m["a1"] * x2),
        ],
    }[root]
    out: dict = {}
    for p in parts:
        out = _gp_add(out, p)
    return out


def recursive_u_terms(root: str, mu, d: Datum, _cache=None) -> dict:
    """u_root obtained from the recursion, lower powers substituted recursively."""
    mu = as_mu_family(d, mu)
    cache = {} if _cache is None else _cache
    if root in cache:
        return cache[root]
    out = deformation_term(d, root, mu[root])
    for lower, c in recursion_coefficients(d, mu)[root].items():
        out = _gp_add(out, _gp_mul_mu(recursive_u_terms(lower, mu, d, cache), c), -d.field.one)
    cache[root] = out
    return out


def expand_recursion_check(d: Datum, mu="symbolic") -> list:
    """Roots whose recursive and closed forms differ, with the difference."""
    mu = as_mu_family(d, mu)
    cache: dict = {}
    bad = []
    for r in ROOTS:
        diff = _gp_add(recursive_u_terms(r, mu, d, cache), u_alpha_terms(r, mu, d), -d.field.one)
        if diff:
            bad.append((r, diff))
    return bad


def group_poly_element(rs: RewriteSystem, terms: dict) -> AlgElement:
    base = (0,) * 9
    return rs.element({(base, g, m): c for (g, m), c in terms.items() if c})


def u_alpha(root: str, mu, d: Datum, rs: RewriteSystem | None = None) -> AlgElement:
    rs = rs or build_rewrite_system(d, "serre")
    return group_poly_element(rs, u_alpha_terms(root, mu, d))


def counit_of_terms(terms: dict) -> dict:
    """epsilon on a group-algebra polynomial, as {mu monomial: coeff}."""
    out: dict = {}
    for (_, m), c in terms.items():
        s = out[m] + c if m in out else c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


# ---------------------------------------------------------------------------
# systems
# ---------------------------------------------------------------------------


def build_lifting(d: Datum, mu="symbolic", table=None, step_budget=None, untruncated=()) -> RewriteSystem:
    """Straightening system of the lifting with parameters ``mu``.

    Roots in ``untruncated`` get no power rule; this gives the intermediate
    algebras in which one power is still free.
    """
    require_valid(d)
    mu = as_mu_family(d, mu)
    tails = {}
    for r in ROOTS:
        if r in untruncated:
            continue
        tails[r] = [(g, m, c) for (g, m), c in sorted(u_alpha_terms(r, mu, d).items())]
    mode = "lifting" if not untruncated else "partial"
    rs = RewriteSystem(d, mode, tails, table, step_budget, validate=False)
    rs.mu = mu
    return rs


def braided_commutator(a: AlgElement, b: AlgElement) -> AlgElement:
    """[a, b]_c = ab - chi_b(g_a) ba for Z^3-homogeneous a, b."""
    if not a or not b:
        return a.rs.zero()
    da, db = a.zdegree(), b.zdegree()
    return a * b - (b * a).scale(a.rs.datum.bichar(da, db))


def root_vector_by_commutators(rs: RewriteSystem, root: str) -> AlgElement:
    """Root vector rebuilt from the simple generators by iterated commutators."""
    from .pbwalg.relations import ROOT_VECTOR_DEF

    if root not in ROOT_VECTOR_DEF:
        return rs.gen(root)
    left, right = ROOT_VECTOR_DEF[root]
    return braided_commutator(root_vector_by_commutators(rs, left), root_vector_by_commutators(rs, right))
