"""Named summands of Delta(y_alpha) and the auxiliary elements used to
split Delta(y_alpha)^N into N-th powers.

Every builder takes a rewrite system (normally the untruncated one) and
returns ``{name: TensorElement}``.
"""

from __future__ import annotations

from ..cyclo import beta_scalars, xi
from ..datum import ROOT_DEGREE
from .tensor import TensorElement


class _Ctx:
    def __init__(self, rs):
        self.rs = rs
        self.d = rs.datum
        self.q33 = self.d.q33()
        self.xi1 = xi(1, self.q33)
        self.xi2 = xi(2, self.q33)

    def q(self, a: str, b: str):
        """q(deg a, deg b) for root names (simple roots as a1, a2, a3)."""
        return self.d.bichar(ROOT_DEGREE[a], ROOT_DEGREE[b])

    def g(self, *roots):
        G = self.d.group
        out = G.identity
        for r in roots:
            out = G.mul(out, self.d.root_group_data(r)[0])
        return self.rs.group(out)

    def y(self, *roots):
        return self.rs.word(roots)

    def t(self, coeff, left, right) -> TensorElement:
        return TensorElement.pure(left, right).scale(coeff)


def degree1_elements(rs, root: str) -> dict:
    c = _Ctx(rs)
    return {"a1": c.t(1, c.y(root), rs.one()), "a2": c.t(1, c.g(root), c.y(root))}


def degree2_elements(rs, root: str) -> dict:
    """a1, a2, a3 (and b4 for y32) of Delta(y21) or Delta(y32)."""
    c = _Ctx(rs)
    hi, lo = {"a21": ("a2", "a1"), "a32": ("a3", "a2")}[root]
    out = {
        "a1": c.t(1, c.y(root), rs.one()),
        "a2": c.t(c.xi2, c.y(hi) * c.g(lo), c.y(lo)),
        "a3": c.t(1, c.g(root), c.y(root)),
    }
    if root == "a32":
        coeff = -c.xi2 * c.q("a3", "a2").inv() * c.q33.inv()
        out["a4"] = c.t(coeff, c.y("at32") * c.g("a2"), c.y("a2"))
    return out


def y31_elements(rs) -> dict:
    c = _Ctx(rs)
    q33i = c.q33.inv()
    xi2 = c.xi2
    k78 = c.q("a3", "a2") * c.q33 * (c.q("a2", "a1") * c.q("a3", "a1")).inv()
    out = {
        "a1": c.t(1, c.y("a31"), rs.one()),
        "a2": c.t(xi2, c.y("a32") * c.g("a1"), c.y("a1")),
        "a3": c.t(xi2, c.y("a3") * c.g("a21"), c.y("a21")),
        "a4": c.t(1, c.g("a31"), c.y("a31")),
        "a5": c.t(-xi2 * xi2 * q33i * c.q("a32", "a21").inv(), c.y("at32") * c.g("a21", "a1"), c.y("a21", "a1")),
        # sign fixed by a12 a3 - q33^-1 a3 a12 = a5 + a6
        "a6": c.t(-xi2 * q33i * c.q("a3", "a21").inv(), c.y("at31") * c.g("a21"), c.y("a21")),
        "a7": c.t(-xi2 * xi2 * k78, c.y("a2", "at31") * c.g("a1"), c.y("a1")),
        "a8": c.t(xi2 * k78, c.y("at21") * c.g("a1"), c.y("a1")),
    }
    out["a12"] = out["a1"] + out["a2"]
    out["a56"] = out["a5"] + out["a6"]
    out["a78"] = out["a7"] + out["a8"]
    return out


def yt32_elements(rs) -> dict:
    c = _Ctx(rs)
    return {
        "b1": c.t(1, c.y("at32"), rs.one()),
        "b2": c.t(c.q33 * c.xi2, c.y("a3") * c.g("a32"), c.y("a32")),
        "b3": c.t(c.xi1 * c.xi2, c.y("a3", "a3") * c.g("a2"), c.y("a2")),
        "b4": c.t(1, c.g("at32"), c.y("at32")),
    }


def yt31_elements(rs) -> dict:
    c = _Ctx(rs)
    return {
        "a1": c.t(1, c.y("at31"), rs.one()),
        "a2": c.t(c.xi2, c.y("at32") * c.g("a1"), c.y("a1")),
        "a3": c.t(c.xi2 * c.xi1, c.y("a3", "a3") * c.g("a21"), c.y("a21")),
        "a4": c.t(c.q33 * c.xi2, c.y("a3") * c.g("a31"), c.y("a31")),
        "a5": c.t(1, c.g("at31"), c.y("at31")),
    }


def b_elements(rs) -> dict:
    """b2, b3 and (y32 - xi2 y3 y2) as AlgElements."""
    c = _Ctx(rs)
    q32 = c.q("a3", "a2")
    q33i = c.q33.inv()
    b2 = c.y("a32", "a32") - c.y("at32", "a2").scale(q32.inv() * q33i * q33i * (1 + q33i))
    b3 = c.y("at32").scale(q33i) - c.y("a3", "a32").scale(c.xi2) + c.y("a3", "a3", "a2").scale(c.xi1 * c.xi2)
    b4 = c.y("a32") - c.y("a3", "a2").scale(c.xi2)
    return {"b2": b2, "b3": b3, "c4": b4}


def yt21_elements(rs) -> dict:
    c = _Ctx(rs)
    q32 = c.q("a3", "a2")
    b = b_elements(rs)
    return {
        "a1": c.t(1, c.y("at21"), rs.one()),
        "a2": c.t(-c.xi1 * c.xi2 * q32.inv(), b["b2"] * c.g("a1"), c.y("a1")),
        "a3": c.t(c.xi2 * q32.inv() * q32.inv(), b["b3"] * c.g("a21"), c.y("a21")),
        "a4": c.t(-c.xi2 * c.q33 * q32.inv(), b["c4"] * c.g("a31"), c.y("a31")),
        "a5": c.t(c.xi2, c.y("a2") * c.g("at31"), c.y("at31")),
        "a6": c.t(1, c.g("at21"), c.y("at21")),
    }


def summands(rs, root: str) -> dict:
    """The summands of Delta(y_root) used in the power computation."""
    if root in ("a1", "a2", "a3"):
        return degree1_elements(rs, root)
    if root in ("a21", "a32"):
        e = degree2_elements(rs, root)
        return {k: e[k] for k in ("a1", "a2", "a3")}
    if root == "a31":
        e = y31_elements(rs)
        return {k: e[k] for k in ("a1", "a2", "a3", "a4")}
    if root == "at32":
        return yt32_elements(rs)
    if root == "at31":
        return yt31_elements(rs)
    if root == "at21":
        return yt21_elements(rs)
    raise KeyError(root)


def power_split_coefficients(rs, root: str, exponent: int | None = None) -> dict:
    """Coefficient of each summand's N-th power in Delta(y_root^N).

    The middle summand of the three-term chain carries beta1^N + beta2^N,
    written 2(1+q33)^(-exponent); exponent defaults to N.
    """
    N = rs.N
    q33 = rs.datum.q33()
    exponent = N if exponent is None else exponent
    special = (1 + q33).inv() ** exponent * 2
    names = summands(rs, root)
    coeffs = {k: rs.field.one for k in names}
    # the summand carrying y3 (x) (lower root vector) in the three-term chain
    mid = {"at32": "b2", "at31": "a4", "at21": "a4"}.get(root)
    if mid:
        coeffs[mid] = special
    return coeffs


def beta_split(rs):
    b1, b2, beta = beta_scalars(rs.datum.q33())
    return b1, b2, beta
