"""Finite abelian groups, characters and Cartan data of type B3.

Group elements and characters are plain exponent tuples; a character
``c`` evaluated at ``g`` is ``zeta_M ** sum(c_i * e_i * M / m_i)``.  Nothing
here enumerates the group.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd, prod

from .cyclo import CycField, CycScalar, lcm

CARTAN_B3 = ((2, -1, 0), (-1, 2, -1), (0, -2, 2))

# Positive roots by name, as coefficient vectors over (alpha1, alpha2, alpha3).
ROOTS = ("a1", "a2", "a3", "a21", "a32", "a31", "at32", "at31", "at21")
ROOT_DEGREE = {
    "a1": (1, 0, 0),
    "a2": (0, 1, 0),
    "a3": (0, 0, 1),
    "a21": (1, 1, 0),
    "a32": (0, 1, 1),
    "a31": (1, 1, 1),
    "at32": (0, 1, 2),
    "at31": (1, 1, 2),
    "at21": (1, 2, 2),
}
ROOT_INDEX = {r: i for i, r in enumerate(ROOTS)}
GENERATOR_NAME = {r: "y" + r[1:] for r in ROOTS}
ROOT_OF_GENERATOR = {v: k for k, v in GENERATOR_NAME.items()}

# extended indices 1 < 2 < 3 < 3~ < 2~
EXT_ORDER = ("1", "2", "3", "3t", "2t")


class DatumError(ValueError):
    """Structurally malformed datum or a datum that failed validation."""


def height(root: str) -> int:
    return sum(ROOT_DEGREE[root])


@dataclass(frozen=True)
class AbelianGroup:
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        f = tuple(int(m) for m in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        if any(m < 1 for m in f):
            raise DatumError(f"invariant factors must be positive: {f}")
        for a, b in zip(f, f[1:]):
            if b % a:
                raise DatumError(f"invariant factors must form a divisibility chain: {f}")

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def element(self, exps) -> tuple[int, ...]:
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.rank:
            raise DatumError(f"group element {exps} has wrong length for rank {self.rank}")
        return tuple(e % m for e, m in zip(exps, self.invariant_factors))

    def mul(self, g, h) -> tuple[int, ...]:
        return tuple((a + b) % m for a, b, m in zip(g, h, self.invariant_factors))

    def inv(self, g) -> tuple[int, ...]:
        return tuple((-a) % m for a, m in zip(g, self.invariant_factors))

    def power(self, g, n: int) -> tuple[int, ...]:
        return tuple((a * n) % m for a, m in zip(g, self.invariant_factors))

    def generators(self) -> list[tuple[int, ...]]:
        out = []
        for i in range(self.rank):
            v = [0] * self.rank
            v[i] = 1
            out.append(self.element(v))
        return out

    def character_exponent(self, chi, g, M: int) -> int:
        """Exponent k with chi(g) = zeta_M^k."""
        return sum(c * e * (M // m) for c, e, m in zip(chi, g, self.invariant_factors)) % M

    def char_mul(self, chi, psi):
        return self.mul(chi, psi)

    def char_power(self, chi, n):
        return self.power(chi, n)

    def is_trivial_character(self, chi) -> bool:
        return all(c % m == 0 for c, m in zip(chi, self.invariant_factors))


@dataclass(frozen=True)
class Datum:
    """Cartan datum of type B3 over a finite abelian group.

    ``E[i][j]`` are the braiding exponents, q_ij = zeta_N ** E[i][j]; the
    engine itself reads the braiding from the characters, chi_j(g_i).
    """

    N: int
    group: AbelianGroup
    g: tuple
    chi: tuple
    E: tuple
    mu: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if len(self.g) != 3 or len(self.chi) != 3:
            raise DatumError("a B3 datum needs exactly three group elements and three characters")
        if len(self.E) != 3 or any(len(row) != 3 for row in self.E):
            raise DatumError("E must be a 3x3 integer matrix")
        if self.N < 1:
            raise DatumError("N must be positive")
        object.__setattr__(self, "g", tuple(self.group.element(x) for x in self.g))
        object.__setattr__(self, "chi", tuple(self.group.element(x) for x in self.chi))
        object.__setattr__(self, "E", tuple(tuple(int(v) for v in row) for row in self.E))

    # -- derived quantities ----------------------------------------------
    @property
    def M(self) -> int:
        return lcm(self.N, self.group.exponent)

    @property
    def field(self) -> CycField:
        return CycField(self.M)

    @property
    def cartan(self):
        return CARTAN_B3

    def char_value_exponent(self, chi, g) -> int:
        return self.group.character_exponent(chi, g, self.M)

    def q_exponent(self, i: int, j: int) -> int:
        """Exponent of zeta_M for q_ij = chi_j(g_i); i, j in 1..3."""
        return self.char_value_exponent(self.chi[j - 1], self.g[i - 1])

    def q(self, i: int, j: int) -> CycScalar:
        return self.field.zeta(self.q_exponent(i, j))

    def q33(self) -> CycScalar:
        return self.q(3, 3)

    def root_group_data(self, root: str):
        """(g_alpha, chi_alpha) for a positive root name."""
        if root not in ROOT_DEGREE:
            raise DatumError(f"unknown root {root!r}")
        deg = ROOT_DEGREE[root]
        G = self.group
        g = G.identity
        chi = G.identity
        for i, n in enumerate(deg):
            g = G.mul(g, G.power(self.g[i], n))
            chi = G.mul(chi, G.power(self.chi[i], n))
        return g, chi

    def group_of_degree(self, deg):
        G = self.group
        g = G.identity
        for i, n in enumerate(deg):
            g = G.mul(g, G.power(self.g[i], n))
        return g

    def bichar_exponent(self, a, b) -> int:
        """Exponent of q(a, b) = prod q_ij^(a_i b_j) for Z^3-degrees a, b."""
        M = self.M
        return sum(a[i] * b[j] * self.q_exponent(i + 1, j + 1) for i in range(3) for j in range(3)) % M

    def bichar(self, a, b) -> CycScalar:
        return self.field.zeta(self.bichar_exponent(a, b))

    def mu_mask(self) -> dict:
        """True where mu_alpha may be nonzero: g_alpha^N != 1 and chi_alpha^N = eps."""
        G = self.group
        out = {}
        for r in ROOTS:
            g, chi = self.root_group_data(r)
            out[r] = G.power(g, self.N) != G.identity and G.is_trivial_character(G.power(chi, self.N))
        return out

    def dimension(self) -> int:
        return self.N ** 9 * self.group.order

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        doc = {
            "N": self.N,
            "invariant_factors": list(self.group.invariant_factors),
            "E": [list(r) for r in self.E],
            "g": [list(x) for x in self.g],
            "chi": [list(x) for x in self.chi],
        }
        if self.mu:
            doc["mu"] = dict(self.mu)
        return doc


def datum_from_json(doc: dict) -> Datum:
    try:
        N = int(doc["N"])
        group = AbelianGroup(tuple(doc["invariant_factors"]))
        mu = doc.get("mu") or {}
        for name in mu:
            if name not in ROOT_INDEX:
                raise DatumError(f"unknown root name {name!r} in mu")
        return Datum(N, group, tuple(doc["g"]), tuple(doc["chi"]), tuple(doc["E"]), dict(mu))
    except KeyError as exc:
        raise DatumError(f"datum file is missing key {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DatumError):
            raise
        raise DatumError(f"malformed datum: {exc}") from None


def load_datum(path) -> Datum:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DatumError(f"{path}: invalid JSON ({exc})") from None
    return datum_from_json(doc)


CANONICAL_E = ((2, -1, 0), (-1, 2, -1), (0, -1, 1))
# Satisfies the same congruences with q13 != 1 and q_ij != q_ji throughout.
TWISTED_E = ((2, 0, 1), (-2, 2, 1), (-1, -3, 1))


def canonical_datum(N: int, E=CANONICAL_E) -> Datum:
    """Gamma = (Z_{N^2})^3, g_i the unit vectors, chi_j(g_i) = zeta_N^E_ij.

    Here g_alpha^N != 1 and chi_alpha^N = eps for every positive root, so no
    lifting parameter is forced to vanish.
    """
    if N < 3 or N % 2 == 0:
        raise DatumError(f"canonical datum needs odd N >= 3, got {N}")
    m = N * N
    group = AbelianGroup((m, m, m))
    g = tuple(tuple(1 if k == i else 0 for k in range(3)) for i in range(3))
    # chi_j(g_i) = zeta_{N^2}^(N * E_ij)
    chi = tuple(tuple((N * E[i][j]) % m for i in range(3)) for j in range(3))
    return Datum(N, group, g, chi, tuple(tuple(r) for r in E))


def twisted_datum(N: int) -> Datum:
    """Like :func:`canonical_datum` but with q13 = zeta_N, q31 = zeta_N^-1."""
    return canonical_datum(N, TWISTED_E)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def names(self) -> list[str]:
        return [v.split(":")[0] for v in self.violations]


def validate_datum(d: Datum) -> ValidationReport:
    rep = ValidationReport()
    N = d.N
    if N < 2 or N % 2 == 0:
        rep.violations.append(f"N odd: N = {N} must be an odd integer > 1")
    E = d.E
    A = CARTAN_B3
    for i in range(3):
        for j in range(i + 1, 3):
            # q_ij q_ji = q_ii^{a_ij}; both orientations of the pair
            pairs = ((i, j),) if (i, j) == (0, 2) else ((i, j), (j, i))
            for a, b in pairs:
                lhs = (E[a][b] + E[b][a]) % N if N > 0 else 0
                rhs = (A[a][b] * E[a][a]) % N if N > 0 else 0
                if lhs != rhs:
                    name = f"cartan({a + 1},{b + 1})"
                    if {a, b} == {0, 2}:
                        name = "q13*q31 = 1"
                    rep.violations.append(
                        f"{name}: E{a + 1}{b + 1} + E{b + 1}{a + 1} = {E[a][b] + E[b][a]}"
                        f" is not a{a + 1}{b + 1}*E{a + 1}{a + 1} = {A[a][b] * E[a][a]} mod {N}"
                    )
    if (E[0][0] - 2 * E[2][2]) % N:
        rep.violations.append(f"q11 = q33^2: E11 = {E[0][0]} but 2*E33 = {2 * E[2][2]} mod {N}")
    if (E[1][1] - 2 * E[2][2]) % N:
        rep.violations.append(f"q22 = q33^2: E22 = {E[1][1]} but 2*E33 = {2 * E[2][2]} mod {N}")
    if gcd(E[2][2] % N, N) != 1:
        rep.violations.append(f"ord(q33) = N: zeta_{N}^{E[2][2]} does not have order {N}")
    M = d.M
    for i in range(3):
        for j in range(3):
            got = d.q_exponent(i + 1, j + 1)
            want = (E[i][j] * (M // N)) % M
            if got != want:
                rep.violations.append(
                    f"chi_{j + 1}(g_{i + 1}) = zeta_N^E{i + 1}{j + 1}: character gives zeta_{M}^{got},"
                    f" E gives zeta_{M}^{want}"
                )
    mask = d.mu_mask()
    for name, val in (d.mu or {}).items():
        if not mask.get(name, False) and str(val).strip() not in ("0", ""):
            rep.violations.append(f"mu mask {name}: mu[{name}] must vanish (g^N = 1 or chi^N != eps)")
    return rep


def require_valid(d: Datum) -> None:
    rep = validate_datum(d)
    if not rep.ok:
        raise DatumError("invalid datum: " + "; ".join(rep.violations))


# ---------------------------------------------------------------------------
# Extended-index helpers
# ---------------------------------------------------------------------------


def extended_index(j) -> int:
    """[j]: drop the tilde."""
    j = str(j)
    if j in ("1", "2", "3"):
        return int(j)
    if j in ("3t", "3~"):
        return 3
    if j in ("2t", "2~"):
        return 2
    raise DatumError(f"unknown extended index {j!r}")


def _ext_pos(j) -> int:
    j = str(j).replace("~", "t")
    if j not in EXT_ORDER:
        raise DatumError(f"unknown extended index {j!r}")
    return EXT_ORDER.index(j)


def interval_degree(b, a) -> tuple[int, int, int]:
    """Z^3-degree of the extended interval a <= i <= b."""
    lo, hi = _ext_pos(a), _ext_pos(b)
    if lo > hi:
        raise DatumError(f"extended interval needs {a} <= {b}")
    deg = [0, 0, 0]
    for k in range(lo, hi + 1):
        deg[extended_index(EXT_ORDER[k]) - 1] += 1
    return tuple(deg)


def q_block(b, a, d_, c, datum: Datum) -> CycScalar:
    """q_{ba,dc} = prod over a <= i <= b, c <= j <= d of q_[i][j]."""
    return datum.bichar(interval_degree(b, a), interval_degree(d_, c))

