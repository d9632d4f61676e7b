"""Exact arithmetic in cyclotomic fields Q(zeta_M) and q-combinatorics.

A :class:`CycField` fixes the conductor ``M``.  Elements (:class:`CycScalar`)
are stored as sparse maps ``exponent -> rational`` reduced modulo the M-th
cyclotomic polynomial, so equal elements have identical representations.
Subfield elements such as powers of zeta_N inside Q(zeta_{N^2}) stay sparse.

:class:`MuScalar` adds nine commuting indeterminates (the lifting
parameters), with :class:`CycScalar` coefficients.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from gmpy2 import mpq

__all__ = [
    "CycField",
    "CycScalar",
    "MuScalar",
    "ScalarDivisionError",
    "cyclotomic_poly",
    "q_number",
    "q_factorial",
    "q_binomial",
    "q_multinomial",
    "q_binomial_poly",
    "xi",
    "beta_scalars",
]


class ScalarDivisionError(ZeroDivisionError):
    """Inversion of the zero scalar."""


def _norm(c):
    # mpq with denominator 1 becomes a plain int (cheaper arithmetic)
    if type(c) is int:
        return c
    if c.denominator == 1:
        return int(c.numerator)
    return c


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        f = mpq(num[-1]) / lead
        q[shift] = f
        for i, d in enumerate(den):
            num[shift + i] -= f * d
        num.pop()
        while num and num[-1] == 0:
            num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients (constant term first) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_poly(d)))
            assert not any(rem)
    return tuple(int(c) for c in num)


class CycField:
    """The cyclotomic field Q(zeta_M)."""

    _cache: dict[int, "CycField"] = {}

    def __new__(cls, M: int):
        if M in cls._cache:
            return cls._cache[M]
        self = super().__new__(cls)
        self._setup(M)
        cls._cache[M] = self
        return self

    def _setup(self, M: int) -> None:
        if M < 1:
            raise ValueError("conductor must be positive")
        self.M = M
        self.phi_poly = cyclotomic_poly(M)
        self.degree = len(self.phi_poly) - 1
        # reduction table: x^e (phi <= e < M) as a canonical sparse dict
        red: dict[int, dict[int, int]] = {}
        top = {k: -c for k, c in enumerate(self.phi_poly[:-1]) if c}
        prev = top
        for e in range(self.degree, M):
            if e == self.degree:
                cur = dict(top)
            else:
                cur = {}
                carry = 0
                for k, c in prev.items():
                    if k + 1 == self.degree:
                        carry = c
                    else:
                        cur[k + 1] = c
                if carry:
                    for k, c in top.items():
                        v = cur.get(k, 0) + carry * c
                        if v:
                            cur[k] = v
                        else:
                            cur.pop(k, None)
            red[e] = cur
            prev = cur
        self._red = red
        self._zeta: dict[int, CycScalar] = {}
        self.zero = CycScalar(self, {})
        self.one = CycScalar(self, {0: 1})

    def __repr__(self) -> str:
        return f"CycField({self.M})"

    def __reduce__(self):
        return (CycField, (self.M,))

    def zeta(self, k: int = 1) -> "CycScalar":
        """zeta_M ** k."""
        k %= self.M
        z = self._zeta.get(k)
        if z is None:
            if k < self.degree:
                z = CycScalar(self, {k: 1})
            else:
                z = CycScalar(self, dict(self._red[k]))
            self._zeta[k] = z
        return z

    def root_of_unity(self, n: int, k: int = 1) -> "CycScalar":
        """zeta_n ** k, for n dividing M."""
        if self.M % n:
            raise ValueError(f"zeta_{n} does not lie in Q(zeta_{self.M})")
        return self.zeta(k * (self.M // n))

    def __call__(self, value) -> "CycScalar":
        if isinstance(value, CycScalar):
            if value.field is not self:
                raise ValueError("scalar from a different cyclotomic field")
            return value
        value = _norm(mpq(value)) if not isinstance(value, int) else value
        return CycScalar(self, {0: value} if value else {})

    def from_coeffs(self, coeffs) -> "CycScalar":
        """Element sum_k coeffs[k] * zeta^k (any length; reduced here)."""
        raw = {}
        for k, c in enumerate(coeffs):
            if c:
                raw[k % self.M] = raw.get(k % self.M, 0) + c
        return CycScalar(self, self._reduce(raw))

    def _reduce(self, raw: dict) -> dict:
        deg = self.degree
        out = {}
        hi = []
        for e, c in raw.items():
            if not c:
                continue
            if e < deg:
                out[e] = out.get(e, 0) + c
            else:
                hi.append((e, c))
        red = self._red
        for e, c in hi:
            for k, v in red[e].items():
                out[k] = out.get(k, 0) + c * v
        return {k: _norm(v) for k, v in out.items() if v}


class CycScalar:
    """Immutable element of Q(zeta_M) in canonical form."""

    __slots__ = ("field", "c", "_hash")

    def __init__(self, field: CycField, c: dict):
        self.field = field
        self.c = c
        self._hash = None

    # -- predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.c)

    def is_rational(self) -> bool:
        return not self.c or (len(self.c) == 1 and 0 in self.c)

    def rational(self):
        if not self.is_rational():
            raise ValueError("scalar is not rational")
        return self.c.get(0, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, CycScalar):
            return self.field is other.field and self.c == other.c
        if isinstance(other, (int, type(mpq(0)))) or hasattr(other, "denominator"):
            return self.c == ({0: _norm(mpq(other))} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.M, frozenset(self.c.items())))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "CycScalar":
        if isinstance(other, CycScalar):
            if other.field is not self.field:
                raise ValueError("scalars from different cyclotomic fields")
            return other
        return self.field(other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not other.c:
            return self
        if not self.c:
            return other
        out = dict(self.c)
        for k, v in other.c.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = _norm(s)
            else:
                del out[k]
        return CycScalar(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.field, {k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CycScalar):
            if isinstance(other, int) or hasattr(other, "denominator"):
                if not other:
                    return self.field.zero
                f = other if isinstance(other, int) else _norm(mpq(other))
                return CycScalar(self.field, {k: _norm(v * f) for k, v in self.c.items()})
            return NotImplemented
        if other.field is not self.field:
            raise ValueError("scalars from different cyclotomic fields")
        a, b = self.c, other.c
        if not a or not b:
            return self.field.zero
        if len(b) == 1 and 0 in b:
            f = b[0]
            if f == 1:
                return self
            return CycScalar(self.field, {k: _norm(v * f) for k, v in a.items()})
        if len(a) == 1 and 0 in a:
            f = a[0]
            if f == 1:
                return other
            return CycScalar(self.field, {k: _norm(v * f) for k, v in b.items()})
        M = self.field.M
        raw: dict[int, object] = {}
        for i, x in a.items():
            for j, y in b.items():
                e = i + j
                if e >= M:
                    e -= M
                raw[e] = raw.get(e, 0) + x * y
        return CycScalar(self.field, self.field._reduce(raw))

    __rmul__ = __mul__

    def inv(self) -> "CycScalar":
        if not self.c:
            raise ScalarDivisionError("inverse of zero in Q(zeta_%d)" % self.field.M)
        if len(self.c) == 1:
            ((k, v),) = self.c.items()
            # zeta^k * v  ->  zeta^-k / v
            z = self.field.zeta(-k)
            return z * _norm(1 / mpq(v))
        # extended Euclid in Q[x]: s*a + t*phi = 1
        deg = self.field.degree
        a = [mpq(self.c.get(i, 0)) for i in range(deg)]
        while a and a[-1] == 0:
            a.pop()
        p = [mpq(c) for c in self.field.phi_poly]
        r0, r1 = p, a
        s0, s1 = [mpq(0)], [mpq(1)]
        while any(r1):
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 is a nonzero constant since phi is irreducible
        lead = r0[0]
        return self.field.from_coeffs([_norm(c / lead) for c in s0])

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.field(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conj_exponents(self) -> dict:
        return dict(self.c)

    # -- printing ---------------------------------------------------------
    def __repr__(self) -> str:
        return f"CycScalar(M={self.field.M}, {format_cyc(self)})"

    def __str__(self) -> str:
        return format_cyc(self)


def _poly_mul(a: list, b: list) -> list:
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _fmt_rat(c) -> str:
    c = _norm(mpq(c))
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def format_cyc(s: CycScalar) -> str:
    """Render as a reduced zeta-polynomial in the ``q^k`` notation, lowest power first."""
    if not s.c:
        return "0"
    parts = []
    for k in sorted(s.c):
        c = s.c[k]
        neg = c < 0
        mag = -c if neg else c
        if k == 0:
            body = _fmt_rat(mag)
        else:
            pw = "q" if k == 1 else f"q^{k}"
            body = pw if mag == 1 else f"{_fmt_rat(mag)}*{pw}"
        parts.append(("-" if neg else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# q-combinatorics
# ---------------------------------------------------------------------------


def q_number(n: int, q):
    """(n)_q = 1 + q + ... + q^(n-1), with (0)_q = 1."""
    if n < 0:
        raise ValueError("q-number of a negative integer")
    if n == 0:
        return q ** 0 if hasattr(q, "field") else 1
    total = q ** 0 if hasattr(q, "field") else 1
    power = total
    for _ in range(n - 1):
        power = power * q
        total = total + power
    return total


def q_factorial(n: int, q):
    """(n)_q! = prod_{s=0}^{n} (s)_q; the s=0 factor is 1 by convention."""
    out = q_number(0, q)
    for s in range(1, n + 1):
        out = out * q_number(s, q)
    return out


def q_binomial(n: int, k: int, q):
    """Gaussian binomial via the Pascal recurrence (never divides)."""
    if k < 0 or k > n:
        return q ** 0 * 0 if hasattr(q, "field") else 0
    one = q_number(0, q)
    row = [one]
    for m in range(1, n + 1):
        new = [one] * (m + 1)
        qk = one
        for j in range(1, m):
            qk = qk * q
            # binom(m,j) = binom(m-1,j-1) + q^j binom(m-1,j)
            new[j] = row[j - 1] + qk * row[j]
        row = new
    return row[k]


def q_multinomial(n: int, parts, q):
    """q-multinomial as an iterated product of q-binomials."""
    parts = list(parts)
    if any(p < 0 for p in parts) or sum(parts) != n:
        raise ValueError(f"parts {parts} do not sum to {n}")
    out = q_number(0, q)
    remaining = n
    for p in parts:
        out = out * q_binomial(remaining, p, q)
        remaining -= p
    return out


def q_binomial_poly(n: int, k: int) -> tuple[int, ...]:
    """Gaussian binomial as integer polynomial coefficients in q (constant first)."""
    if k < 0 or k > n:
        return (0,)
    row = [[1]]
    for m in range(1, n + 1):
        new = [[1]] * (m + 1)
        for j in range(1, m):
            a = row[j - 1]
            b = [0] * j + row[j]
            size = max(len(a), len(b))
            new[j] = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)]
        row = new
    return tuple(row[k])


def xi(i: int, q33: CycScalar) -> CycScalar:
    """xi_i = 1 - q33^(-i)."""
    return q33.field.one - q33 ** (-i)


def beta_scalars(q33: CycScalar) -> tuple[CycScalar, CycScalar, CycScalar]:
    """(beta1, beta2, beta) with beta1 = 1/(1+q33), beta2 = q33/(1+q33), beta = beta1*beta2*xi_2."""
    s = q33 + 1
    if not s:
        raise ScalarDivisionError("1 + q33 = 0: q33 = -1 is excluded")
    b1 = s.inv()
    b2 = q33 * b1
    return b1, b2, b1 * b2 * xi(2, q33)


# ---------------------------------------------------------------------------
# Polynomials in the lifting parameters
# ---------------------------------------------------------------------------

NMU = 9


class MuScalar:
    """Polynomial in nine commuting indeterminates with CycScalar coefficients.

    Monomials are exponent 9-tuples; terms are kept in a dict and iterated in
    sorted (lexicographic) order when printed or compared structurally.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field: CycField, terms: dict | None = None):
        self.field = field
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, value: CycScalar) -> "MuScalar":
        return cls(value.field, {(0,) * NMU: value})

    @classmethod
    def var(cls, field: CycField, index: int) -> "MuScalar":
        m = [0] * NMU
        m[index] = 1
        return cls(field, {tuple(m): field.one})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MuScalar):
            return self.terms == other.terms
        if isinstance(other, CycScalar) or isinstance(other, int):
            return self == MuScalar.const(self.field(other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def _coerce(self, other) -> "MuScalar":
        if isinstance(other, MuScalar):
            return other
        return MuScalar.const(self.field(other))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MuScalar(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return MuScalar(self.field, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m)
                p = c1 * c2
                out[m] = p if s is None else s + p
        return MuScalar(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a parameter polynomial")
        out = MuScalar.const(self.field.one)
        for _ in range(n):
            out = out * self
        return out

    def specialize(self, values) -> CycScalar:
        """Substitute mu_i -> values[i] (CycScalars or rationals)."""
        vals = [self.field(v) for v in values]
        total = self.field.zero
        for m, c in self.terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t = t * v ** e
            total = total + t
        return total

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def __repr__(self) -> str:
        return f"MuScalar({format_mu(self)})"

    def __str__(self) -> str:
        return format_mu(self)


MU_NAMES_DEFAULT = ("a1", "a2", "a3", "a21", "a32", "a31", "at32", "at31", "at21")


def format_mu_monomial(m, names=MU_NAMES_DEFAULT) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(f"mu[{name}]")
        elif e:
            parts.append(f"mu[{name}]^{e}")
    return "*".join(parts)


def format_mu(s: MuScalar) -> str:
    if not s.terms:
        return "0"
    out = []
    for m in sorted(s.terms):
        c = s.terms[m]
        mono = format_mu_monomial(m)
        cs = format_cyc(c)
        if not mono:
            out.append(cs)
        elif cs == "1":
            out.append(mono)
        elif cs == "-1":
            out.append("-" + mono)
        else:
            out.append(f"({cs})*{mono}")
    return " + ".join(out).replace("+ -", "- ")


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
