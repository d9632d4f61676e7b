"""Expression language for algebra elements.

Grammar (``^`` binds tighter than juxtaposition/``*``, which binds tighter
than ``+``/``-``)::

    expr    := term (("+" | "-") term)*
    term    := "-" term | factor (["*"] factor)*
    factor  := primary ["^" ["-"] INT]
    primary := GEN | "g" "[" INT ("," INT)* "]" | "q" | INT ["/" INT]
             | "mu" "[" NAME "]" | "(" expr ")" | "[" expr "," expr "]" "_c"

GEN is one of y1 y2 y3 y21 y32 y31 yt32 yt31 yt21; ``q`` is the primitive
root of unity zeta_M generating the scalar field, so ``q^k`` is zeta_M^k.
``mu[name]`` accepts a root name (a21, at32, ...) or a generator name.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..datum import GENERATOR_NAME, ROOT_INDEX, ROOT_OF_GENERATOR


class ExprSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, expected, found: str):
        self.text, self.pos, self.found = text, pos, found
        self.expected = tuple(sorted(set(expected)))
        msg = f"syntax error at column {pos + 1}: expected {' or '.join(self.expected)}, found {found}"
        super().__init__(msg)

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.pos}^"


class EvalError(ValueError):
    pass


# -- AST --------------------------------------------------------------------


@dataclass(frozen=True)
class Gen:
    root: str


@dataclass(frozen=True)
class Group:
    exps: tuple


@dataclass(frozen=True)
class Q:
    pass


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Mu:
    root: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Comm:
    left: object
    right: object


ATOMS = (Gen, Group, Q, Num, Mu, Comm)

# -- lexer ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<sub>_c)|(?P<op>[-+*^()\[\],/]))")


def tokenize(text: str) -> list:
    """List of (kind, value, pos); kind in int/name/op/sub/end."""
    out = []
    i = 0
    n = len(text)
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            out.append(("end", "", i))
            return out
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise ExprSyntaxError(text, i, ["a token"], repr(text[i]))
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        i = m.end()


def _describe(tok) -> str:
    kind, val, _ = tok
    return "end of input" if kind == "end" else repr(val)


_PRIMARY_START = ["generator", "'g'", "'q'", "integer", "'mu'", "'('", "'['"]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def fail(self, expected):
        raise ExprSyntaxError(self.text, self.tok[2], expected, _describe(self.tok))

    def accept(self, value) -> bool:
        if self.tok[0] in ("op", "sub") and self.tok[1] == value:
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            self.fail([repr(value)])

    def integer(self) -> int:
        if self.tok[0] != "int":
            self.fail(["integer"])
        v = int(self.tok[1])
        self.i += 1
        return v

    def parse(self):
        e = self.expr()
        if self.tok[0] != "end":
            self.fail(["'+'", "'-'", "'*'", "'^'", "end of input"] + _PRIMARY_START)
        return e

    def expr(self):
        left = self.term()
        while True:
            if self.accept("+"):
                left = Add(left, self.term())
            elif self.accept("-"):
                left = Sub(left, self.term())
            else:
                return left

    def term(self):
        if self.accept("-"):
            return Neg(self.term())
        left = self.factor()
        while True:
            if self.accept("*"):
                left = Mul(left, self.factor())
            elif self._starts_primary():
                left = Mul(left, self.factor())
            else:
                return left

    def _starts_primary(self) -> bool:
        kind, val, _ = self.tok
        return kind in ("int", "name") or (kind == "op" and val in ("(", "["))

    def factor(self):
        base = self.primary()
        if self.accept("^"):
            sign = -1 if self.accept("-") else 1
            if self.tok[0] != "int":
                self.fail(["integer", "'-'"])
            return Pow(base, sign * self.integer())
        return base

    def primary(self):
        kind, val, pos = self.tok
        if kind == "int":
            self.i += 1
            num = int(val)
            if self.accept("/"):
                den = self.integer()
                if den == 0:
                    raise ExprSyntaxError(self.text, self.toks[self.i - 1][2], ["nonzero denominator"], "0")
                return Num(Fraction(num, den))
            return Num(Fraction(num))
        if kind == "name":
            self.i += 1
            if val in ROOT_OF_GENERATOR:
                return Gen(ROOT_OF_GENERATOR[val])
            if val == "q":
                return Q()
            if val == "g":
                self.expect("[")
                vals = [self._signed()]
                while self.accept(","):
                    vals.append(self._signed())
                self.expect("]")
                return Group(tuple(vals))
            if val == "mu":
                self.expect("[")
                k, name, p = self.tok
                if k not in ("name", "int"):
                    self.fail(["root name"])
                self.i += 1
                root = ROOT_OF_GENERATOR.get(name, name)
                if root not in ROOT_INDEX:
                    raise ExprSyntaxError(self.text, p, ["root name"], repr(name))
                self.expect("]")
                return Mu(root)
            self.i -= 1
            self.fail(_PRIMARY_START)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        if self.accept("["):
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            self.expect("_c")
            return Comm(a, b)
        self.fail(_PRIMARY_START)

    def _signed(self) -> int:
        sign = -1 if self.accept("-") else 1
        return sign * self.integer()


def parse(text: str):
    return _Parser(text).parse()


# -- printer ----------------------------------------------------------------


def to_text(e) -> str:
    """Canonical rendering; parse(to_text(e)) == e."""
    if isinstance(e, Gen):
        return GENERATOR_NAME[e.root]
    if isinstance(e, Group):
        return "g[" + ",".join(str(x) for x in e.exps) + "]"
    if isinstance(e, Q):
        return "q"
    if isinstance(e, Num):
        v = e.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(e, Mu):
        return f"mu[{e.root}]"
    if isinstance(e, Comm):
        return f"[{to_text(e.left)}, {to_text(e.right)}]_c"
    if isinstance(e, Pow):
        b = to_text(e.base)
        if not isinstance(e.base, ATOMS) or (isinstance(e.base, Num) and e.base.value.denominator != 1):
            b = f"({b})"
        return f"{b}^{e.exp}"
    if isinstance(e, Neg):
        a = to_text(e.arg)
        return f"-({a})" if isinstance(e.arg, (Add, Sub)) else f"-{a}"
    if isinstance(e, Mul):
        left = to_text(e.left)
        if isinstance(e.left, (Add, Sub, Neg)):
            left = f"({left})"
        right = to_text(e.right)
        if isinstance(e.right, (Add, Sub, Neg, Mul)):
            right = f"({right})"
        return f"{left}*{right}"
    if isinstance(e, (Add, Sub)):
        op = " + " if isinstance(e, Add) else " - "
        right = to_text(e.right)
        if isinstance(e.right, (Add, Sub)):
            right = f"({right})"
        return to_text(e.left) + op + right
    raise TypeError(f"not an expression node: {e!r}")


# -- evaluation -------------------------------------------------------------


def _invert(x, what: str):
    """Inverse of a single group-like term c*g."""
    if len(x.terms) != 1:
        raise EvalError(f"negative power of a non-invertible expression: {what}")
    (exps, g, mu), c = next(iter(x.terms.items()))
    if any(exps) or any(mu):
        raise EvalError(f"negative power of a non-invertible expression: {what}")
    rs = x.rs
    return rs.group(rs.G.inv(g)).scale(c.inv())


def evaluate(e, rs):
    """AlgElement of ``rs`` denoted by ``e``."""
    from ..liftings import braided_commutator

    ev = lambda x: evaluate(x, rs)
    if isinstance(e, Gen):
        return rs.gen(e.root)
    if isinstance(e, Group):
        if len(e.exps) != rs.G.rank:
            raise EvalError(f"group element needs {rs.G.rank} entries, got {len(e.exps)}")
        return rs.group(rs.G.element(e.exps))
    if isinstance(e, Q):
        return rs.scalar(rs.field.zeta(1))
    if isinstance(e, Num):
        return rs.scalar(rs.field(e.value))
    if isinstance(e, Mu):
        return rs.mu_var(e.root)
    if isinstance(e, Neg):
        return -ev(e.arg)
    if isinstance(e, Add):
        return ev(e.left) + ev(e.right)
    if isinstance(e, Sub):
        return ev(e.left) - ev(e.right)
    if isinstance(e, Mul):
        return ev(e.left) * ev(e.right)
    if isinstance(e, Pow):
        base = ev(e.base)
        if e.exp >= 0:
            return base ** e.exp
        return _invert(base, to_text(e.base)) ** (-e.exp)
    if isinstance(e, Comm):
        a, b = ev(e.left), ev(e.right)
        try:
            return braided_commutator(a, b)
        except (ValueError, KeyError) as exc:
            raise EvalError(f"commutator needs homogeneous arguments: {exc}") from None
    raise TypeError(f"not an expression node: {e!r}")
