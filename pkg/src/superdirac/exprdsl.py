"""Operator expressions: parser, symbolic normal ordering and evaluation.

Grammar (whitespace is ignored)::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := "-" unary | power
    power   := atom ("^" INT)?
    atom    := INT ("/" INT)? | "M" | "i" | "sqrt2"
             | NAME ("(" INT ("," INT)* ")")?
             | "(" expr ")" | "[" expr "," expr "]"

Generators are ``X(j)``, ``D(j)`` (derivative), ``Dup(j)`` (raised
derivative), ``E(j)`` and ``Ehat(j)`` (Clifford generators).  Named operators
are ``dirac``, ``vector``, ``laplace``, ``r2``, ``euler``, ``id``, ``L(i,j)``,
``B(i,j)``, ``K(i,j)`` and ``Pi(j)``.  ``[a, b]`` is the graded commutator.

The symbolic route expands every name into words in the letters X, D, E and
rewrites them to the order X < D < E; coefficients are polynomials in the
superdimension M.  The evaluation route turns the same tree into
:class:`~superdirac.operators.Operator` objects built by the operators module.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from . import rewrite
from .clifford import bivector, hat
from .errors import IndexOutOfRange, ParseError, UndeclaredParity
from .exactfield import I, ONE, SQRT2, Scalar, as_scalar
from .operators import Operator, compose, equal_on, identity, make_operator, sum_ops
from .superspace import SpaceConfig

# --------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: Fraction  # nonnegative; negation is a Neg node


@dataclass(frozen=True)
class Sym:
    name: str  # "M", "i" or "sqrt2"


@dataclass(frozen=True)
class Gen:
    kind: str  # "X", "D", "Dup", "E", "Ehat"
    index: int


@dataclass(frozen=True)
class Named:
    name: str
    args: tuple[int, ...] = ()


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Sum:
    terms: tuple["Node", ...]


@dataclass(frozen=True)
class Product:
    factors: tuple["Node", ...]


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Bracket:
    left: "Node"
    right: "Node"


Node = Union[Num, Sym, Gen, Named, Neg, Sum, Product, Power, Bracket]

GENERATORS = {"X": 1, "D": 1, "Dup": 1, "E": 1, "Ehat": 1}
NAMED = {"dirac": 0, "vector": 0, "laplace": 0, "r2": 0, "euler": 0, "id": 0, "L": 2, "B": 2, "K": 2, "Pi": 1}
SYMBOLS = ("M", "i", "sqrt2")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        if m.group(1):
            toks.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*^/(),[]":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        found = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"{msg}, found {found}", tok[2], self.text)

    def expect(self, op: str):
        t = self.peek()
        if t[0] != "op" or t[1] != op:
            self.error(f"expected {op!r}")
        return self.take()

    def at(self, op: str) -> bool:
        t = self.peek()
        return t[0] == "op" and t[1] == op

    def parse(self) -> Node:
        node = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected trailing input")
        return node

    def expr(self) -> Node:
        terms = [self.term()]
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            t = self.term()
            terms.append(Neg(t) if op == "-" else t)
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> Node:
        factors = [self.unary()]
        while self.at("*"):
            self.take()
            factors.append(self.unary())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def unary(self) -> Node:
        if self.at("-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.at("^"):
            self.take()
            t = self.peek()
            if t[0] != "int":
                self.error("expected an integer exponent")
            self.take()
            return Power(base, int(t[1]))
        return base

    def atom(self) -> Node:
        t = self.peek()
        if t[0] == "int":
            self.take()
            val = Fraction(int(t[1]))
            if self.at("/"):
                self.take()
                d = self.peek()
                if d[0] != "int":
                    self.error("expected an integer denominator")
                self.take()
                if int(d[1]) == 0:
                    raise ParseError("zero denominator", d[2], self.text)
                val = val / int(d[1])
            return Num(val)
        if t[0] == "name":
            self.take()
            name = t[1]
            if name in SYMBOLS:
                return Sym(name)
            arity = GENERATORS.get(name, NAMED.get(name))
            if arity is None:
                raise ParseError(f"unknown name {name!r}", t[2], self.text)
            args: list[int] = []
            if arity:
                self.expect("(")
                while True:
                    a = self.peek()
                    if a[0] != "int":
                        self.error("expected an index")
                    self.take()
                    args.append(int(a[1]))
                    if self.at(","):
                        self.take()
                        continue
                    break
                self.expect(")")
                if len(args) != arity:
                    raise ParseError(f"{name} takes {arity} index argument(s), got {len(args)}", t[2], self.text)
            if name in GENERATORS:
                return Gen(name, args[0])
            return Named(name, tuple(args))
        if self.at("("):
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if self.at("["):
            self.take()
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            return Bracket(a, b)
        self.error("expected an operand")


def parse(text: str) -> Node:
    """Parse an operator expression; raises ParseError (a SyntaxError) with a position."""
    return _Parser(text).parse()


def to_text(node: Node) -> str:
    """Print an AST so that ``parse(to_text(a)) == a``."""
    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Gen):
        return f"{node.kind}({node.index})"
    if isinstance(node, Named):
        return node.name + (f"({','.join(map(str, node.args))})" if node.args else "")
    if isinstance(node, Neg):
        inner = node.arg
        s = to_text(inner)
        return f"-({s})" if isinstance(inner, (Sum, Product)) else f"-{s}"
    if isinstance(node, Sum):
        parts = []
        for idx, t in enumerate(node.terms):
            s = f"({to_text(t)})" if isinstance(t, Sum) else to_text(t)
            if idx == 0:
                parts.append(s)
            elif isinstance(t, Neg):
                inner = t.arg
                parts.append(" - " + (f"({to_text(inner)})" if isinstance(inner, Sum) else to_text(inner)))
            else:
                parts.append(" + " + s)
        return "".join(parts)
    if isinstance(node, Product):
        return "*".join(f"({to_text(f)})" if isinstance(f, (Sum, Product, Neg)) else to_text(f) for f in node.factors)
    if isinstance(node, Power):
        b = node.base
        s = to_text(b)
        if isinstance(b, (Sum, Product, Neg, Power)):
            s = f"({s})"
        return f"{s}^{node.exponent}"
    if isinstance(node, Bracket):
        return f"[{to_text(node.left)}, {to_text(node.right)}]"
    raise TypeError(f"not an expression node: {node!r}")


def count_summands(node: Node) -> int:
    return len(node.terms) if isinstance(node, Sum) else 1


# --------------------------------------------------------------------------
# Parities (the declared gradings of the operators module)


def _check_indices(cfg: SpaceConfig, node: Node) -> None:
    idx = (node.index,) if isinstance(node, Gen) else node.args
    for j in idx:
        if not 1 <= j <= cfg.dim:
            raise IndexOutOfRange(f"index {j} outside 1..{cfg.dim} in {to_text(node)}")


def parity(cfg: SpaceConfig, node: Node) -> int | None:
    """Declared parity of an expression; None when it mixes parities."""
    if isinstance(node, (Num, Sym)):
        return 0
    if isinstance(node, Gen):
        _check_indices(cfg, node)
        return cfg.grade(node.index)
    if isinstance(node, Named):
        _check_indices(cfg, node)
        if node.name in ("dirac", "vector"):
            return 1
        if node.name in ("laplace", "r2", "euler", "id"):
            return 0
        return sum(cfg.grade(j) for j in node.args) & 1
    if isinstance(node, Neg):
        return parity(cfg, node.arg)
    if isinstance(node, Sum):
        ps = {parity(cfg, t) for t in node.terms}
        return ps.pop() if len(ps) == 1 else None
    if isinstance(node, (Product, Bracket)):
        parts = node.factors if isinstance(node, Product) else (node.left, node.right)
        ps = [parity(cfg, f) for f in parts]
        return None if None in ps else sum(ps) & 1
    if isinstance(node, Power):
        p = parity(cfg, node.base)
        return None if p is None else (p * node.exponent) & 1
    raise TypeError(node)


def _bracket_sign(cfg: SpaceConfig, node: Bracket) -> int:
    pa, pb = parity(cfg, node.left), parity(cfg, node.right)
    if pa is None or pb is None:
        raise UndeclaredParity(f"bracket of an expression without a definite parity: {to_text(node)}")
    return -1 if pa and pb else 1


# --------------------------------------------------------------------------
# Coefficients: polynomials in the symbol M


class MPoly:
    """Polynomial in M with coefficients in Q(i, sqrt2), stored as {power: Scalar}."""

    __slots__ = ("c",)

    def __init__(self, c: dict[int, Scalar] | None = None):
        self.c = {p: v for p, v in (c or {}).items() if v}

    @classmethod
    def const(cls, x) -> MPoly:
        return cls({0: as_scalar(x)})

    @classmethod
    def symbol(cls) -> MPoly:
        return cls({1: ONE})

    def __bool__(self):
        return bool(self.c)

    def __add__(self, other) -> MPoly:
        other = _mpoly(other)
        out = dict(self.c)
        for p, v in other.c.items():
            out[p] = out.get(p, Scalar()) + v
        return MPoly(out)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return MPoly({p: -v for p, v in self.c.items()})

    def __sub__(self, other) -> MPoly:
        return self + (-_mpoly(other))

    def __mul__(self, other) -> MPoly:
        other = _mpoly(other)
        out: dict[int, Scalar] = {}
        for p, v in self.c.items():
            for q, w in other.c.items():
                out[p + q] = out.get(p + q, Scalar()) + v * w
        return MPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return self.c == _mpoly(other).c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def at(self, M: int) -> Scalar:
        out = Scalar()
        for p, v in self.c.items():
            out = out + v * (Scalar(M) ** p)
        return out

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for p in sorted(self.c, reverse=True):
            v = self.c[p]
            mono = "" if p == 0 else ("M" if p == 1 else f"M^{p}")
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v}*{mono}" if v.is_rational() else f"({v})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self):
        return {str(p): v.to_json() for p, v in sorted(self.c.items())}


def _mpoly(x) -> MPoly:
    return x if isinstance(x, MPoly) else MPoly.const(x)


# --------------------------------------------------------------------------
# Symbolic normal ordering

_RANK = {"X": 0, "D": 1, "E": 2}


def _letter_rule(cfg: SpaceConfig):
    gr, g = cfg.grade, cfg.g

    def sign(a, b):
        return -1 if gr(a) and gr(b) else 1

    def rule(a, b):
        (ka, ja), (kb, jb) = a, b
        ra, rb = _RANK[ka], _RANK[kb]
        if ra < rb:
            return None
        if ka == kb and ka in ("X", "D"):
            if ja < jb:
                return None
            if ja == jb:
                return [] if gr(ja) else None
            return [(sign(ja, jb), ((kb, jb), (ka, ja)))]
        if ka == "D" and kb == "X":
            out = [(sign(ja, jb), (b, a))]
            if ja == jb:
                out.append((1, ()))
            return out
        if ka == "E" and kb in ("X", "D"):
            return [(sign(ja, jb), (b, a))]
        # two Clifford generators
        if ja < jb:
            return None
        if ja == jb:
            return None if gr(ja) else [(-1, ())]
        out = [(-sign(ja, jb), (b, a))]
        if g(jb, ja):
            out.append((-2 * g(jb, ja), ()))
        return out

    return rule


Poly = dict  # {word (tuple of letters): MPoly}


def _padd(a: Poly, b: Poly, s=1) -> Poly:
    out = dict(a)
    for w, c in b.items():
        out[w] = out.get(w, MPoly()) + (c if s == 1 else c * s)
    return {w: c for w, c in out.items() if c}


def _pmul(a: Poly, b: Poly) -> Poly:
    out: dict = {}
    for w, c in a.items():
        for v, e in b.items():
            key = w + v
            out[key] = out.get(key, MPoly()) + c * e
    return {w: c for w, c in out.items() if c}


def _pscale(a: Poly, c) -> Poly:
    c = _mpoly(c)
    return {w: v * c for w, v in a.items() if v * c}


def _word(*letters, coef=1) -> Poly:
    return {tuple(letters): _mpoly(coef)}


class _Expander:
    """AST to word polynomials, normal-ordering after each product."""

    def __init__(self, cfg: SpaceConfig, strategy: str = "leftmost", rng=None):
        self.cfg = cfg
        self.rule = _letter_rule(cfg)
        self.strategy = strategy
        self.rng = rng

    def nf(self, p: Poly) -> Poly:
        return rewrite.normal_form(p, self.rule, self.strategy, self.rng)

    def dup(self, j: int) -> Poly:
        out: Poly = {}
        for k, c in self.cfg.raised(j):
            out = _padd(out, _word(("D", k), coef=c))
        return out

    def ehat(self, j: int) -> Poly:
        return {(("E", k),): _mpoly(c) for (k,), c in hat(self.cfg, j).terms.items()}

    def metric_sum(self, kind: str) -> Poly:
        N = self.cfg.dim
        out: Poly = {}
        for j in range(1, N + 1):
            for k in range(1, N + 1):
                gjk = self.cfg.g(j, k)
                if gjk:
                    out = _padd(out, _word((kind, j), (kind, k), coef=gjk))
        return out

    def named(self, node: Named) -> Poly:
        cfg, N = self.cfg, self.cfg.dim
        name, args = node.name, node.args
        if name == "id":
            return _word()
        if name == "dirac":
            out: Poly = {}
            for k in range(1, N + 1):
                out = _padd(out, _pmul(self.ehat(k), _word(("D", k))))
            return self.nf(out)
        if name == "vector":
            out = {}
            for j in range(1, N + 1):
                out = _padd(out, _word(("X", j), ("E", j)))
            return out
        if name == "laplace":
            return self.nf(self.metric_sum("D"))
        if name == "r2":
            return self.nf(self.metric_sum("X"))
        if name == "euler":
            out = {}
            for j in range(1, N + 1):
                out = _padd(out, _word(("X", j), ("D", j)))
            return out
        if name == "L":
            i, j = args
            s = -1 if cfg.grade(i) and cfg.grade(j) else 1
            a = _pmul(_word(("X", i)), self.dup(j))
            b = _pmul(_word(("X", j)), self.dup(i))
            return self.nf(_padd(a, b, -s))
        if name == "B":
            i, j = args
            return {tuple(("E", k) for k in w): _mpoly(c) for w, c in bivector(cfg, i, j).terms.items()}
        if name == "K":
            return _padd(self.named(Named("L", args)), self.named(Named("B", args)))
        if name == "Pi":
            (j,) = args
            t1 = _pmul(self.named(Named("vector")), self.ehat(j))
            inner = _padd(_pscale(_word(), MPoly.symbol()), _pscale(self.named(Named("euler")), 2))
            t2 = _pmul(_word(("X", j)), inner)
            t3 = _pmul(self.named(Named("r2")), self.dup(j))
            return self.nf(_padd(_padd(t1, t2), t3, -1))
        raise ValueError(f"unknown operator {name!r}")

    def expand(self, node: Node) -> Poly:
        if isinstance(node, Num):
            return _word(coef=Scalar(node.value)) if node.value else {}
        if isinstance(node, Sym):
            if node.name == "M":
                return {(): MPoly.symbol()}
            return _word(coef=I if node.name == "i" else SQRT2)
        if isinstance(node, Gen):
            _check_indices(self.cfg, node)
            if node.kind in ("X", "D", "E"):
                return _word((node.kind, node.index))
            if node.kind == "Dup":
                return self.dup(node.index)
            return self.ehat(node.index)
        if isinstance(node, Named):
            _check_indices(self.cfg, node)
            return self.named(node)
        if isinstance(node, Neg):
            return _pscale(self.expand(node.arg), -1)
        if isinstance(node, Sum):
            out: Poly = {}
            for t in node.terms:
                out = _padd(out, self.expand(t))
            return out
        if isinstance(node, Product):
            out = self.expand(node.factors[0])
            for f in node.factors[1:]:
                out = self.nf(_pmul(out, self.expand(f)))
            return self.nf(out)
        if isinstance(node, Power):
            out = _word()
            base = self.expand(node.base)
            for _ in range(node.exponent):
                out = self.nf(_pmul(out, base))
            return out
        if isinstance(node, Bracket):
            s = _bracket_sign(self.cfg, node)
            a, b = self.expand(node.left), self.expand(node.right)
            return self.nf(_padd(_pmul(a, b), _pmul(b, a), -s))
        raise TypeError(node)


class NormalWord(NamedTuple):
    """One normally ordered word X-part · D-part · Clifford part, with its coefficient."""

    x: tuple[int, ...]
    d: tuple[int, ...]
    e: tuple[int, ...]
    coefficient: MPoly

    def word_text(self) -> str:
        parts = [f"X({j})" for j in self.x] + [f"D({j})" for j in self.d] + [f"E({j})" for j in self.e]
        return "*".join(parts) if parts else "1"

    def to_json(self):
        return {"x": list(self.x), "d": list(self.d), "e": list(self.e), "coefficient": self.coefficient.to_json()}


def _split(word) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(j for k, j in word if k == kind) for kind in ("X", "D", "E"))


def _word_key(word):
    return (len(word), [(_RANK[k], j) for k, j in word])


class NormalForm:
    """A canonical linear combination of normal words."""

    def __init__(self, cfg: SpaceConfig, terms: Poly):
        self.cfg = cfg
        self.terms = {w: c for w, c in terms.items() if c}

    def words(self) -> list[NormalWord]:
        return [NormalWord(*_split(w), self.terms[w]) for w in sorted(self.terms, key=_word_key)]

    def substituted(self) -> dict:
        """Coefficients with M replaced by m - 2n."""
        out = {w: c.at(self.cfg.M) for w, c in self.terms.items()}
        return {w: c for w, c in out.items() if c}

    def is_zero(self) -> bool:
        return not self.substituted()

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self.substituted() == other.substituted()

    def __sub__(self, other: NormalForm) -> NormalForm:
        return NormalForm(self.cfg, _padd(self.terms, other.terms, -1))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for nw in self.words():
            c = str(nw.coefficient)
            w = nw.word_text()
            if w == "1":
                parts.append(c)
            elif c in ("1", "-1"):
                parts.append(w if c == "1" else "-" + w)
            else:
                parts.append(f"({c})*{w}" if " " in c else f"{c}*{w}")
        return _join(parts)

    def to_json(self):
        return [nw.to_json() for nw in self.words()]


def normal_order(cfg: SpaceConfig, expr, strategy: str = "leftmost", rng: random.Random | None = None) -> NormalForm:
    """Canonical form of an expression in the letters X < D < E."""
    node = parse(expr) if isinstance(expr, str) else expr
    ex = _Expander(cfg, strategy, rng)
    return NormalForm(cfg, ex.nf(ex.expand(node)))


# --------------------------------------------------------------------------
# Evaluation as operators


def evaluate(cfg: SpaceConfig, expr) -> Operator:
    """Build the Operator for an expression from the operators module's named operators."""
    node = parse(expr) if isinstance(expr, str) else expr
    return _eval(cfg, node)


def _scalar_operator(cfg: SpaceConfig, c: Scalar) -> Operator:
    return identity(cfg).scale(c).regraded(0)


def _eval(cfg: SpaceConfig, node: Node) -> Operator:
    if isinstance(node, Num):
        return _scalar_operator(cfg, Scalar(node.value))
    if isinstance(node, Sym):
        return _scalar_operator(cfg, {"M": Scalar(cfg.M), "i": I, "sqrt2": SQRT2}[node.name])
    if isinstance(node, Gen):
        _check_indices(cfg, node)
        spec = {"X": "mul", "D": "partial", "Dup": "partial_up", "E": "E", "Ehat": "Ehat"}[node.kind]
        return make_operator(cfg, (spec, node.index))
    if isinstance(node, Named):
        _check_indices(cfg, node)
        if node.name == "id":
            return identity(cfg)
        op = make_operator(cfg, (node.name, *node.args) if node.args else node.name)
        return op.regraded(parity(cfg, node))
    if isinstance(node, Neg):
        return -_eval(cfg, node.arg)
    if isinstance(node, Sum):
        return sum_ops([_eval(cfg, t) for t in node.terms], to_text(node), parity(cfg, node))
    if isinstance(node, Product):
        out = _eval(cfg, node.factors[0])
        for f in node.factors[1:]:
            out = compose(out, _eval(cfg, f))
        return out
    if isinstance(node, Power):
        out = identity(cfg)
        base = _eval(cfg, node.base)
        for _ in range(node.exponent):
            out = compose(out, base)
        return out
    if isinstance(node, Bracket):
        s = _bracket_sign(cfg, node)
        a, b = _eval(cfg, node.left), _eval(cfg, node.right)
        return (compose(a, b) - compose(b, a).scale(s)).regraded(parity(cfg, node))
    raise TypeError(node)


# --------------------------------------------------------------------------
# Two-route identity checks


@dataclass
class IdentityResult:
    lhs: str
    rhs: str
    symbolic_equal: bool
    evaluated_equal: bool
    checked: int
    residual: NormalForm
    witness: dict | None

    @property
    def agree(self) -> bool:
        return self.symbolic_equal == self.evaluated_equal

    @property
    def passed(self) -> bool:
        return self.symbolic_equal and self.evaluated_equal

    @property
    def status(self) -> str:
        if not self.agree:
            return "engine-disagreement"
        return "pass" if self.passed else "fail"

    def to_json(self):
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "status": self.status,
            "symbolic_equal": self.symbolic_equal,
            "evaluated_equal": self.evaluated_equal,
            "checked": self.checked,
            "residual": str(self.residual),
            "witness": self.witness,
        }


def verify_identity(cfg: SpaceConfig, lhs, rhs, k_max: int = 3, Q_max: int = 2) -> IdentityResult:
    """Check lhs == rhs both by normal ordering and by exact evaluation on blocks."""
    a = parse(lhs) if isinstance(lhs, str) else lhs
    b = parse(rhs) if isinstance(rhs, str) else rhs
    diff = normal_order(cfg, a) - normal_order(cfg, b)
    res = equal_on(_eval(cfg, a), _eval(cfg, b), k_max, Q_max)
    return IdentityResult(to_text(a), to_text(b), diff.is_zero(), res.equal, res.checked, diff, None if res.equal else res.to_json())


def parse_equation(text: str) -> tuple[Node, Node]:
    """Split ``"a == b"`` and parse both sides."""
    if text.count("==") != 1:
        raise ParseError("expected exactly one '=='", text.find("==") if "==" in text else len(text), text)
    left, right = text.split("==")
    try:
        a = parse(left)
    except ParseError as exc:
        raise ParseError(exc.message, exc.position, text) from None
    try:
        b = parse(right)
    except ParseError as exc:
        raise ParseError(exc.message, exc.position + len(left) + 2, text) from None
    return a, b


def golden_corpus(cfg: SpaceConfig, sample: int = 12, seed: int = 0) -> list[tuple[str, str, str]]:
    """Named identities (name, lhs, rhs) for the configuration."""
    out = [
        ("Dirac squares to minus Laplace", "dirac*dirac", "-laplace"),
        ("vector variable squares to minus R^2", "vector*vector", "-r2"),
        ("Dirac-vector anticommutator", "[dirac, vector]", "-2*euler - M"),
        ("Dirac-vector sum", "dirac*vector + vector*dirac", "-2*euler - M"),
        ("vector with its square", "[vector, vector*vector]", "0"),
        ("Dirac with vector square", "[dirac, vector*vector]", "-2*vector"),
        ("vector with Laplace", "[vector, laplace]", "-2*dirac"),
        ("Dirac with Laplace", "[dirac, laplace]", "0"),
        ("vector with shifted Euler", "[vector, euler + 1/2*M]", "-vector"),
        ("Dirac with shifted Euler", "[dirac, euler + 1/2*M]", "dirac"),
    ]
    N = cfg.dim
    gr, g = cfg.grade, cfg.g
    rng = random.Random(seed)
    for j in range(1, N + 1):
        out.append((f"conformal symmetry Pi_{j}", f"dirac*Pi({j})", f"(Pi({j}) + 2*X({j}))*dirac"))
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            for k in range(1, N + 1):
                rhs = []
                if g(k, j):
                    rhs.append(f"{g(k, j)}*Ehat({i})")
                if g(k, i):
                    rhs.append(f"{-(-1 if gr(i) and gr(j) else 1) * g(k, i)}*Ehat({j})")
                out.append((f"bivector action B({i},{j}) on Ehat({k})", f"[B({i},{j}), Ehat({k})]", _join(rhs)))
    quads = [(i, j, k, l) for i in range(1, N + 1) for j in range(1, N + 1) for k in range(1, N + 1) for l in range(1, N + 1)]
    for i, j, k, l in rng.sample(quads, min(sample, len(quads))):
        sg = lambda b: -1 if b & 1 else 1  # noqa: E731
        rhs = []
        if g(k, j):
            rhs.append(f"{g(k, j)}*K({i},{l})")
        if g(l, i):
            rhs.append(f"{sg(gr(i) * (gr(j) + gr(k))) * g(l, i)}*K({j},{k})")
        if g(l, j):
            rhs.append(f"{-sg(gr(k) * gr(l)) * g(l, j)}*K({i},{k})")
        if g(k, i):
            rhs.append(f"{-sg(gr(i) * gr(j)) * g(k, i)}*K({j},{l})")
        out.append((f"brackets of K({i},{j}) and K({k},{l})", f"[K({i},{j}), K({k},{l})]", _join(rhs)))
    for j in range(1, N + 1):
        out.append((f"Dirac commutes with K(1,{j})", f"dirac*K(1,{j})", f"K(1,{j})*dirac"))
    return out


def _join(parts: list[str]) -> str:
    if not parts:
        return "0"
    s = parts[0]
    for p in parts[1:]:
        s += " - " + p[1:] if p.startswith("-") else " + " + p
    return s
