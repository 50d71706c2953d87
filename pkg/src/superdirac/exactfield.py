"""Exact arithmetic in the number field Q(i, sqrt2).

A :class:`Scalar` is ``a + b*i + c*sqrt2 + d*i*sqrt2`` with rational ``a, b, c, d``.
Coordinates are held as :class:`gmpy2.mpq`, which are always in lowest terms
with a positive denominator.

The four basis elements ``1, i, sqrt2, i*sqrt2`` are also addressed by a
two-bit *unit* code (bit 0 = ``i``, bit 1 = ``sqrt2``).  Element storage in
:mod:`superdirac.superspace` keys its coefficients by unit so that the hot
operator paths only ever multiply single rationals.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

from .errors import DivisionByZero

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "I",
    "SQRT2",
    "field_arith",
    "unit_mul",
    "as_scalar",
]

_Q0 = mpq(0)
_Q1 = mpq(1)

# unit_mul(u, v) -> (w, factor): (unit u) * (unit v) = factor * (unit w)
_UNIT_TABLE = {}
for _u in range(4):
    for _v in range(4):
        _f = 1
        if _u & 1 and _v & 1:
            _f = -_f
        if _u & 2 and _v & 2:
            _f *= 2
        _UNIT_TABLE[_u, _v] = (_u ^ _v, _f)


def unit_mul(u: int, v: int) -> tuple[int, int]:
    return _UNIT_TABLE[u, v]


def _q(x) -> mpq:
    if isinstance(x, str):
        return mpq(Fraction(x))
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return mpq(x)


class Scalar:
    """Element of Q(i, sqrt2), immutable and hashable."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        object.__setattr__(self, "a", _q(a))
        object.__setattr__(self, "b", _q(b))
        object.__setattr__(self, "c", _q(c))
        object.__setattr__(self, "d", _q(d))

    @classmethod
    def _raw(cls, a, b, c, d) -> Scalar:
        s = object.__new__(cls)
        object.__setattr__(s, "a", a)
        object.__setattr__(s, "b", b)
        object.__setattr__(s, "c", c)
        object.__setattr__(s, "d", d)
        return s

    @classmethod
    def from_units(cls, parts) -> Scalar:
        """Build from an iterable of ``(unit, rational)`` pairs."""
        co = [_Q0, _Q0, _Q0, _Q0]
        for u, x in parts:
            co[u] += x
        # unit codes: 0 -> 1, 1 -> i, 2 -> sqrt2, 3 -> i*sqrt2
        return cls._raw(co[0], co[1], co[2], co[3])

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- views -------------------------------------------------------------

    def units(self) -> list[tuple[int, mpq]]:
        out = []
        if self.a:
            out.append((0, self.a))
        if self.b:
            out.append((1, self.b))
        if self.c:
            out.append((2, self.c))
        if self.d:
            out.append((3, self.d))
        return out

    def coords(self) -> tuple[mpq, mpq, mpq, mpq]:
        return (self.a, self.b, self.c, self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def conjugate(self) -> Scalar:
        """Complex conjugation i -> -i."""
        return Scalar._raw(self.a, -self.b, self.c, -self.d)

    def to_json(self) -> list[str]:
        return [_fmt(x) for x in self.coords()]

    @classmethod
    def from_json(cls, data) -> Scalar:
        return cls(*[Fraction(x) for x in data])

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = as_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar._raw(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = as_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar._raw(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other):
        o = as_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Scalar._raw(-self.a, -self.b, -self.c, -self.d)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) or type(other) is type(_Q0):
            r = mpq(other)
            return Scalar._raw(self.a * r, self.b * r, self.c * r, self.d * r)
        if not isinstance(other, Scalar):
            return NotImplemented
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        if not (f or g or h):
            return Scalar._raw(a * e, b * e, c * e, d * e)
        if not (b or c or d):
            return Scalar._raw(a * e, a * f, a * g, a * h)
        # i^2 = -1, sqrt2^2 = 2
        return Scalar._raw(
            a * e - b * f + 2 * (c * g - d * h),
            a * f + b * e + 2 * (c * h + d * g),
            a * g + c * e - b * h - d * f,
            a * h + d * e + b * g + c * f,
        )

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if not self:
            raise DivisionByZero("inverse of zero in Q(i, sqrt2)")
        if self.is_rational():
            return Scalar._raw(1 / self.a, _Q0, _Q0, _Q0)
        # self = p + i q with p = a + c r, q = b + d r, r = sqrt2
        a, b, c, d = self.a, self.b, self.c, self.d
        # N = p^2 + q^2 = u + v r
        u = a * a + 2 * c * c + b * b + 2 * d * d
        v = 2 * (a * c + b * d)
        # 1/N = (u - v r) / (u^2 - 2 v^2)
        den = u * u - 2 * v * v
        nu, nv = u / den, -v / den
        # (p - i q) / N
        pa, pc = a, c
        qa, qc = -b, -d
        return Scalar._raw(
            pa * nu + 2 * pc * nv,
            qa * nu + 2 * qc * nv,
            pa * nv + pc * nu,
            qa * nv + qc * nu,
        )

    def __truediv__(self, other):
        o = as_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = as_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison --------------------------------------------------------

    def __bool__(self):
        return bool(self.a or self.b or self.c or self.d)

    def __eq__(self, other):
        o = as_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.c == o.c and self.d == o.d

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(int(self.a.numerator), int(self.a.denominator)))
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self):
        return f"Scalar({_fmt(self.a)!r}, {_fmt(self.b)!r}, {_fmt(self.c)!r}, {_fmt(self.d)!r})"

    def __str__(self):
        parts = []
        for x, sym in zip(self.coords(), ("", "i", "√2", "i√2")):
            if not x:
                continue
            s = _fmt(x)
            if sym:
                if s == "1":
                    s = sym
                elif s == "-1":
                    s = "-" + sym
                else:
                    s = f"({s}){sym}" if "/" in s else s + sym
            parts.append(s)
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out


def _fmt(x: mpq) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, bool):
        return Scalar._raw(mpq(int(x)), _Q0, _Q0, _Q0)
    if isinstance(x, (int, Rational)) or type(x) is type(_Q0):
        return Scalar._raw(mpq(x), _Q0, _Q0, _Q0)
    return NotImplemented


ZERO = Scalar()
ONE = Scalar(1)
I = Scalar(0, 1)
SQRT2 = Scalar(0, 0, 1)


def field_arith(x: Scalar, y: Scalar | None, op: str):
    """Dispatch a named field operation (``add``, ``mul``, ``neg``, ``inv``, ``eq``)."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    if op == "eq":
        return x == y
    raise ValueError(f"unknown field operation {op!r}")
