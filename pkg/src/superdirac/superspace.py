"""Graded polynomials on R^(m|2n), the spinor basis, and vectors in P ⊗ S.

Indices are 1-based throughout the public API: ``1..m`` are the commuting
coordinates ``x_1..x_m`` and ``m+1..m+2n`` are the anticommuting coordinates
``x`_1..x`_2n``.

Fermionic exponents and θ-exponents are bitmasks, bit ``a`` (0-based) standing
for variable ``a+1``.  A monomial is always read in canonical order: bosonic
factors first, then fermionic factors in increasing index.  The same holds in
the spinor algebra: θ-factors in increasing index, then t-powers.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, NamedTuple

from .errors import IndexOutOfRange
from .exactfield import Scalar, as_scalar, unit_mul

__all__ = [
    "SpaceConfig",
    "PolyMonomial",
    "SpinorMonomial",
    "Element",
    "multiply",
    "partial",
    "partial_up",
    "variable",
    "poly_basis",
    "poly_basis_upto",
    "spinor_basis",
    "block_basis",
    "dim_poly",
    "dim_spinor",
    "basis_csv",
]


@dataclass(frozen=True)
class SpaceConfig:
    """Superspace R^(m|2n) with its orthosymplectic metric."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("m and n must be non-negative")

    @property
    def d(self) -> int:
        return self.m // 2

    @property
    def M(self) -> int:
        return self.m - 2 * self.n

    @property
    def dim(self) -> int:
        """Number of coordinates, m + 2n."""
        return self.m + 2 * self.n

    @property
    def odd_m(self) -> bool:
        return self.m % 2 == 1

    def check(self, j: int) -> int:
        if not 1 <= j <= self.dim:
            raise IndexOutOfRange(f"index {j} outside 1..{self.dim}")
        return j

    def grade(self, j: int) -> int:
        """Index grading: 0 for a commuting coordinate, 1 for an anticommuting one."""
        return 0 if j <= self.m else 1

    @cached_property
    def metric(self) -> tuple[tuple[int, ...], ...]:
        N, m, n = self.dim, self.m, self.n
        rows = [[0] * N for _ in range(N)]
        for i in range(m):
            rows[i][i] = 1
        for a in range(n):
            rows[m + a][m + n + a] = 1
            rows[m + n + a][m + a] = -1
        return tuple(tuple(r) for r in rows)

    def g(self, i: int, j: int) -> int:
        return self.metric[i - 1][j - 1]

    def raised(self, j: int) -> list[tuple[int, int]]:
        """Nonzero ``(k, g_kj)`` pairs, so that index j raised is Σ g_kj · (index k)."""
        return [(k, self.g(k, j)) for k in range(1, self.dim + 1) if self.g(k, j)]

    def name(self, j: int) -> str:
        return f"x{j}" if j <= self.m else f"x`{j - self.m}"


class PolyMonomial(NamedTuple):
    """``x^bos · x`^fer`` in canonical order."""

    bos: tuple[int, ...]
    fer: int

    @property
    def parity(self) -> int:
        return self.fer.bit_count() & 1

    @property
    def degree(self) -> int:
        return sum(self.bos) + self.fer.bit_count()

    def fer_indices(self) -> list[int]:
        """0-based positions of the fermionic factors."""
        f, out, a = self.fer, [], 0
        while f:
            if f & 1:
                out.append(a)
            f >>= 1
            a += 1
        return out

    def to_str(self) -> str:
        parts = []
        for i, e in enumerate(self.bos):
            if e == 1:
                parts.append(f"x{i + 1}")
            elif e > 1:
                parts.append(f"x{i + 1}^{e}")
        parts.extend(f"x`{a + 1}" for a in self.fer_indices())
        return "*".join(parts) if parts else "1"

    def to_json(self):
        return {"bos": list(self.bos), "fer": [a + 1 for a in self.fer_indices()]}


class SpinorMonomial(NamedTuple):
    """``θ^theta · t^t`` in canonical order."""

    theta: int
    t: tuple[int, ...]

    @property
    def parity(self) -> int:
        return sum(self.t) & 1

    @property
    def lam_degree(self) -> int:
        return self.theta.bit_count() + sum(self.t)

    @property
    def t_degree(self) -> int:
        return sum(self.t)

    def to_str(self) -> str:
        parts = []
        th, a = self.theta, 0
        while th:
            if th & 1:
                parts.append(f"θ{a + 1}")
            th >>= 1
            a += 1
        for i, e in enumerate(self.t):
            if e == 1:
                parts.append(f"t{i + 1}")
            elif e > 1:
                parts.append(f"t{i + 1}^{e}")
        return "*".join(parts) if parts else "1"

    def to_json(self):
        th = [a + 1 for a in range(self.theta.bit_length()) if (self.theta >> a) & 1]
        return {"theta": th, "t": list(self.t)}


def _poly_key(p: PolyMonomial):
    # grlex: total degree, then more bosonic weight first, then bosonic lex, then fermionic lex
    return (p.degree, -sum(p.bos), tuple(-e for e in p.bos), _bits_desc(p.fer, 64))


def _spin_key(s: SpinorMonomial):
    return (sum(s.t), tuple(-e for e in s.t), s.theta.bit_count(), _bits_desc(s.theta, 64))


def _bits_desc(mask: int, width: int) -> tuple[int, ...]:
    return tuple(-((mask >> a) & 1) for a in range(min(width, mask.bit_length())))


def term_key(term) -> tuple:
    """Sort key on ``(PolyMonomial, SpinorMonomial)`` pairs."""
    return (_poly_key(term[0]), _spin_key(term[1]))


# --------------------------------------------------------------------------
# Koszul sign arithmetic on monomials


def fer_mul_sign(a: int, b: int) -> int:
    """Sign of x`^a · x`^b moved into canonical order; 0 if they overlap."""
    if a & b:
        return 0
    swaps = 0
    while b:
        low = b & -b
        # factors of a sitting above this factor of b must be passed
        swaps += (a & ~((low << 1) - 1)).bit_count()
        b ^= low
    return -1 if swaps & 1 else 1


def poly_mul(p: PolyMonomial, q: PolyMonomial) -> tuple[int, PolyMonomial | None]:
    s = fer_mul_sign(p.fer, q.fer)
    if not s:
        return 0, None
    return s, PolyMonomial(tuple(x + y for x, y in zip(p.bos, q.bos)), p.fer | q.fer)


def poly_partial(cfg: SpaceConfig, j: int, p: PolyMonomial) -> tuple[int, PolyMonomial | None]:
    """Left derivative of a monomial; returns ``(coefficient, monomial)``."""
    if j <= cfg.m:
        e = p.bos[j - 1]
        if not e:
            return 0, None
        bos = p.bos[: j - 1] + (e - 1,) + p.bos[j:]
        return e, PolyMonomial(bos, p.fer)
    bit = 1 << (j - cfg.m - 1)
    if not p.fer & bit:
        return 0, None
    below = (p.fer & (bit - 1)).bit_count()
    return (-1 if below & 1 else 1), PolyMonomial(p.bos, p.fer ^ bit)


def poly_var(cfg: SpaceConfig, j: int) -> PolyMonomial:
    cfg.check(j)
    if j <= cfg.m:
        bos = [0] * cfg.m
        bos[j - 1] = 1
        return PolyMonomial(tuple(bos), 0)
    return PolyMonomial((0,) * cfg.m, 1 << (j - cfg.m - 1))


def poly_one(cfg: SpaceConfig) -> PolyMonomial:
    return PolyMonomial((0,) * cfg.m, 0)


def spin_one(cfg: SpaceConfig) -> SpinorMonomial:
    return SpinorMonomial(0, (0,) * cfg.n)


# --------------------------------------------------------------------------
# Elements of P ⊗ S


def _accumulate(out: dict, key, val) -> None:
    v = out.get(key)
    if v is None:
        out[key] = val
    else:
        v = v + val
        if v:
            out[key] = v
        else:
            del out[key]


class Element:
    """Finitely supported vector in P ⊗ S with exact coefficients.

    Storage is a dict keyed by ``(PolyMonomial, SpinorMonomial, unit)`` with
    rational values; see :mod:`superdirac.exactfield` for unit codes.
    """

    __slots__ = ("_t", "parity")

    def __init__(self, terms=None, parity: int | None = None):
        raw: dict = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for (pm, sm), c in items:
                for u, x in as_scalar(c).units():
                    _accumulate(raw, (pm, sm, u), x)
        self._t = raw
        self.parity = parity
        if parity is not None:
            self._check_parity(parity)

    @classmethod
    def _wrap(cls, raw: dict, parity: int | None = None) -> Element:
        e = object.__new__(cls)
        e._t = raw
        e.parity = parity
        return e

    @classmethod
    def basis(cls, pm: PolyMonomial, sm: SpinorMonomial, coef=1) -> Element:
        return cls({(pm, sm): coef})

    def _check_parity(self, p: int) -> None:
        for pm, sm, _ in self._t:
            if (pm.parity + sm.parity) & 1 != p & 1:
                raise ValueError("term parity differs from declared parity")

    # -- views -------------------------------------------------------------

    @property
    def raw(self) -> dict:
        return self._t

    def terms(self) -> dict[tuple[PolyMonomial, SpinorMonomial], Scalar]:
        grouped: dict = {}
        for (pm, sm, u), x in self._t.items():
            grouped.setdefault((pm, sm), []).append((u, x))
        return {k: Scalar.from_units(v) for k, v in grouped.items()}

    def support(self) -> list[tuple[PolyMonomial, SpinorMonomial]]:
        return sorted({(pm, sm) for pm, sm, _ in self._t}, key=term_key)

    def coefficient(self, pm: PolyMonomial, sm: SpinorMonomial) -> Scalar:
        return Scalar.from_units((u, x) for (p, s, u), x in self._t.items() if p == pm and s == sm)

    def homogeneous_parity(self) -> int | None:
        ps = {(pm.parity + sm.parity) & 1 for pm, sm, _ in self._t}
        return ps.pop() if len(ps) == 1 else None

    def poly_degrees(self) -> set[int]:
        return {pm.degree for pm, _, _ in self._t}

    # -- arithmetic --------------------------------------------------------

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len({(pm, sm) for pm, sm, _ in self._t})

    def __add__(self, other: Element) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        out = dict(self._t)
        for k, v in other._t.items():
            _accumulate(out, k, v)
        return Element._wrap(out, self.parity if self.parity == other.parity else None)

    def __sub__(self, other: Element) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> Element:
        return Element._wrap({k: -v for k, v in self._t.items()}, self.parity)

    def scale(self, c) -> Element:
        c = as_scalar(c)
        out: dict = {}
        cu = c.units()
        for (pm, sm, u), x in self._t.items():
            for v, y in cu:
                w, f = unit_mul(u, v)
                _accumulate(out, (pm, sm, w), x * y * f)
        return Element._wrap(out, self.parity)

    def __mul__(self, c):
        if isinstance(c, Element):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    # -- presentation ------------------------------------------------------

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for (pm, sm), c in sorted(self.terms().items(), key=lambda kv: term_key(kv[0])):
            parts.append(f"({c})·{pm.to_str()}⊗{sm.to_str()}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Element({self})"

    def to_json(self):
        return [
            {"poly": pm.to_json(), "spin": sm.to_json(), "coef": c.to_json()}
            for (pm, sm), c in sorted(self.terms().items(), key=lambda kv: term_key(kv[0]))
        ]


def variable(cfg: SpaceConfig, j: int) -> Element:
    """The coordinate X_j as an element X_j ⊗ 1."""
    return Element.basis(poly_var(cfg, j), spin_one(cfg))


def one(cfg: SpaceConfig) -> Element:
    return Element.basis(poly_one(cfg), spin_one(cfg))


def multiply(f: Element, g: Element) -> Element:
    """Supercommutative product of a pure polynomial f with g ∈ P ⊗ S."""
    out: dict = {}
    for (fp, fs, fu), fx in f._t.items():
        if fs.theta or any(fs.t):
            raise ValueError("left factor must be a pure polynomial")
        for (gp, gs, gu), gx in g._t.items():
            s, p = poly_mul(fp, gp)
            if not s:
                continue
            w, k = unit_mul(fu, gu)
            _accumulate(out, (p, gs, w), fx * gx * (s * k))
    return Element._wrap(out)


def partial(cfg: SpaceConfig, j: int, f: Element) -> Element:
    """Left partial derivative with respect to X_j."""
    cfg.check(j)
    out: dict = {}
    for (pm, sm, u), x in f._t.items():
        c, p = poly_partial(cfg, j, pm)
        if c:
            _accumulate(out, (p, sm, u), x * c)
    return Element._wrap(out)


def partial_up(cfg: SpaceConfig, j: int, f: Element) -> Element:
    """Derivative with raised index, Σ_k g_kj ∂_{X_k}."""
    cfg.check(j)
    out = Element()
    for k, gk in cfg.raised(j):
        out = out + partial(cfg, k, f).scale(gk)
    return out


# --------------------------------------------------------------------------
# Enumeration


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def poly_basis(cfg: SpaceConfig, k: int) -> tuple[PolyMonomial, ...]:
    """Monomials of total degree k, graded-lex ordered."""
    if k < 0:
        return ()
    out = []
    nf = 2 * cfg.n
    for j in range(min(k, nf) + 1):
        for bos in _compositions(k - j, cfg.m):
            for sub in combinations(range(nf), j):
                out.append(PolyMonomial(bos, sum(1 << a for a in sub)))
    out.sort(key=_poly_key)
    return tuple(out)


def poly_basis_upto(cfg: SpaceConfig, k: int) -> tuple[PolyMonomial, ...]:
    return tuple(p for j in range(k + 1) for p in poly_basis(cfg, j))


@lru_cache(maxsize=None)
def spinor_basis(cfg: SpaceConfig, Q: int, chirality: str = "all") -> tuple[SpinorMonomial, ...]:
    """Spinor monomials with t-degree at most Q.

    ``chirality`` selects the even (``"+"``) or odd (``"-"``) Λ-degree part.
    """
    if chirality not in ("all", "+", "-"):
        raise ValueError(f"unknown chirality {chirality!r}")
    out = []
    for q in range(Q + 1):
        for t in _compositions(q, cfg.n):
            for th in range(1 << cfg.d):
                s = SpinorMonomial(th, t)
                if chirality == "+" and s.lam_degree % 2:
                    continue
                if chirality == "-" and s.lam_degree % 2 == 0:
                    continue
                out.append(s)
    out.sort(key=_spin_key)
    return tuple(out)


def block_basis(
    cfg: SpaceConfig, k: int, Q: int, chirality: str = "all"
) -> tuple[tuple[PolyMonomial, SpinorMonomial], ...]:
    """Basis of P_k ⊗ S^{≤Q}, polynomial factor outermost."""
    return tuple((p, s) for p in poly_basis(cfg, k) for s in spinor_basis(cfg, Q, chirality))


def block_basis_upto(cfg: SpaceConfig, k: int, Q: int) -> tuple[tuple[PolyMonomial, SpinorMonomial], ...]:
    return tuple(b for j in range(k + 1) for b in block_basis(cfg, j, Q))


def dim_poly(cfg: SpaceConfig, k: int) -> int:
    nf = 2 * cfg.n
    if cfg.m == 0:
        return comb(nf, k)
    return sum(comb(nf, j) * comb(k - j + cfg.m - 1, cfg.m - 1) for j in range(min(k, nf) + 1))


def dim_spinor(cfg: SpaceConfig, Q: int) -> int:
    return 2**cfg.d * comb(Q + cfg.n, cfg.n)


def basis_csv(cfg: SpaceConfig, rows: Iterable) -> str:
    """CSV dump of monomials (or monomial pairs), one exponent per column."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = [cfg.name(j) for j in range(1, cfg.dim + 1)]
    header += [f"theta{a + 1}" for a in range(cfg.d)] + [f"t{i + 1}" for i in range(cfg.n)]
    w.writerow(header)
    nf = 2 * cfg.n
    for r in rows:
        pm, sm = (r, spin_one(cfg)) if isinstance(r, PolyMonomial) else r
        if isinstance(r, SpinorMonomial):
            pm, sm = poly_one(cfg), r
        row = list(pm.bos) + [(pm.fer >> a) & 1 for a in range(nf)]
        row += [(sm.theta >> a) & 1 for a in range(cfg.d)] + list(sm.t)
        w.writerow(row)
    return buf.getvalue()


def element_from_raw(raw: dict) -> Element:
    return Element._wrap(raw)

