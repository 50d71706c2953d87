"""The super Clifford algebra Cl(m|2n) and its realization on spinors.

Clifford elements are linear combinations of words in the generators
``E_1..E_{m+2n}`` subject to ``E_k E_l + (-1)^{[k][l]} E_l E_k = -2 g_lk``.
Normal words have non-decreasing indices with no repeated bosonic generator.
A fermionic generator commutes with itself up to ``g_kk = 0``, so fermionic
repeats cannot be removed and survive as powers.

The spinor space is the algebra generated by d anticommuting θ's and n
commuting t's, with θ and t anticommuting.  Spinor vectors are represented as
:class:`~superdirac.superspace.Element` values whose polynomial factor is 1.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Callable, NamedTuple

from gmpy2 import mpq

from . import rewrite
from .exactfield import ONE, Scalar, as_scalar, unit_mul
from .superspace import Element, SpaceConfig, SpinorMonomial, _accumulate, poly_one

__all__ = [
    "CliffordWord",
    "CliffordElement",
    "cl_normal_form",
    "hat",
    "hat_element",
    "bivector",
    "SpinorOperator",
    "kappa",
    "kappa_of",
    "grading_operator",
    "natural_action",
    "tensor_action",
    "e_perp",
    "e_perp_tensor",
    "spinor",
]

_HALF = mpq(1, 2)


# --------------------------------------------------------------------------
# Clifford words


class CliffordWord(NamedTuple):
    factors: tuple[int, ...]
    coefficient: Scalar


def _clifford_rule(cfg: SpaceConfig):
    def rule(k: int, l: int):
        if k < l:
            return None
        if k == l:
            if cfg.grade(k):
                return None
            return [(-1, ())]
        s = -1 if cfg.grade(k) and cfg.grade(l) else 1
        out = [(-s, (l, k))]
        g = cfg.g(l, k)
        if g:
            out.append((-2 * g, ()))
        return out

    return rule


class CliffordElement:
    """Linear combination of Clifford words (not necessarily in normal form)."""

    __slots__ = ("cfg", "terms")

    def __init__(self, cfg: SpaceConfig, terms: dict[tuple[int, ...], Scalar] | None = None):
        self.cfg = cfg
        self.terms = {w: as_scalar(c) for w, c in (terms or {}).items() if c}

    @classmethod
    def gen(cls, cfg: SpaceConfig, k: int) -> CliffordElement:
        cfg.check(k)
        return cls(cfg, {(k,): ONE})

    @classmethod
    def scalar(cls, cfg: SpaceConfig, c) -> CliffordElement:
        return cls(cfg, {(): as_scalar(c)})

    @classmethod
    def word(cls, cfg: SpaceConfig, factors, coef=1) -> CliffordElement:
        for k in factors:
            cfg.check(k)
        return cls(cfg, {tuple(factors): as_scalar(coef)})

    def words(self) -> list[CliffordWord]:
        return [CliffordWord(w, c) for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))]

    def __add__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(self.cfg, other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return CliffordElement(self.cfg, out)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement(self.cfg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(self.cfg, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            out: dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    out[w] = out.get(w, 0) + c1 * c2
            return CliffordElement(self.cfg, out)
        c = as_scalar(other)
        if c is NotImplemented:
            return NotImplemented
        return CliffordElement(self.cfg, {w: x * c for w, x in self.terms.items()})

    def __rmul__(self, other):
        c = as_scalar(other)
        if c is NotImplemented:
            return NotImplemented
        return CliffordElement(self.cfg, {w: c * x for w, x in self.terms.items()})

    def normal_form(self, strategy: str = "leftmost", rng: random.Random | None = None) -> CliffordElement:
        nf = rewrite.normal_form(self.terms, _clifford_rule(self.cfg), strategy, rng)
        return CliffordElement(self.cfg, nf)

    def is_normal(self) -> bool:
        rule = _clifford_rule(self.cfg)
        return all(rule(w[p], w[p + 1]) is None for w in self.terms for p in range(len(w) - 1))

    def parity(self) -> int | None:
        ps = {sum(self.cfg.grade(k) for k in w) & 1 for w in self.terms}
        return ps.pop() if len(ps) == 1 else (0 if not ps else None)

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(self.cfg, other)
        return self.normal_form().terms == other.normal_form().terms

    def __hash__(self):
        return hash(frozenset(self.normal_form().terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.words():
            body = "*".join(f"E{k}" for k in w) or "1"
            parts.append(f"({c})·{body}")
        return " + ".join(parts)

    __repr__ = __str__


def cl_normal_form(x: CliffordElement, strategy: str = "leftmost", rng: random.Random | None = None) -> CliffordElement:
    return x.normal_form(strategy, rng)


def hat(cfg: SpaceConfig, k: int) -> CliffordElement:
    """Ê_k = Σ_j E_j g_jk."""
    cfg.check(k)
    return CliffordElement(cfg, {(j,): Scalar(cfg.g(j, k)) for j in range(1, cfg.dim + 1) if cfg.g(j, k)})


def hat_element(x: CliffordElement) -> CliffordElement:
    """Apply the hat morphism to every word and normal-order the result."""
    cfg = x.cfg
    out = CliffordElement(cfg)
    for w, c in x.terms.items():
        term = CliffordElement.scalar(cfg, c)
        for k in w:
            term = term * hat(cfg, k)
        out = out + term
    return out.normal_form()


def bivector(cfg: SpaceConfig, i: int, j: int) -> CliffordElement:
    """B_ij = -1/2 (Ê_i Ê_j + g_ji), in normal form."""
    x = hat(cfg, i) * hat(cfg, j) + cfg.g(j, i)
    return (x * Scalar(-_HALF)).normal_form()


# --------------------------------------------------------------------------
# Operators on the spinor space

SpinImage = dict  # {(SpinorMonomial, unit): mpq}


class SpinorOperator:
    """Exact linear map on spinor vectors, defined by its action on monomials.

    ``lam_shift`` and ``t_shift`` bound how much the Λ-degree and the t-degree
    of a monomial can change.
    """

    __slots__ = ("_fn", "_cache", "parity", "lam_shift", "t_shift", "label")

    def __init__(
        self,
        fn: Callable[[SpinorMonomial], SpinImage],
        parity: int | None,
        lam_shift: tuple[int, int],
        t_shift: tuple[int, int],
        label: str = "",
    ):
        self._fn = fn
        self._cache: dict = {}
        self.parity = parity
        self.lam_shift = lam_shift
        self.t_shift = t_shift
        self.label = label

    def image(self, sm: SpinorMonomial) -> SpinImage:
        r = self._cache.get(sm)
        if r is None:
            r = self._fn(sm)
            self._cache[sm] = r
        return r

    def apply_raw(self, raw: SpinImage) -> SpinImage:
        out: dict = {}
        for (sm, u), x in raw.items():
            for (s2, v), y in self.image(sm).items():
                w, f = unit_mul(u, v)
                _accumulate(out, (s2, w), x * y * f)
        return out

    def __call__(self, v: Element) -> Element:
        """Act on the spinor factor of every term (no Koszul sign)."""
        out: dict = {}
        for (pm, sm, u), x in v.raw.items():
            for (s2, w0), y in self.image(sm).items():
                w, f = unit_mul(u, w0)
                _accumulate(out, (pm, s2, w), x * y * f)
        return Element._wrap(out)

    def __matmul__(self, other: SpinorOperator) -> SpinorOperator:
        a, b = self, other
        return SpinorOperator(
            lambda sm: a.apply_raw(b.image(sm)),
            None if a.parity is None or b.parity is None else (a.parity + b.parity) & 1,
            (a.lam_shift[0] + b.lam_shift[0], a.lam_shift[1] + b.lam_shift[1]),
            (a.t_shift[0] + b.t_shift[0], a.t_shift[1] + b.t_shift[1]),
            f"{a.label}∘{b.label}",
        )

    def __add__(self, other: SpinorOperator) -> SpinorOperator:
        a, b = self, other

        def fn(sm):
            out = dict(a.image(sm))
            for k, x in b.image(sm).items():
                _accumulate(out, k, x)
            return out

        return SpinorOperator(
            fn,
            a.parity if a.parity == b.parity else None,
            (min(a.lam_shift[0], b.lam_shift[0]), max(a.lam_shift[1], b.lam_shift[1])),
            (min(a.t_shift[0], b.t_shift[0]), max(a.t_shift[1], b.t_shift[1])),
            f"({a.label}+{b.label})",
        )

    def scale(self, c) -> SpinorOperator:
        cu = as_scalar(c).units()
        a = self

        def fn(sm):
            out: dict = {}
            for (s2, u), x in a.image(sm).items():
                for v, y in cu:
                    w, f = unit_mul(u, v)
                    _accumulate(out, (s2, w), x * y * f)
            return out

        return SpinorOperator(fn, a.parity, a.lam_shift, a.t_shift, f"{c}·{a.label}")

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)


def _theta_mul(j: int, sm: SpinorMonomial):
    bit = 1 << (j - 1)
    if sm.theta & bit:
        return None
    s = -1 if (sm.theta & (bit - 1)).bit_count() & 1 else 1
    return s, SpinorMonomial(sm.theta | bit, sm.t)


def _theta_der(j: int, sm: SpinorMonomial):
    bit = 1 << (j - 1)
    if not sm.theta & bit:
        return None
    s = -1 if (sm.theta & (bit - 1)).bit_count() & 1 else 1
    return s, SpinorMonomial(sm.theta ^ bit, sm.t)


def _t_mul(i: int, sm: SpinorMonomial):
    # t_i passes all θ-factors
    s = -1 if sm.theta.bit_count() & 1 else 1
    t = sm.t[: i - 1] + (sm.t[i - 1] + 1,) + sm.t[i:]
    return s, SpinorMonomial(sm.theta, t)


def _t_der(i: int, sm: SpinorMonomial):
    e = sm.t[i - 1]
    if not e:
        return None
    s = -e if sm.theta.bit_count() & 1 else e
    t = sm.t[: i - 1] + (e - 1,) + sm.t[i:]
    return s, SpinorMonomial(sm.theta, t)


def _img(*parts) -> SpinImage:
    """Build a spinor image from ``(unit, factor, (sign, monomial) | None)`` parts."""
    out: dict = {}
    for unit, factor, hit in parts:
        if hit is None:
            continue
        s, sm = hit
        _accumulate(out, (sm, unit), mpq(s * factor))
    return out


@lru_cache(maxsize=None)
def kappa(cfg: SpaceConfig, k: int) -> SpinorOperator:
    """Realization of the generator E_k as an operator on spinors."""
    cfg.check(k)
    d, m, n = cfg.d, cfg.m, cfg.n
    if k <= d:
        j = k
        fn = lambda sm: _img((0, 1, _theta_mul(j, sm)), (0, -1, _theta_der(j, sm)))  # noqa: E731
        return SpinorOperator(fn, 0, (-1, 1), (0, 0), f"κ(E{k})")
    if k <= 2 * d:
        j = k - d
        fn = lambda sm: _img((1, 1, _theta_mul(j, sm)), (1, 1, _theta_der(j, sm)))  # noqa: E731
        return SpinorOperator(fn, 0, (-1, 1), (0, 0), f"κ(E{k})")
    if k <= m:
        # m odd, k = m: i times the Λ-degree parity operator
        fn = lambda sm: {(sm, 1): mpq(-1 if sm.lam_degree & 1 else 1)}  # noqa: E731
        return SpinorOperator(fn, 0, (0, 0), (0, 0), f"κ(E{k})")
    if k <= m + n:
        i = k - m
        fn = lambda sm: _img((2, 1, _t_mul(i, sm)))  # noqa: E731
        return SpinorOperator(fn, 1, (1, 1), (1, 1), f"κ(E{k})")
    i = k - m - n
    fn = lambda sm: _img((2, -1, _t_der(i, sm)))  # noqa: E731
    return SpinorOperator(fn, 1, (-1, -1), (-1, -1), f"κ(E{k})")


@lru_cache(maxsize=None)
def grading_operator(cfg: SpaceConfig) -> SpinorOperator:
    """G = (-1)^{Λ-degree}, diagonal on spinor monomials."""
    fn = lambda sm: {(sm, 0): mpq(-1 if sm.lam_degree & 1 else 1)}  # noqa: E731
    return SpinorOperator(fn, 0, (0, 0), (0, 0), "G")


def identity_spinor(cfg: SpaceConfig) -> SpinorOperator:
    return SpinorOperator(lambda sm: {(sm, 0): mpq(1)}, 0, (0, 0), (0, 0), "1")


def kappa_of(x: CliffordElement) -> SpinorOperator:
    """κ extended multiplicatively to a Clifford element."""
    cfg = x.cfg
    nf = x.normal_form()
    total = None
    for w, c in sorted(nf.terms.items()):
        op = identity_spinor(cfg)
        for k in w:
            op = op @ kappa(cfg, k)
        op = op.scale(c)
        total = op if total is None else total + op
    if total is None:
        return SpinorOperator(lambda sm: {}, 0, (0, 0), (0, 0), "0")
    total.label = f"κ({x})"
    return total


def spinor(cfg: SpaceConfig, theta=(), t=None, coef=1) -> Element:
    """Spinor basis vector θ_{theta...} t^t as an element with trivial polynomial part."""
    mask = 0
    for j in theta:
        mask |= 1 << (j - 1)
    tt = tuple(t) if t is not None else (0,) * cfg.n
    return Element.basis(poly_one(cfg), SpinorMonomial(mask, tt), coef)


# --------------------------------------------------------------------------
# Vector ⊗ spinor and the projection E⊥


def natural_action(cfg: SpaceConfig, i: int, j: int, k: int) -> dict[int, int]:
    """K_ij · E_k = g_kj E_i - (-1)^{[i][j]} g_ki E_j as ``{index: coefficient}``."""
    out: dict[int, int] = {}
    if cfg.g(k, j):
        out[i] = out.get(i, 0) + cfg.g(k, j)
    if cfg.g(k, i):
        s = -1 if cfg.grade(i) and cfg.grade(j) else 1
        out[j] = out.get(j, 0) - s * cfg.g(k, i)
    return {a: c for a, c in out.items() if c}


def tensor_action(cfg: SpaceConfig, i: int, j: int, k: int, v: Element) -> dict[int, Element]:
    """K_ij acting on E_k ⊗ v in C^{m|2n} ⊗ S, as ``{index l: spinor part of E_l}``."""
    out: dict[int, Element] = {}
    for l, c in natural_action(cfg, i, j, k).items():
        out[l] = out.get(l, Element()) + v.scale(c)
    sign = -1 if (cfg.grade(i) + cfg.grade(j)) * cfg.grade(k) & 1 else 1
    w = kappa_bivector(cfg, i, j)(v).scale(sign)
    out[k] = out.get(k, Element()) + w
    return {l: e for l, e in out.items() if e}


def e_perp(cfg: SpaceConfig, k: int, v: Element) -> Element:
    """E⊥(E_k ⊗ v) = κ(Ê_k) v."""
    return kappa_hat(cfg, k)(v)


@lru_cache(maxsize=None)
def kappa_hat(cfg: SpaceConfig, k: int) -> SpinorOperator:
    return kappa_of(hat(cfg, k))


@lru_cache(maxsize=None)
def kappa_bivector(cfg: SpaceConfig, i: int, j: int) -> SpinorOperator:
    return kappa_of(bivector(cfg, i, j))


def e_perp_tensor(cfg: SpaceConfig, vec: dict[int, Element]) -> Element:
    out = Element()
    for k, v in vec.items():
        out = out + e_perp(cfg, k, v)
    return out

