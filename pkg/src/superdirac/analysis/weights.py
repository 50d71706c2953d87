"""Weights, the Cartan subalgebra of osp(m|2n) and singular vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from ..errors import NoCartanConfig
from ..exactfield import I, ONE, Scalar
from ..exactla import Span, _axpy
from ..operators import Operator, make_operator, sum_ops
from ..superspace import Element, SpaceConfig, term_key

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Weight:
    """A weight sum(eps_j ε_j) + sum(delta_i δ_i) of osp(m|2n)."""

    eps: tuple[Fraction, ...]
    delta: tuple[Fraction, ...]

    @classmethod
    def zero(cls, cfg: SpaceConfig) -> Weight:
        return cls((Fraction(0),) * cfg.d, (Fraction(0),) * cfg.n)

    def __add__(self, other: Weight) -> Weight:
        return Weight(
            tuple(a + b for a, b in zip(self.eps, other.eps)),
            tuple(a + b for a, b in zip(self.delta, other.delta)),
        )

    def __sub__(self, other: Weight) -> Weight:
        return self + other.scaled(-1)

    def scaled(self, c) -> Weight:
        c = Fraction(c)
        return Weight(tuple(c * a for a in self.eps), tuple(c * a for a in self.delta))

    def __rmul__(self, c) -> Weight:
        return self.scaled(c)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return self.eps + self.delta

    def is_positive(self) -> bool:
        for a in self.entries:
            if a:
                return a > 0
        return False

    def __str__(self):
        f = lambda xs: ", ".join(str(x) for x in xs)  # noqa: E731
        return f"({f(self.eps)}; {f(self.delta)})"

    def to_json(self):
        return {"eps": [str(x) for x in self.eps], "delta": [str(x) for x in self.delta]}


def epsilon(cfg: SpaceConfig, j: int) -> Weight:
    w = [Fraction(0)] * cfg.d
    w[j - 1] = Fraction(1)
    return Weight(tuple(w), (Fraction(0),) * cfg.n)


def delta(cfg: SpaceConfig, i: int) -> Weight:
    w = [Fraction(0)] * cfg.n
    w[i - 1] = Fraction(1)
    return Weight((Fraction(0),) * cfg.d, tuple(w))


def omega_top(cfg: SpaceConfig) -> Weight:
    """ω_d = ½(ε_1 + ... + ε_d)."""
    return Weight((HALF,) * cfg.d, (Fraction(0),) * cfg.n)


def omega_next(cfg: SpaceConfig) -> Weight:
    """ω_{d-1} = ½(ε_1 + ... + ε_{d-1} - ε_d)."""
    e = [HALF] * cfg.d
    if e:
        e[-1] = -HALF
    return Weight(tuple(e), (Fraction(0),) * cfg.n)


def nu(cfg: SpaceConfig, j: int) -> Weight:
    """ν_j = δ_1 + ... + δ_j (ν_0 = 0)."""
    return Weight((Fraction(0),) * cfg.d, tuple(Fraction(1 if i < j else 0) for i in range(cfg.n)))


def expected_monogenic_weight(cfg: SpaceConfig, k: int, chirality: str = "all") -> Weight:
    """Highest weight of the spherical monogenics of degree k."""
    base = k * epsilon(cfg, 1) if cfg.d else Weight.zero(cfg)
    if cfg.m % 2 or chirality in ("all", "+"):
        return base + omega_top(cfg) - nu(cfg, cfg.n).scaled(HALF)
    if cfg.n == 0:
        return base + omega_next(cfg)
    return base + omega_top(cfg) + nu(cfg, cfg.n - 1) - nu(cfg, cfg.n).scaled(Fraction(3, 2))


# --------------------------------------------------------------------------
# Cartan subalgebra and root vectors


def _sg(b: int) -> int:
    return -1 if b & 1 else 1


def algebra_basis(cfg: SpaceConfig) -> list[tuple[int, int]]:
    """Index pairs labelling a basis K_kl of the osp(m|2n) realization."""
    N = cfg.dim
    out = [(k, l) for k in range(1, N + 1) for l in range(k + 1, N + 1)]
    out += [(k, k) for k in range(1, N + 1) if cfg.grade(k)]
    return sorted(out)


def _normalize(cfg: SpaceConfig, a: int, b: int) -> tuple[tuple[int, int], int] | None:
    """Write K_ab = s·K_basis; None when K_ab vanishes."""
    if a == b:
        return ((a, a), 1) if cfg.grade(a) else None
    if a < b:
        return (a, b), 1
    return (b, a), -_sg(cfg.grade(a) * cfg.grade(b))


def structure_bracket(cfg: SpaceConfig, p: tuple[int, int], q: tuple[int, int]) -> dict:
    """[K_ij, K_kl] expanded in the basis pairs."""
    i, j = p
    k, l = q
    gr, g = cfg.grade, cfg.g
    terms = [
        (g(k, j), i, l),
        (_sg(gr(i) * (gr(j) + gr(k))) * g(l, i), j, k),
        (-_sg(gr(k) * gr(l)) * g(l, j), i, k),
        (-_sg(gr(i) * gr(j)) * g(k, i), j, l),
    ]
    out: dict = {}
    for c, a, b in terms:
        if not c:
            continue
        nb = _normalize(cfg, a, b)
        if nb is None:
            continue
        key, s = nb
        _axpy(out, Scalar(c * s), {key: ONE})
    return out


@lru_cache(maxsize=None)
def cartan(cfg: SpaceConfig) -> tuple[dict, ...]:
    """Cartan elements as combinations of basis pairs: H^ε_1..H^ε_d, then H^δ_1..H^δ_n."""
    if cfg.d + cfg.n == 0:
        raise NoCartanConfig(f"osp({cfg.m}|{2 * cfg.n}) has no Cartan elements to diagonalize")
    hs = [{(j, cfg.d + j): -I} for j in range(1, cfg.d + 1)]
    hs += [{(cfg.m + i, cfg.m + cfg.n + i): ONE} for i in range(1, cfg.n + 1)]
    return tuple(hs)


def cartan_operators(cfg: SpaceConfig) -> list[Operator]:
    return [combination_operator(cfg, h, f"H{r + 1}") for r, h in enumerate(cartan(cfg))]


def combination_operator(cfg: SpaceConfig, combo: dict, label: str) -> Operator:
    ops = [make_operator(cfg, ("K", a, b)).scale(c) for (a, b), c in sorted(combo.items())]
    parities = {(cfg.grade(a) + cfg.grade(b)) & 1 for (a, b) in combo}
    return sum_ops(ops, label, parities.pop() if len(parities) == 1 else None)


def _ad(cfg: SpaceConfig, h: dict, v: dict) -> dict:
    out: dict = {}
    for p, c in h.items():
        for q, e in v.items():
            _axpy(out, c * e, structure_bracket(cfg, p, q))
    return out


def _magnitude(x: Scalar) -> float:
    a, b, c, d = (abs(float(t)) for t in x.coords())
    return a + b + math.sqrt(2) * (c + d)


def joint_eigenspaces(
    basis: Sequence[dict], maps: Sequence[Callable[[dict], dict]], key=None
) -> list[tuple[tuple[Fraction, ...], list[dict]]]:
    """Simultaneous eigenspace decomposition of commuting maps on span(basis).

    Eigenvalues are searched among half-integers inside the Gershgorin disc;
    a decomposition that does not exhaust the space raises NoCartanConfig.
    """
    spaces: list[tuple[tuple, list[dict]]] = [((), list(basis))]
    for f in maps:
        nxt = []
        for lam, vs in spaces:
            sp = Span(key=key, track=True)
            for v in vs:
                if sp.add(v) is not None:
                    raise ValueError("eigenspace basis is not independent")
            imgs = [f(v) for v in vs]
            mats = []
            bound = 0.0
            for w in imgs:
                co = sp.coordinates(w)
                if co is None:
                    raise NoCartanConfig("Cartan action does not preserve the space")
                mats.append(co)
                bound = max(bound, sum(_magnitude(c) for c in co.values()))
            top = int(math.ceil(2 * bound + 1e-9))
            found = 0
            for twice in range(-top, top + 1):
                mu = Fraction(twice, 2)
                ks = Span(track=True)
                kern = []
                for idx, col in enumerate(mats):
                    shifted = dict(col)
                    _axpy(shifted, -Scalar(mu), {idx: ONE})
                    dep = ks.add(shifted)
                    if dep:
                        kern.append(dep)
                if kern:
                    found += len(kern)
                    ev = []
                    for dep in kern:
                        w: dict = {}
                        for i, c in dep.items():
                            _axpy(w, c, vs[i])
                        ev.append(w)
                    nxt.append((lam + (mu,), ev))
            if found != len(vs):
                raise NoCartanConfig("Cartan action is not diagonalizable with half-integer eigenvalues here")
        spaces = nxt
    return spaces


@lru_cache(maxsize=None)
def root_vectors(cfg: SpaceConfig) -> tuple[tuple[Weight, dict], ...]:
    """All (root, root vector) pairs; root vectors are combinations of basis pairs."""
    hs = cartan(cfg)
    basis = [{p: ONE} for p in algebra_basis(cfg)]
    maps = [lambda v, h=h: _ad(cfg, h, v) for h in hs]
    out = []
    for lam, vs in joint_eigenspaces(basis, maps):
        w = Weight(tuple(lam[: cfg.d]), tuple(lam[cfg.d :]))
        if any(lam):
            for v in vs:
                out.append((w, v))
    return tuple(sorted(out, key=lambda t: (t[0].entries, sorted(t[1]))))


def positive_roots(cfg: SpaceConfig) -> list[tuple[Weight, dict]]:
    return [(w, v) for w, v in root_vectors(cfg) if w.is_positive()]


def raising_operators(cfg: SpaceConfig) -> list[Operator]:
    return [combination_operator(cfg, v, f"raise{w}") for w, v in positive_roots(cfg)]


# --------------------------------------------------------------------------
# Singular vectors


def singular_vectors(cfg: SpaceConfig, space: Sequence[Element]) -> list[tuple[Element, Weight]]:
    """Vectors in span(space) killed by every raising operator, with their weights.

    ``space`` is a computed kernel basis (for instance of the monogenics).
    """
    raises = raising_operators(cfg)
    sp = Span(key=lambda t: (t[0], term_key(t[1])), track=True)
    kern = []
    for e in space:
        stacked = {}
        for r, op in enumerate(raises):
            for key, c in op(e).terms().items():
                stacked[(r, key)] = c
        dep = sp.add(stacked)
        if dep:
            w: dict = {}
            for i, c in dep.items():
                _axpy(w, c, space[i].terms())
            kern.append(w)
    if not kern:
        return []
    hs = cartan_operators(cfg)
    maps = [lambda v, h=h: h(Element(v)).terms() for h in hs]
    out = []
    for lam, vs in joint_eigenspaces(kern, maps, key=term_key):
        wt = Weight(tuple(lam[: cfg.d]), tuple(lam[cfg.d :]))
        for v in vs:
            out.append((Element(v), wt))
    return out


def weight_of(cfg: SpaceConfig, e: Element) -> Weight | None:
    """Weight of a Cartan eigenvector, or None if ``e`` is not one."""
    terms = e.terms()
    if not terms:
        return None
    lead = min(terms, key=term_key)
    vals = []
    for h in cartan_operators(cfg):
        he = h(e)
        lam = he.terms().get(lead, Scalar()) / terms[lead]
        if he != e.scale(lam) or not lam.is_rational():
            return None
        vals.append(Fraction(str(lam.coords()[0])))
    return Weight(tuple(vals[: cfg.d]), tuple(vals[cfg.d :]))
