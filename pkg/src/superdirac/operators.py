"""Differential operators on P ⊗ S as composable exact linear maps.

An :class:`Operator` is determined by its image on basis monomials
``(PolyMonomial, SpinorMonomial)``; images are cached, so repeated
applications and compositions only pay once per monomial.

Parity convention: every operator carries the parity it has as a map on the
graded space P ⊗ S (total parity = polynomial parity + spinor parity), with
one exception.  ``dirac`` and ``vector`` (and operators built by the osp(1|2)
relations from them) are declared odd, which is the grading under which they
generate osp(1|2).  As maps on P ⊗ S they preserve total parity, so brackets
of ``dirac`` with the even-graded symmetry operators must be ordinary
commutators; :func:`commutator` and :meth:`Operator.regraded` cover this.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from gmpy2 import mpq

from .clifford import SpinorOperator, kappa, kappa_bivector, kappa_hat
from .errors import IndexOutOfRange, UndeclaredParity
from .exactfield import Scalar, as_scalar, unit_mul
from .superspace import (
    Element,
    PolyMonomial,
    SpaceConfig,
    SpinorMonomial,
    _accumulate,
    block_basis,
    poly_mul,
    poly_partial,
    poly_var,
)

__all__ = [
    "Operator",
    "make_operator",
    "clifford_act",
    "bracket",
    "commutator",
    "equal_on",
    "EqualityResult",
    "gradient",
    "catalog",
    "parse_spec",
]

Raw = dict  # {(PolyMonomial, SpinorMonomial, unit): mpq}
Shift = "tuple[int, int] | None"


def _add_shift(a, b):
    if a is None or b is None:
        return None
    return (a[0] + b[0], a[1] + b[1])


def _join_shift(a, b):
    if a is None or b is None:
        return None
    return (min(a[0], b[0]), max(a[1], b[1]))


class Operator:
    """Exact linear map on P ⊗ S with parity and degree-shift metadata.

    ``poly_shift`` bounds the change in polynomial degree; ``spin_shift``
    bounds the change in t-degree of the spinor factor.  Either may be
    ``None`` when unknown.
    """

    __slots__ = ("_fn", "_cache", "parity", "poly_shift", "spin_shift", "label", "cfg")

    def __init__(
        self,
        fn: Callable[[PolyMonomial, SpinorMonomial], Raw],
        parity: int | None,
        poly_shift=None,
        spin_shift=None,
        label: str = "",
        cfg: SpaceConfig | None = None,
    ):
        self.cfg = cfg
        self._fn = fn
        self._cache: dict = {}
        self.parity = parity
        self.poly_shift = poly_shift
        self.spin_shift = spin_shift
        self.label = label

    # -- application -------------------------------------------------------

    def image(self, pm: PolyMonomial, sm: SpinorMonomial) -> Raw:
        key = (pm, sm)
        r = self._cache.get(key)
        if r is None:
            r = self._fn(pm, sm)
            self._cache[key] = r
        return r

    def apply_raw(self, raw: Raw) -> Raw:
        out: dict = {}
        for (pm, sm, u), x in raw.items():
            img = self.image(pm, sm)
            if u == 0:
                for k, y in img.items():
                    _accumulate(out, k, x * y)
            else:
                for (p2, s2, v), y in img.items():
                    w, f = unit_mul(u, v)
                    _accumulate(out, (p2, s2, w), x * y * f)
        return out

    def __call__(self, f: Element) -> Element:
        return Element._wrap(self.apply_raw(f.raw))

    def on_basis(self, pm: PolyMonomial, sm: SpinorMonomial) -> Element:
        return Element._wrap(dict(self.image(pm, sm)))

    # -- algebra -----------------------------------------------------------

    def __matmul__(self, other: Operator) -> Operator:
        return compose(self, other)

    def __add__(self, other: Operator) -> Operator:
        return add(self, other)

    def __sub__(self, other: Operator) -> Operator:
        return add(self, other.scale(-1))

    def __neg__(self) -> Operator:
        return self.scale(-1)

    def __mul__(self, c) -> Operator:
        if isinstance(c, Operator):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def scale(self, c) -> Operator:
        c = as_scalar(c)
        cu = c.units()
        a = self

        def fn(pm, sm):
            out: dict = {}
            for (p2, s2, u), x in a.image(pm, sm).items():
                for v, y in cu:
                    w, f = unit_mul(u, v)
                    _accumulate(out, (p2, s2, w), x * y * f)
            return out

        label = a.label if c == 1 else f"({c})·{a.label}"
        return Operator(fn, a.parity, a.poly_shift, a.spin_shift, label, a.cfg)

    def regraded(self, parity: int | None) -> Operator:
        """Same map with a different declared parity (shares the image cache)."""
        op = Operator(self._fn, parity, self.poly_shift, self.spin_shift, self.label, self.cfg)
        op._cache = self._cache
        return op

    def relabel(self, label: str) -> Operator:
        op = self.regraded(self.parity)
        op.label = label
        return op

    def __repr__(self):
        return f"Operator({self.label}, parity={self.parity})"

    def describe(self) -> dict:
        return {
            "label": self.label,
            "parity": self.parity,
            "poly_shift": list(self.poly_shift) if self.poly_shift else None,
            "spin_shift": list(self.spin_shift) if self.spin_shift else None,
        }


def compose(a: Operator, b: Operator) -> Operator:
    """a ∘ b (apply b first)."""
    parity = None if a.parity is None or b.parity is None else (a.parity + b.parity) & 1
    return Operator(
        lambda pm, sm: a.apply_raw(b.image(pm, sm)),
        parity,
        _add_shift(a.poly_shift, b.poly_shift),
        _add_shift(a.spin_shift, b.spin_shift),
        f"{_paren(a.label)}∘{_paren(b.label)}",
        a.cfg or b.cfg,
    )


def add(a: Operator, b: Operator) -> Operator:
    def fn(pm, sm):
        out = dict(a.image(pm, sm))
        for k, x in b.image(pm, sm).items():
            _accumulate(out, k, x)
        return out

    return Operator(
        fn,
        a.parity if a.parity == b.parity else None,
        _join_shift(a.poly_shift, b.poly_shift),
        _join_shift(a.spin_shift, b.spin_shift),
        f"{a.label} + {b.label}",
        a.cfg or b.cfg,
    )


def sum_ops(ops: list[Operator], label: str, parity: int | None = None) -> Operator:
    """Sum of many operators in one pass, with an explicit label."""
    ops = list(ops)

    def fn(pm, sm):
        out: dict = {}
        for o in ops:
            for k, x in o.image(pm, sm).items():
                _accumulate(out, k, x)
        return out

    ps, ss = (0, 0), (0, 0)
    first = True
    for o in ops:
        ps = o.poly_shift if first else _join_shift(ps, o.poly_shift)
        ss = o.spin_shift if first else _join_shift(ss, o.spin_shift)
        first = False
    if parity is None and ops and all(o.parity == ops[0].parity for o in ops):
        parity = ops[0].parity
    if not ops:
        parity = 0
    cfg = next((o.cfg for o in ops if o.cfg is not None), None)
    return Operator(fn, parity, ps, ss, label, cfg)


def _paren(s: str) -> str:
    return f"({s})" if " " in s else s


def identity(cfg: SpaceConfig) -> Operator:
    return Operator(lambda pm, sm: {(pm, sm, 0): mpq(1)}, 0, (0, 0), (0, 0), "1", cfg)


def zero(cfg: SpaceConfig) -> Operator:
    return Operator(lambda pm, sm: {}, 0, (0, 0), (0, 0), "0", cfg)


def _sign(b: int) -> int:
    return -1 if b & 1 else 1


# --------------------------------------------------------------------------
# Elementary operators


def _mul_op(cfg: SpaceConfig, j: int) -> Operator:
    xj = poly_var(cfg, j)

    def fn(pm, sm):
        s, p = poly_mul(xj, pm)
        return {(p, sm, 0): mpq(s)} if s else {}

    return Operator(fn, cfg.grade(j), (1, 1), (0, 0), f"X{j}", cfg)


def _partial_op(cfg: SpaceConfig, j: int) -> Operator:
    def fn(pm, sm):
        c, p = poly_partial(cfg, j, pm)
        return {(p, sm, 0): mpq(c)} if c else {}

    return Operator(fn, cfg.grade(j), (-1, -1), (0, 0), f"∂{j}", cfg)


def lift_spinor(cfg: SpaceConfig, S: SpinorOperator, label: str = "") -> Operator:
    """Lift a spinor operator of parity p to P ⊗ S: h ⊗ v ↦ (-1)^{p|h|} h ⊗ S v."""
    p = S.parity or 0

    def fn(pm, sm):
        s = _sign(p * pm.parity)
        return {(pm, s2, u): x * s for (s2, u), x in S.image(sm).items()}

    return Operator(fn, S.parity, (0, 0), S.t_shift, label or S.label, cfg)


def clifford_act(cfg: SpaceConfig, k: int, f: Element) -> Element:
    """E_k · (h ⊗ v) = (-1)^{[k]|h|} h ⊗ κ(E_k) v."""
    cfg.check(k)
    return make_operator(cfg, ("E", k))(f)


def _dirac_clifford(cfg: SpaceConfig) -> Operator:
    # Σ_k κ(Ê_k) ∂_k with the Koszul sign of Ê_k passing the differentiated polynomial
    N = cfg.dim
    hats = [None] + [kappa_hat(cfg, k) for k in range(1, N + 1)]

    def fn(pm, sm):
        out: dict = {}
        for k in range(1, N + 1):
            c, p = poly_partial(cfg, k, pm)
            if not c:
                continue
            if cfg.grade(k) and p.parity:
                c = -c
            for (s2, u), y in hats[k].image(sm).items():
                _accumulate(out, (p, s2, u), y * c)
        return out

    return Operator(fn, 1, (-1, -1), (-1, 1) if cfg.n else (0, 0), "dirac", cfg)


def gradient(cfg: SpaceConfig, f: Element) -> dict[int, Element]:
    """∇(h ⊗ v) = Σ_j (-1)^{[j](1+|h|)} ∂_j h ⊗ E_j ⊗ v, as ``{j: ∂_j h ⊗ v}`` slots."""
    slots: dict[int, dict] = {}
    for (pm, sm, u), x in f.raw.items():
        for j in range(1, cfg.dim + 1):
            c, p = poly_partial(cfg, j, pm)
            if not c:
                continue
            if cfg.grade(j) and not pm.parity:
                c = -c
            _accumulate(slots.setdefault(j, {}), (p, sm, u), x * c)
    return {j: Element._wrap(r) for j, r in slots.items() if r}


def _dirac_stein_weiss(cfg: SpaceConfig) -> Operator:
    # E⊥ applied to the gradient; E⊥ is even and acts on the vector ⊗ spinor factor only
    def fn(pm, sm):
        out: dict = {}
        for j, slot in gradient(cfg, Element.basis(pm, sm)).items():
            S = kappa_hat(cfg, j)
            for (p2, s2, u), x in slot.raw.items():
                for (s3, v), y in S.image(s2).items():
                    w, f = unit_mul(u, v)
                    _accumulate(out, (p2, s3, w), x * y * f)
        return out

    return Operator(fn, 1, (-1, -1), (-1, 1) if cfg.n else (0, 0), "dirac_sw", cfg)


def _vector(cfg: SpaceConfig) -> Operator:
    N = cfg.dim
    kap = [None] + [kappa(cfg, k) for k in range(1, N + 1)]
    xs = [None] + [poly_var(cfg, k) for k in range(1, N + 1)]

    def fn(pm, sm):
        out: dict = {}
        for j in range(1, N + 1):
            s, p = poly_mul(xs[j], pm)
            if not s:
                continue
            if cfg.grade(j) and pm.parity:
                s = -s
            for (s2, u), y in kap[j].image(sm).items():
                _accumulate(out, (p, s2, u), y * s)
        return out

    return Operator(fn, 1, (1, 1), (-1, 1) if cfg.n else (0, 0), "vector", cfg)


def _euler(cfg: SpaceConfig) -> Operator:
    def fn(pm, sm):
        d = pm.degree
        return {(pm, sm, 0): mpq(d)} if d else {}

    return Operator(fn, 0, (0, 0), (0, 0), "euler", cfg)


def _parity_inv(cfg: SpaceConfig, label="parity_inv") -> Operator:
    return Operator(lambda pm, sm: {(pm, sm, 0): mpq(_sign(pm.degree))}, 0, (0, 0), (0, 0), label, cfg)


def _metric_pairs(cfg: SpaceConfig):
    N = cfg.dim
    return [(j, k, cfg.g(j, k)) for j in range(1, N + 1) for k in range(1, N + 1) if cfg.g(j, k)]


def _scalar_op(cfg: SpaceConfig, c, label: str) -> Operator:
    c = as_scalar(c)
    return identity(cfg).scale(c).relabel(label)


# --------------------------------------------------------------------------
# Catalog

_SPEC_RE = re.compile(r"^\s*([A-Za-z_]+)\s*(?:\(\s*([^)]*)\s*\))?\s*$")


def parse_spec(text: str):
    """Parse ``"K(1,2)"``, ``"dirac"``, ``"howe_gen(XE,1,4)"`` into a spec tuple."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ValueError(f"bad operator spec {text!r}")
    name, args = m.group(1), m.group(2)
    if args is None:
        return name
    vals = []
    for a in args.split(","):
        a = a.strip()
        vals.append(int(a) if re.fullmatch(r"-?\d+", a) else a)
    return (name, *vals)


def make_operator(cfg: SpaceConfig, spec) -> Operator:
    """Build a named operator; ``spec`` is a name or a tuple ``(name, *indices)``."""
    if isinstance(spec, str) and "(" in spec:
        spec = parse_spec(spec)
    if isinstance(spec, list):
        spec = tuple(spec)
    return _make(cfg, spec)


def _idx(cfg: SpaceConfig, *js: int) -> None:
    for j in js:
        if not isinstance(j, int) or not 1 <= j <= cfg.dim:
            raise IndexOutOfRange(f"index {j!r} outside 1..{cfg.dim}")


@lru_cache(maxsize=None)
def _make(cfg: SpaceConfig, spec) -> Operator:
    name = spec if isinstance(spec, str) else spec[0]
    args = () if isinstance(spec, str) else tuple(spec[1:])
    op = _build(cfg, name, args)
    return op


def _build(cfg: SpaceConfig, name: str, args: tuple) -> Operator:
    M = cfg.M
    mk = lambda *s: _make(cfg, s[0] if len(s) == 1 else tuple(s))  # noqa: E731
    if name == "identity":
        return identity(cfg)
    if name == "zero":
        return zero(cfg)
    if name == "mul":
        _idx(cfg, *args)
        return _mul_op(cfg, args[0])
    if name == "partial":
        _idx(cfg, *args)
        return _partial_op(cfg, args[0])
    if name == "partial_up":
        _idx(cfg, *args)
        (j,) = args
        ops = [mk("partial", k).scale(c) for k, c in cfg.raised(j)]
        return sum_ops(ops, f"∂^{j}", cfg.grade(j))
    if name == "E":
        _idx(cfg, *args)
        return lift_spinor(cfg, kappa(cfg, args[0]), f"E{args[0]}")
    if name == "Ehat":
        _idx(cfg, *args)
        return lift_spinor(cfg, kappa_hat(cfg, args[0]), f"Ê{args[0]}")
    if name == "euler":
        return _euler(cfg)
    if name == "euler_sum":
        ops = [mk("mul", j) @ mk("partial", j) for j in range(1, cfg.dim + 1)]
        return sum_ops(ops, "Σ X_j∂_j", 0)
    if name == "r2":
        ops = [(mk("mul", j) @ mk("mul", k)).scale(g) for j, k, g in _metric_pairs(cfg)]
        return sum_ops(ops, "R²", 0)
    if name == "laplace":
        ops = [(mk("partial", j) @ mk("partial", k)).scale(g) for j, k, g in _metric_pairs(cfg)]
        return sum_ops(ops, "Δ", 0)
    if name == "dirac":
        return _dirac_clifford(cfg)
    if name == "dirac_sw":
        return _dirac_stein_weiss(cfg)
    if name == "vector":
        return _vector(cfg)
    if name == "gradient":
        raise ValueError("the gradient maps into P ⊗ C^{m|2n} ⊗ S; use operators.gradient")
    if name == "L":
        _idx(cfg, *args)
        i, j = args
        s = _sign(cfg.grade(i) * cfg.grade(j))
        a = mk("mul", i) @ mk("partial_up", j)
        b = (mk("mul", j) @ mk("partial_up", i)).scale(-s)
        return sum_ops([a, b], f"L({i},{j})", (cfg.grade(i) + cfg.grade(j)) & 1)
    if name == "B":
        _idx(cfg, *args)
        i, j = args
        return lift_spinor(cfg, kappa_bivector(cfg, i, j), f"B({i},{j})")
    if name == "K":
        _idx(cfg, *args)
        i, j = args
        return sum_ops([mk("L", i, j), mk("B", i, j)], f"K({i},{j})", (cfg.grade(i) + cfg.grade(j)) & 1)
    if name == "Pi":
        _idx(cfg, *args)
        (j,) = args
        vec = mk("vector").regraded(0)
        t1 = vec @ mk("Ehat", j)
        t2 = mk("mul", j) @ (identity(cfg).scale(M) + mk("euler").scale(2))
        t3 = (mk("r2") @ mk("partial_up", j)).scale(-1)
        return sum_ops([t1, t2, t3], f"Π{j}", cfg.grade(j))
    if name == "Kconf":
        return _kconf(cfg, *args)
    if name == "casimir":
        return (mk("vector") @ mk("dirac")).regraded(0).relabel("casimir")
    if name == "parity_inv":
        return _parity_inv(cfg)
    if name == "howe_gen":
        return _howe_gen(cfg, *args)
    raise ValueError(f"unknown operator {name!r}")


def conf_grade(cfg: SpaceConfig, a: int) -> int:
    return 0 if a <= 0 else cfg.grade(a)


def conf_metric(cfg: SpaceConfig, a: int, b: int) -> int:
    """The metric h = diag(-1, 1, g) on indices -1, 0, 1..m+2n."""
    if a <= 0 or b <= 0:
        if a != b:
            return 0
        return -1 if a == -1 else 1
    return cfg.g(a, b)


def _kconf(cfg: SpaceConfig, a: int, b: int) -> Operator:
    for x in (a, b):
        if not isinstance(x, int) or not -1 <= x <= cfg.dim:
            raise IndexOutOfRange(f"conformal index {x!r} outside -1..{cfg.dim}")
    mk = lambda *s: _make(cfg, s[0] if len(s) == 1 else tuple(s))  # noqa: E731
    label = f"Kconf({a},{b})"
    parity = (conf_grade(cfg, a) + conf_grade(cfg, b)) & 1
    half = Scalar(mpq(1, 2))
    if a > b:
        s = -_sign(conf_grade(cfg, a) * conf_grade(cfg, b))
        return mk("Kconf", b, a).scale(s).relabel(label)
    if a > 0:
        return mk("K", a, b).relabel(label)
    if a == b:
        return zero(cfg).relabel(label)
    if (a, b) == (-1, 0):
        c = Scalar(mpq(cfg.M - 1, 2))
        return sum_ops([mk("euler"), identity(cfg).scale(c)], label, 0)
    j = b
    sgn = -1 if a == -1 else 1
    return sum_ops([mk("Pi", j).scale(half), mk("partial_up", j).scale(half * sgn)], label, parity)


HOWE_TAGS = ("XX", "XD", "DD", "B", "XE", "ED")


def howe_parity(cfg: SpaceConfig, tag: str, i: int, j: int) -> int:
    p = (cfg.grade(i) + cfg.grade(j)) & 1
    return p ^ 1 if tag in ("XE", "ED") else p


def _howe_gen(cfg: SpaceConfig, tag: str, i: int, j: int) -> Operator:
    _idx(cfg, i, j)
    mk = lambda *s: _make(cfg, s[0] if len(s) == 1 else tuple(s))  # noqa: E731
    s = (cfg.grade(i) + cfg.grade(j)) & 1
    phi = _parity_inv(cfg, "(-1)^E") if s else identity(cfg)
    if tag == "XX":
        core = mk("mul", i) @ mk("mul", j)
    elif tag == "XD":
        core = (mk("mul", i) @ mk("partial_up", j)).scale(2)
        if cfg.g(j, i):
            core = core + identity(cfg).scale(cfg.g(j, i))
    elif tag == "DD":
        core = mk("partial_up", i) @ mk("partial_up", j)
    elif tag == "B":
        core = mk("B", i, j)
    elif tag == "XE":
        core = mk("mul", i) @ mk("E", j)
    elif tag == "ED":
        core = mk("E", j) @ mk("partial_up", i)
    else:
        raise ValueError(f"unknown generator tag {tag!r}")
    op = core @ phi
    return op.regraded(howe_parity(cfg, tag, i, j)).relabel(f"howe_gen({tag},{i},{j})")


# --------------------------------------------------------------------------
# Brackets and comparison


def bracket(a: Operator, b: Operator) -> Operator:
    """Graded commutator a∘b - (-1)^{|a||b|} b∘a."""
    if a.parity is None or b.parity is None:
        raise UndeclaredParity(f"bracket needs declared parities ({a.label}, {b.label})")
    s = _sign(a.parity * b.parity)
    out = compose(a, b) - compose(b, a).scale(s)
    return out.regraded((a.parity + b.parity) & 1).relabel(f"[{a.label}, {b.label}]")


def commutator(a: Operator, b: Operator) -> Operator:
    """Ordinary commutator a∘b - b∘a, regardless of declared parities."""
    out = compose(a, b) - compose(b, a)
    p = None if a.parity is None or b.parity is None else (a.parity + b.parity) & 1
    return out.regraded(p).relabel(f"[{a.label}, {b.label}]₀")


@dataclass
class EqualityResult:
    equal: bool
    checked: int
    witness: tuple[PolyMonomial, SpinorMonomial] | None = None
    lhs: Element | None = None
    rhs: Element | None = None

    def __bool__(self):
        return self.equal

    def to_json(self):
        out = {"equal": self.equal, "checked": self.checked}
        if self.witness is not None:
            pm, sm = self.witness
            out["witness"] = {"poly": pm.to_json(), "spin": sm.to_json()}
            out["lhs"] = self.lhs.to_json()
            out["rhs"] = self.rhs.to_json()
        return out


def equal_on(a: Operator, b: Operator, k_max: int, Q_max: int, k_min: int = 0) -> EqualityResult:
    """Compare two operators exactly on every basis vector of P_{≤k_max} ⊗ S^{≤Q_max}.

    Outputs are never truncated; the first differing basis vector is returned
    as the witness.
    """
    cfg = a.cfg or b.cfg
    if cfg is None:
        raise ValueError("operators carry no space configuration")
    n = 0
    for k in range(k_min, k_max + 1):
        for pm, sm in block_basis(cfg, k, Q_max):
            n += 1
            x, y = a.image(pm, sm), b.image(pm, sm)
            if x != y:
                return EqualityResult(False, n, (pm, sm), Element._wrap(dict(x)), Element._wrap(dict(y)))
    return EqualityResult(True, n)


def catalog(cfg: SpaceConfig) -> list[dict]:
    """Description of every named operator at small indices, for listing."""
    specs: list = ["identity", "euler", "r2", "laplace", "dirac", "dirac_sw", "vector", "casimir", "parity_inv"]
    N = cfg.dim
    for j in range(1, N + 1):
        specs += [("mul", j), ("partial", j), ("partial_up", j), ("E", j), ("Ehat", j), ("Pi", j)]
    for i in range(1, N + 1):
        for j in range(i, N + 1):
            specs += [("L", i, j), ("B", i, j), ("K", i, j)]
    for a in range(-1, N + 1):
        for b in range(a + 1, N + 1):
            specs.append(("Kconf", a, b))
    for tag in HOWE_TAGS:
        specs.append(("howe_gen", tag, 1, 1))
    out = []
    for s in specs:
        d = make_operator(cfg, s).describe()
        d["spec"] = s if isinstance(s, str) else f"{s[0]}({','.join(map(str, s[1:]))})"
        out.append(d)
    return out


def catalog_json(cfg: SpaceConfig) -> str:
    return json.dumps(catalog(cfg), indent=2, ensure_ascii=False)
