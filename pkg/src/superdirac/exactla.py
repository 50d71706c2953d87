"""Exact linear algebra over Q(i, sqrt2) on sparse vectors.

A vector is a ``dict`` from sortable coordinate keys to :class:`Scalar`.
:class:`Span` keeps a reduced row-echelon basis with unit pivots; the pivot of
a new row is always its smallest coordinate under the span's key function,
so bases are reproducible.  Each row can also remember which combination of
inserted generators produced it, which is how kernels and intersections are
read off.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from .errors import DimensionMismatch, UnboundedShift
from .exactfield import ONE, Scalar
from .superspace import Element, block_basis, term_key

__all__ = [
    "Span",
    "BlockMatrix",
    "block_matrix",
    "kernel_basis",
    "rank",
    "image_basis",
    "intersect",
    "member",
    "solve",
    "element_vector",
    "vector_element",
    "restrict",
]

Vector = dict


def _axpy(y: dict, a: Scalar, x: dict) -> None:
    """y += a·x in place, dropping zeros."""
    if not a:
        return
    for k, v in x.items():
        w = y.get(k)
        if w is None:
            w = a * v
            if w:
                y[k] = w
        else:
            w = w + a * v
            if w:
                y[k] = w
            else:
                del y[k]


def _scaled(a: Scalar, x: dict) -> dict:
    return {k: a * v for k, v in x.items()}


class Span:
    """Reduced echelon basis of a growing set of vectors.

    With ``track=True`` each row stores its expression in the inserted
    generators (indexed by insertion order), and :meth:`add` returns the
    dependency relation when a generator is linearly dependent.
    """

    def __init__(self, key: Callable | None = None, track: bool = False):
        self.key = key
        self.track = track
        self.rows: dict[Hashable, dict] = {}  # pivot -> row (pivot entry is 1)
        self.combos: dict[Hashable, dict] = {}  # pivot -> {generator index: coef}
        self.count = 0

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _pivot(self, v: dict):
        return min(v, key=self.key) if self.key else min(v)

    def reduce(self, v: dict) -> tuple[dict, dict]:
        """Residual of v modulo the span and the combination of rows subtracted."""
        r = dict(v)
        used: dict = {}
        for p in [p for p in r if p in self.rows]:
            c = r.get(p)
            if not c:
                continue
            _axpy(r, -c, self.rows[p])
            used[p] = c
        return r, used

    def add(self, v: dict) -> dict | None:
        """Insert v; return None if it enlarged the span, else a dependency.

        The dependency maps generator indices to coefficients of a vanishing
        combination (tracked spans only; untracked spans return ``{}``).
        """
        idx = self.count
        self.count += 1
        r, used = self.reduce(v)
        combo: dict = {}
        if self.track:
            combo = {idx: ONE}
            for p, c in used.items():
                _axpy(combo, -c, self.combos[p])
        if not r:
            return combo
        p = self._pivot(r)
        inv = r[p].inverse()
        r = _scaled(inv, r)
        if self.track:
            combo = _scaled(inv, combo)
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                _axpy(row, -c, r)
                if self.track:
                    _axpy(self.combos[q], -c, combo)
        self.rows[p] = r
        if self.track:
            self.combos[p] = combo
        return None

    def extend(self, vs: Iterable[dict]) -> list[dict]:
        deps = []
        for v in vs:
            d = self.add(v)
            if d is not None and d:
                deps.append(d)
        return deps

    def contains(self, v: dict) -> bool:
        r, _ = self.reduce(v)
        return not r

    def coordinates(self, v: dict) -> dict | None:
        """Coefficients of v in the inserted generators, or None if v is outside."""
        if not self.track:
            raise ValueError("coordinates need a tracked span")
        r, used = self.reduce(v)
        if r:
            return None
        out: dict = {}
        for p, c in used.items():
            _axpy(out, c, self.combos[p])
        return out

    def basis(self) -> list[dict]:
        keys = sorted(self.rows, key=self.key) if self.key else sorted(self.rows)
        return [dict(self.rows[p]) for p in keys]

    def pivots(self) -> list:
        return sorted(self.rows, key=self.key) if self.key else sorted(self.rows)


# --------------------------------------------------------------------------
# Elements as vectors


def element_vector(e: Element) -> dict:
    return dict(e.terms())


def vector_element(v: dict) -> Element:
    return Element({k: c for k, c in v.items()})


def restrict(vectors: Sequence[dict], allowed: Callable[[Hashable], bool], key=None) -> list[dict]:
    """Basis of span(vectors) ∩ {coordinates outside ``allowed`` vanish}."""
    sp = Span(key=key, track=True)
    deps = []
    for v in vectors:
        d = sp.add({k: c for k, c in v.items() if not allowed(k)})
        if d:
            deps.append(d)
    out = Span(key=key)
    for d in deps:
        w: dict = {}
        for i, c in d.items():
            _axpy(w, c, vectors[i])
        if w:
            out.add(w)
    return out.basis()


# --------------------------------------------------------------------------
# Block matrices


@dataclass
class BlockMatrix:
    """Exact matrix of an operator from an enumerated domain block.

    ``columns[i]`` maps codomain positions to the entries of the image of
    ``domain[i]``.
    """

    domain: list
    codomain: list
    columns: list[dict[int, Scalar]] = field(default_factory=list)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.codomain), len(self.domain))

    def entry(self, r: int, c: int) -> Scalar:
        return self.columns[c].get(r, Scalar())

    def dense(self) -> list[list[Scalar]]:
        rows, cols = self.shape
        out = [[Scalar() for _ in range(cols)] for _ in range(rows)]
        for c, col in enumerate(self.columns):
            for r, x in col.items():
                out[r][c] = x
        return out

    def to_csv(self) -> str:
        """Entries as a CSV grid; each cell is ``a;b;c;d`` (coordinates over 1, i, √2, i√2)."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in self.dense():
            w.writerow([";".join(x.to_json()) for x in row])
        return buf.getvalue()


def block_matrix(A, k: int, Q: int, chirality: str = "all") -> BlockMatrix:
    """Matrix of operator A on P_k ⊗ S^{≤Q} into the codomain sized by its shifts."""
    cfg = A.cfg
    if A.poly_shift is None or A.spin_shift is None:
        raise UnboundedShift(f"operator {A.label} has no declared degree shifts")
    dom = list(block_basis(cfg, k, Q, chirality))
    lo, hi = A.poly_shift
    qmax = Q + A.spin_shift[1]
    cod = []
    if qmax >= 0:
        for kk in range(max(k + lo, 0), k + hi + 1):
            cod.extend(block_basis(cfg, kk, qmax))
    pos = {b: i for i, b in enumerate(cod)}
    cols = []
    for pm, sm in dom:
        col: dict = {}
        for (p2, s2), c in Element._wrap(dict(A.image(pm, sm))).terms().items():
            i = pos.get((p2, s2))
            if i is None:
                raise UnboundedShift(f"image of {pm.to_str()}⊗{sm.to_str()} under {A.label} leaves the declared codomain")
            col[i] = c
        cols.append(col)
    return BlockMatrix(dom, cod, cols)


def kernel_basis(B: BlockMatrix) -> list[dict[int, Scalar]]:
    """Kernel vectors as sparse maps from domain positions to coefficients."""
    sp = Span(track=True)
    out = []
    for col in B.columns:
        d = sp.add(col)
        if d:
            out.append(d)
    return out


def kernel_elements(B: BlockMatrix) -> list[Element]:
    return [Element({B.domain[i]: c for i, c in v.items()}) for v in kernel_basis(B)]


def rank(B: BlockMatrix) -> int:
    sp = Span()
    for col in B.columns:
        sp.add(col)
    return sp.rank


def image_basis(B: BlockMatrix) -> list[dict[int, Scalar]]:
    sp = Span()
    for col in B.columns:
        sp.add(col)
    return sp.basis()


def intersect(U: Sequence[dict], W: Sequence[dict], key=None) -> list[dict]:
    """Basis of span(U) ∩ span(W)."""
    sp = Span(key=key, track=True)
    nu = len(U)
    deps = []
    for v in U:
        d = sp.add(v)
        if d:
            deps.append(d)
    for v in W:
        d = sp.add({k: -c for k, c in v.items()})
        if d:
            deps.append(d)
    out = Span(key=key)
    for d in deps:
        w: dict = {}
        for i, c in d.items():
            if i < nu:
                _axpy(w, c, U[i])
        if w:
            out.add(w)
    return out.basis()


def member(v: dict, vectors: Sequence[dict], key=None) -> bool:
    sp = Span(key=key)
    for u in vectors:
        sp.add(u)
    return sp.contains(v)


def solve(B: BlockMatrix, task: str, other=None):
    """Dispatch ``kernel_basis``, ``rank``, ``image_basis``, ``intersect`` or ``member``."""
    if task == "kernel_basis":
        return kernel_basis(B)
    if task == "rank":
        return rank(B)
    if task == "image_basis":
        return image_basis(B)
    if task == "intersect":
        return intersect(image_basis(B), other)
    if task == "member":
        if isinstance(other, dict) and any(isinstance(k, int) and k >= len(B.codomain) for k in other):
            raise DimensionMismatch("vector has coordinates outside the codomain")
        return member(other, B.columns)
    raise ValueError(f"unknown task {task!r}")


def term_order():
    """Key function putting Element coordinates in graded-lex order."""
    return term_key
