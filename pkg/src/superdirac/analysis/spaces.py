"""Kernel computations: spherical harmonics and spherical monogenics."""

from __future__ import annotations

from ..clifford import spinor
from ..exactla import Span
from ..operators import Operator, make_operator
from ..superspace import (
    Element,
    SpaceConfig,
    block_basis,
    multiply,
    poly_basis,
    spin_one,
    spinor_basis,
    term_key,
)


def vec(e: Element) -> dict:
    return e.terms()


def elements(vs) -> list[Element]:
    return [Element(v) for v in vs]


def kernel_on(op: Operator, domain) -> list[Element]:
    """Exact kernel of ``op`` restricted to the span of the given basis monomials.

    Images are computed in full; nothing is projected away.
    """
    sp = Span(key=term_key, track=True)
    out = []
    for pm, sm in domain:
        dep = sp.add(op.on_basis(pm, sm).terms())
        if dep:
            out.append(Element({domain[i]: c for i, c in dep.items()}))
    return out


def span_of(elts, key=term_key) -> Span:
    sp = Span(key=key)
    for e in elts:
        sp.add(vec(e))
    return sp


def echelon(elts) -> list[Element]:
    """Reduced echelon basis of the span of the given elements."""
    return elements(span_of(elts).basis())


def harmonics(cfg: SpaceConfig, k: int) -> list[Element]:
    """Basis of H_k = ker Δ ∩ P_k (trivial spinor factor)."""
    one = spin_one(cfg)
    dom = [(p, one) for p in poly_basis(cfg, k)]
    return kernel_on(make_operator(cfg, "laplace"), dom)


def monogenics(cfg: SpaceConfig, k: int, Q: int, chirality: str = "all") -> list[Element]:
    """Basis of M_k ∩ (P_k ⊗ S^{≤Q}); ``chirality`` picks S^± for even m."""
    if chirality != "all" and cfg.m % 2:
        raise ValueError("chirality is only defined for even m")
    dom = list(block_basis(cfg, k, Q, chirality))
    return kernel_on(make_operator(cfg, "dirac"), dom)


def harmonic_spinors(cfg: SpaceConfig, k: int, Q: int, chirality: str = "all") -> list[Element]:
    """Basis h ⊗ v of H_k ⊗ S^{≤Q}."""
    hs = harmonics(cfg, k)
    out = []
    for h in hs:
        for sm in spinor_basis(cfg, Q, chirality):
            out.append(multiply(h, spinor(cfg, _theta_list(sm.theta), sm.t)))
    return out


def _theta_list(mask: int) -> list[int]:
    return [a + 1 for a in range(mask.bit_length()) if (mask >> a) & 1]


def chirality_of(e: Element) -> str | None:
    ps = {sm.lam_degree & 1 for (_, sm) in e.terms()}
    if len(ps) != 1:
        return None
    return "+" if ps.pop() == 0 else "-"


def apply_power(op: Operator, e: Element, times: int) -> Element:
    for _ in range(times):
        e = op(e)
    return e


def irr_hk_containment(cfg: SpaceConfig, k: int) -> dict | None:
    """Submodule R^{2k+M-2} H_{2-M-k} ⊆ H_k when M ∈ -2N and 2 - M/2 ≤ k ≤ 2 - M.

    Returns ``None`` outside that window, else a dict with the verdict.
    """
    M = cfg.M
    if M > 0 or M % 2:
        return None
    if not (2 - M // 2 <= k <= 2 - M):
        return None
    low = 2 - M - k
    power = (2 * k + M - 2) // 2
    r2 = make_operator(cfg, "r2")
    lap = make_operator(cfg, "laplace")
    hk = span_of(harmonics(cfg, k))
    images = [apply_power(r2, h, power) for h in harmonics(cfg, low)]
    ok = all(not lap(v) and hk.contains(vec(v)) for v in images)
    sub = span_of(images)
    return {"ok": ok, "low_degree": low, "r2_power": power, "submodule_dim": sub.rank, "dim_Hk": hk.rank}
