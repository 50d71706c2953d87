"""Verification routines for the decomposition and module-structure results."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from ..errors import FischerSingular, RankUnstable, WindowViolation
from ..exactfield import Scalar
from ..exactla import Span, _axpy, intersect, restrict
from ..operators import HOWE_TAGS, Operator, bracket, make_operator
from ..report import Check, check
from ..superspace import Element, SpaceConfig, block_basis, block_basis_upto, term_key
from .spaces import (
    apply_power,
    chirality_of,
    harmonic_spinors,
    harmonics,
    irr_hk_containment,
    monogenics,
    span_of,
    vec,
)
from .weights import Weight, expected_monogenic_weight, singular_vectors


def _shifted_dimension(cfg: SpaceConfig, k: int) -> int:
    return 2 * k - 2 + cfg.M


def _opposite(ch: str) -> str:
    return {"+": "-", "-": "+"}[ch]


def _t_within(Q: int):
    return lambda key: key[1].t_degree <= Q


# --------------------------------------------------------------------------
# Harmonics and monogenics


def harmonics_check(cfg: SpaceConfig, k: int) -> list[Check]:
    lap = make_operator(cfg, "laplace")
    hs = harmonics(cfg, k)
    out = [check("harmonic kernel", "spherical harmonics", all(not lap(h) for h in hs), dim=len(hs), k=k)]
    cont = irr_hk_containment(cfg, k)
    if cont is not None:
        out.append(check("reducible harmonics submodule", "indecomposable harmonics for M in -2N", cont["ok"], **cont))
    return out


def monogenics_check(cfg: SpaceConfig, k: int, Q: int, chirality: str = "all") -> list[Check]:
    dirac = make_operator(cfg, "dirac")
    euler = make_operator(cfg, "euler")
    ms = monogenics(cfg, k, Q, chirality)
    killed = all(not dirac(v) for v in ms)
    degree = all(euler(v) == v.scale(Scalar(k)) for v in ms)
    shifted = Scalar(k) + Scalar(Fraction(cfg.M, 2))
    return [
        check(
            "monogenic kernel",
            "spherical monogenics",
            killed and degree,
            dim=len(ms),
            k=k,
            Q=Q,
            chirality=chirality,
            lowest_weight=shifted,
        )
    ]


# --------------------------------------------------------------------------
# Fischer decomposition


def fischer_check(cfg: SpaceConfig, k: int, Q: int) -> list[Check]:
    """Split H_k ⊗ S^{≤Q} into monogenic and x·monogenic parts exactly."""
    lam = _shifted_dimension(cfg, k)
    if lam == 0:
        raise FischerSingular(f"k = 1 - M/2 (k={k}, M={cfg.M}); the monogenic projection is undefined")
    c = Scalar(Fraction(1, lam))
    dirac = make_operator(cfg, "dirac")
    x = make_operator(cfg, "vector")
    bad = None
    chir_ok = True
    hs = harmonic_spinors(cfg, k, Q)
    for h in hs:
        dh = dirac(h)
        mono = h + x(dh).scale(c)
        if dirac(mono) or dirac(dh):
            bad = h
            break
        if cfg.m % 2 == 0:
            ch = chirality_of(h)
            if chirality_of(mono) not in (ch, None) or (dh and chirality_of(dh) != _opposite(ch)):
                chir_ok = False
                bad = h
                break
    checks = [
        check(
            "projection onto monogenics",
            "refined Fischer decomposition of harmonics",
            bad is None,
            basis_size=len(hs),
            coefficient=c,
            counterexample=bad,
        )
    ]
    if cfg.m % 2 == 0:
        checks.append(check("chirality refinement", "refined Fischer decomposition, even m", chir_ok))
    mk = monogenics(cfg, k, Q)
    lower = monogenics(cfg, k - 1, Q - 1) if k >= 1 and Q >= 1 else []
    x_lower = [x(v) for v in lower]
    inter = intersect([vec(v) for v in mk], [vec(v) for v in x_lower], key=term_key)
    checks.append(
        check(
            "monogenics meet x-monogenics trivially",
            "Dirac of x times monogenic",
            not inter,
            dim_Mk=len(mk),
            dim_xMk_minus_1=span_of(x_lower).rank,
            dim_intersection=len(inter),
        )
    )
    return checks


# --------------------------------------------------------------------------
# Casimir


@dataclass
class CasimirResult:
    k: int
    Q: int
    shift: int
    kind: str  # "eigenvalues" | "nilpotent" | "fail"
    eigenvalues: list[int] = field(default_factory=list)
    basis_size: int = 0
    counterexample: Element | None = None

    def to_json(self):
        return {
            "k": self.k,
            "Q": self.Q,
            "shift": self.shift,
            "kind": self.kind,
            "eigenvalues": self.eigenvalues,
            "basis_size": self.basis_size,
            "counterexample": None if self.counterexample is None else self.counterexample.to_json(),
        }


def casimir_test(cfg: SpaceConfig, k: int, Q: int) -> CasimirResult:
    """Spectrum of C = x∂x on H_k ⊗ S^{≤Q}."""
    if k < 1:
        raise ValueError("casimir_test needs k >= 1")
    lam = _shifted_dimension(cfg, k)
    C = make_operator(cfg, "casimir")
    hs = harmonic_spinors(cfg, k, Q)
    some_c = some_shift = False
    for h in hs:
        ch = C(h)
        shifted = ch + h.scale(Scalar(lam))
        some_c = some_c or bool(ch)
        some_shift = some_shift or bool(shifted)
        if C(shifted):
            return CasimirResult(k, Q, lam, "fail", basis_size=len(hs), counterexample=h)
    if lam:
        ok = some_c and some_shift
        return CasimirResult(k, Q, lam, "eigenvalues" if ok else "fail", [0, -lam] if ok else [], len(hs))
    return CasimirResult(k, Q, lam, "nilpotent" if some_c else "fail", [0] if some_c else [], len(hs))


def casimir_check(cfg: SpaceConfig, k: int, Q: int) -> list[Check]:
    r = casimir_test(cfg, k, Q)
    if r.shift:
        return [check("Casimir quadratic relation", "Casimir of H_k tensor S", r.kind == "eigenvalues", **r.to_json())]
    return [check("Casimir nilpotent, not diagonalizable", "non-diagonalizable Casimir", r.kind == "nilpotent", **r.to_json())]


# --------------------------------------------------------------------------
# Submodules of the monogenics in the reducible window


def submodule_window(cfg: SpaceConfig) -> tuple[int, int] | None:
    if cfg.m % 2 or cfg.d > cfg.n:
        return None
    return 1 + cfg.n - cfg.d, 1 + 2 * cfg.n - 2 * cfg.d


def submodule_check(cfg: SpaceConfig, k: int, Q: int) -> list[Check]:
    """Containment and uniqueness of the x-power submodule of M_k^± at cut Q."""
    win = submodule_window(cfg)
    if win is None or not win[0] <= k <= win[1]:
        raise WindowViolation(f"(m,n,k)=({cfg.m},{cfg.n},{k}) is outside the reducible window {win}")
    d, n = cfg.d, cfg.n
    e = 2 * d - 2 * n + 2 * k - 1
    low = 2 * n - 2 * d - k + 1
    x = make_operator(cfg, "vector")
    dirac = make_operator(cfg, "dirac")
    out = []
    for ch in "+-":
        opp = _opposite(ch)
        mk = monogenics(cfg, k, Q, ch)
        mk_span = span_of(mk)
        sub = [apply_power(x, v, e) for v in monogenics(cfg, low, max(Q - e, 0), opp)] if Q >= e else []
        contained = all(not dirac(v) and mk_span.contains(vec(v)) for v in sub)
        out.append(
            check(
                f"x^{e} M_{low}^{opp} inside M_{k}^{ch}",
                "indecomposable monogenics",
                contained and bool(sub),
                exponent=e,
                lower_degree=low,
                dim_image=span_of(sub).rank,
                dim_Mk=len(mk),
            )
        )
        dims = []
        for extra in (0, 1):
            lhs, rhs = _intersection_sides(cfg, k, Q, ch, e, low, extra, mk)
            dims.append((len(lhs), len(rhs), _same_span(lhs, rhs)))
        ok = all(s for _, _, s in dims)
        out.append(
            check(
                f"unique submodule of M_{k}^{ch}",
                "only submodule of the monogenics",
                ok,
                dim_intersection=dims[0][0],
                dim_x_power_image=dims[0][1],
                stable_at_next_cut=dims[1][2] and dims[1][0] == dims[0][0],
                dims_next_cut=[dims[1][0], dims[1][1]],
            )
        )
    return out


def _intersection_sides(cfg, k, Q, ch, e, low, extra, mk):
    """M_k^{ch,≤Q} ∩ x(P_{k-1} ⊗ S^{opp}) versus the x-power image, both at t-degree ≤ Q.

    ``extra`` enlarges the auxiliary truncations to probe stability.
    """
    opp = _opposite(ch)
    x = make_operator(cfg, "vector")
    allowed = _t_within(Q)
    dom = block_basis(cfg, k - 1, Q + 1 + extra, opp)
    x_img = restrict([x.on_basis(pm, sm).terms() for pm, sm in dom], allowed, key=term_key)
    lhs = intersect([vec(v) for v in mk], x_img, key=term_key)
    pw = [apply_power(x, v, e).terms() for v in monogenics(cfg, low, Q + e + extra, opp)]
    rhs = restrict(pw, allowed, key=term_key)
    return lhs, rhs


def _same_span(a, b) -> bool:
    sa, sb = Span(key=term_key), Span(key=term_key)
    sa.extend(a)
    sb.extend(b)
    return sa.rank == sb.rank and all(sa.contains(v) for v in b)


# --------------------------------------------------------------------------
# Singular vectors


def singular_check(cfg: SpaceConfig, k: int, Q: int, chirality: str = "all") -> list[Check]:
    space = monogenics(cfg, k, Q, chirality)
    found = singular_vectors(cfg, space)
    expected = expected_monogenic_weight(cfg, k, chirality)
    weights = [w for _, w in found]
    top = max(weights, key=lambda w: w.entries) if weights else None
    reducible = _reducible(cfg, k)
    if reducible:
        ok = top == expected
    else:
        ok = len(found) == 1 and top == expected
    return [
        check(
            "singular vector weights",
            "spherical monogenics as highest weight modules",
            ok,
            k=k,
            Q=Q,
            chirality=chirality,
            expected=expected,
            found=weights,
            vectors=[v for v, _ in found],
            unique=len(found) == 1,
            root_order="lexicographic in (eps_1..eps_d, delta_1..delta_n)",
        )
    ]


def _reducible(cfg: SpaceConfig, k: int) -> bool:
    win = submodule_window(cfg)
    return win is not None and win[0] <= k <= win[1]


# --------------------------------------------------------------------------
# Powers of the conformal operator on the constant


def pi_power_test(cfg: SpaceConfig, k_max: int | None = None) -> dict:
    """Nonvanishing of Π_1^k(1⊗1), with the exact vanishing order when M = -2p."""
    M = cfg.M
    negeven = M <= 0 and M % 2 == 0
    p = -M // 2 if negeven else None
    if k_max is None:
        k_max = 2 * p + 2 if negeven else 6
    pi = make_operator(cfg, ("Pi", 1))
    v = Element({(b[0], b[1]): Scalar(1) for b in block_basis_upto(cfg, 0, 0)})
    table = []
    for k in range(1, k_max + 1):
        v = pi(v)
        degs = v.poly_degrees() if v else []
        table.append({"k": k, "zero": not v, "degrees": sorted(degs)})
    if negeven:
        nonzero_ok = all(not r["zero"] for r in table if r["k"] <= 2 * p + 1)
        vanish = next((r["zero"] for r in table if r["k"] == 2 * p + 2), None)
    else:
        nonzero_ok = all(not r["zero"] for r in table)
        vanish = None
    return {"M": M, "p": p, "table": table, "nonzero_ok": nonzero_ok, "vanishes_at_2p_plus_2": vanish}


def pi_power_check(cfg: SpaceConfig, k_max: int | None = None) -> list[Check]:
    r = pi_power_test(cfg, k_max)
    out = [check("powers of Pi_1 on the constant are nonzero", "irreducibility of the conformal module", r["nonzero_ok"], **r)]
    if r["p"] is not None:
        out.append(
            check(
                "Pi_1^(2p+2) kills the constant",
                "degree bound on x R^(2p)",
                bool(r["vanishes_at_2p_plus_2"]),
                p=r["p"],
            )
        )
    return out


# --------------------------------------------------------------------------
# Howe closure


def osp_dimension(p: int, q: int) -> int:
    """dim osp(p|q) for even q."""
    return comb(p, 2) + q * (q + 1) // 2 + p * q


def howe_generators(cfg: SpaceConfig) -> list[Operator]:
    N = cfg.dim
    return [make_operator(cfg, ("howe_gen", t, i, j)) for t in HOWE_TAGS for i in range(1, N + 1) for j in range(1, N + 1)]


def _stack(op: Operator, domain) -> dict:
    out = {}
    for pm, sm in domain:
        for key, c in op.on_basis(pm, sm).terms().items():
            out[((pm, sm), key)] = c
    return out


def _stack_key(t):
    return (term_key(t[0]), term_key(t[1]))


def howe_closure_check(cfg: SpaceConfig, D_cut: int = 2, Q_cut: int = 2) -> dict:
    """Rank of the generator span at a cut, its stability, and closure under brackets."""
    expected = osp_dimension(cfg.m + 4 * cfg.n, 2 * cfg.m + 2 * cfg.n)
    gens = howe_generators(cfg)

    def span_at(D):
        dom = list(block_basis_upto(cfg, D, Q_cut))
        sp = Span(key=_stack_key, track=True)
        indep = []
        for idx, g in enumerate(gens):
            if sp.add(_stack(g, dom)) is None:
                indep.append(idx)
        return sp, indep, dom

    sp, indep, dom = span_at(D_cut)
    sp_next, indep_next, dom_next = span_at(D_cut + 1)
    if sp.rank != sp_next.rank:
        raise RankUnstable(f"rank {sp.rank} at cut {D_cut} but {sp_next.rank} at cut {D_cut + 1}")
    basis_ops = [gens[i] for i in indep]
    failures = []
    pairs = 0
    for a in range(len(basis_ops)):
        for b in range(a, len(basis_ops)):
            pairs += 1
            br = bracket(basis_ops[a], basis_ops[b])
            co = sp.coordinates(_stack(br, dom))
            if co is None:
                failures.append((basis_ops[a].label, basis_ops[b].label, "outside span"))
                continue
            # confirm the same combination on the larger cut
            combo: dict = {}
            for i, c in co.items():
                _axpy(combo, c, _stack(gens[i], dom_next))
            if combo != _stack(br, dom_next):
                failures.append((basis_ops[a].label, basis_ops[b].label, "combination fails at the larger cut"))
    return {
        "rank": sp.rank,
        "expected_rank": expected,
        "rank_next_cut": sp_next.rank,
        "generators": len(gens),
        "independent_generators": len(indep),
        "pairs_checked": pairs,
        "failures": failures[:10],
        "closed": not failures,
        "D_cut": D_cut,
        "Q_cut": Q_cut,
    }


def howe_check(cfg: SpaceConfig, D_cut: int = 2, Q_cut: int = 2) -> list[Check]:
    r = howe_closure_check(cfg, D_cut, Q_cut)
    return [
        check("generator span dimension", "orthosymplectic algebra generated by the Howe generators", r["rank"] == r["expected_rank"], **{k: r[k] for k in ("rank", "expected_rank", "rank_next_cut", "generators", "D_cut", "Q_cut")}),
        check("closure under brackets", "orthosymplectic algebra generated by the Howe generators", r["closed"], pairs_checked=r["pairs_checked"], failures=r["failures"]),
    ]


# --------------------------------------------------------------------------
# Aggregate report


@dataclass
class ModuleReport:
    """Everything computed for one (m, n, k, Q) cell."""

    m: int
    n: int
    k: int
    Q: int
    dimensions: dict
    submodule_dimensions: dict
    casimir: dict | None
    singular: list
    checks: list[Check]

    def to_json(self):
        return {
            "parameters": {"m": self.m, "n": self.n, "k": self.k, "Q": self.Q},
            "dimensions": self.dimensions,
            "submodule_dimensions": self.submodule_dimensions,
            "casimir": self.casimir,
            "singular": self.singular,
            "flags": {c.name: c.status for c in self.checks},
        }


def module_report(cfg: SpaceConfig, k: int, Q: int) -> ModuleReport:
    checks: list[Check] = []
    dims = {"H_k": len(harmonics(cfg, k)), "M_k": len(monogenics(cfg, k, Q))}
    if cfg.m % 2 == 0:
        dims["M_k^+"] = len(monogenics(cfg, k, Q, "+"))
        dims["M_k^-"] = len(monogenics(cfg, k, Q, "-"))
    checks += harmonics_check(cfg, k)
    checks += monogenics_check(cfg, k, Q)
    sub: dict = {}
    if _reducible(cfg, k):
        sc = submodule_check(cfg, k, Q)
        checks += sc
        sub = {c.name: c.data.get("dim_intersection", c.data.get("dim_image")) for c in sc}
    cas = None
    if k >= 1:
        r = casimir_test(cfg, k, Q)
        cas = r.to_json()
        checks += casimir_check(cfg, k, Q)
    sing = []
    if cfg.d + cfg.n:
        chir = ["+", "-"] if cfg.m % 2 == 0 else ["all"]
        for ch in chir:
            sc = singular_check(cfg, k, Q, ch)
            checks += sc
            sing.append({"chirality": ch, "weights": [str(w) for w in sc[0].data["found"]]})
    return ModuleReport(cfg.m, cfg.n, k, Q, dims, sub, cas, sing, checks)


__all__ = [
    "Weight",
    "CasimirResult",
    "ModuleReport",
    "casimir_check",
    "casimir_test",
    "fischer_check",
    "harmonics_check",
    "howe_check",
    "howe_closure_check",
    "howe_generators",
    "module_report",
    "monogenics_check",
    "osp_dimension",
    "pi_power_check",
    "pi_power_test",
    "singular_check",
    "submodule_check",
    "submodule_window",
]
