"""Named verification suites, each returning a list of checks."""

from __future__ import annotations

from fractions import Fraction

from .analysis import (
    casimir_check,
    fischer_check,
    harmonics_check,
    howe_check,
    monogenics_check,
    pi_power_check,
    singular_check,
    submodule_check,
)
from .analysis.checks import submodule_window
from .errors import FischerSingular, WindowViolation
from .exactfield import Scalar
from .operators import (
    bracket,
    commutator,
    conf_grade,
    conf_metric,
    equal_on,
    identity,
    make_operator,
    sum_ops,
    zero,
)
from .report import SKIP, Check, check
from .superspace import SpaceConfig


def _sg(b: int) -> int:
    return -1 if b & 1 else 1


def _eq(name: str, anchor: str, a, b, k_max: int, Q_max: int) -> Check:
    r = equal_on(a, b, k_max, Q_max)
    return check(name, anchor, r.equal, **r.to_json())


def _all_eq(name: str, anchor: str, pairs, k_max: int, Q_max: int) -> Check:
    """One check over many operator pairs; stops at the first counterexample."""
    n = 0
    for label, a, b in pairs:
        r = equal_on(a, b, k_max, Q_max)
        n += 1
        if not r.equal:
            return check(name, anchor, False, cases_checked=n, failing_case=label, **r.to_json())
    return check(name, anchor, True, cases_checked=n)


def osp12_suite(cfg: SpaceConfig, deg: int = 4, spin_cut: int = 3) -> list[Check]:
    mk = lambda s: make_operator(cfg, s)  # noqa: E731
    D, X, L, R, E = mk("dirac"), mk("vector"), mk("laplace"), mk("r2"), mk("euler")
    Id, M = identity(cfg), cfg.M
    shifted = E + Id * Scalar(Fraction(M, 2))
    anchor = "osp(1|2) generated by Dirac and vector variable"
    rels = [
        ("Dirac squared is minus Laplace", D @ D, -L),
        ("vector squared is minus R^2", X @ X, -R),
        ("Dirac-vector anticommutator", bracket(D, X), E * (-2) - Id * M),
        ("vector with vector square", bracket(X, X @ X), zero(cfg)),
        ("Dirac with vector square", bracket(D, X @ X), X * (-2)),
        ("vector with Laplace", bracket(X, L), D * (-2)),
        ("Dirac with Laplace", bracket(D, L), zero(cfg)),
        ("vector with shifted Euler", bracket(X, shifted), -X),
        ("Dirac with shifted Euler", bracket(D, shifted), D),
    ]
    out = [_eq(n, anchor, a, b, deg, spin_cut) for n, a, b in rels]
    out.append(_eq("Stein-Weiss form equals Clifford form", "Dirac operator as Clifford contraction", D, mk("dirac_sw"), deg, spin_cut))
    return out


def invariance_suite(cfg: SpaceConfig, deg: int = 3, spin_cut: int = 2) -> list[Check]:
    mk = lambda s: make_operator(cfg, s)  # noqa: E731
    N, gr, g = cfg.dim, cfg.grade, cfg.g
    D, Z = mk("dirac"), zero(cfg)
    out = [
        _all_eq(
            "Dirac commutes with K_ij",
            "osp(m|2n) invariance of the Dirac operator",
            ((f"K({i},{j})", commutator(D, mk(("K", i, j))), Z) for i in range(1, N + 1) for j in range(1, N + 1)),
            deg,
            spin_cut,
        )
    ]

    def comm_pairs():
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                for k in range(1, N + 1):
                    for l in range(1, N + 1):
                        terms = []
                        if g(k, j):
                            terms.append(mk(("K", i, l)) * g(k, j))
                        if g(l, i):
                            terms.append(mk(("K", j, k)) * (_sg(gr(i) * (gr(j) + gr(k))) * g(l, i)))
                        if g(l, j):
                            terms.append(mk(("K", i, k)) * (-_sg(gr(k) * gr(l)) * g(l, j)))
                        if g(k, i):
                            terms.append(mk(("K", j, l)) * (-_sg(gr(i) * gr(j)) * g(k, i)))
                        rhs = sum_ops(terms, "rhs") if terms else Z
                        yield f"[K({i},{j}),K({k},{l})]", bracket(mk(("K", i, j)), mk(("K", k, l))), rhs

    out.append(_all_eq("K_ij bracket relations", "orthosymplectic commutation relations", comm_pairs(), deg, spin_cut))

    def b_pairs():
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                for k in range(1, N + 1):
                    terms = []
                    if g(k, j):
                        terms.append(mk(("Ehat", i)) * g(k, j))
                    if g(k, i):
                        terms.append(mk(("Ehat", j)) * (-_sg(gr(i) * gr(j)) * g(k, i)))
                    rhs = sum_ops(terms, "rhs") if terms else Z
                    yield f"[B({i},{j}),Ehat({k})]", bracket(mk(("B", i, j)), mk(("Ehat", k))), rhs

    out.append(_all_eq("bivectors act on hatted generators", "bivector action on Clifford vectors", b_pairs(), deg, spin_cut))
    return out


def conformal_suite(cfg: SpaceConfig, deg: int = 3, spin_cut: int = 2) -> list[Check]:
    mk = lambda s: make_operator(cfg, s)  # noqa: E731
    N = cfg.dim
    D, Z = mk("dirac"), zero(cfg)
    out = [
        _all_eq(
            "Dirac intertwines Pi_j",
            "conformal generalized symmetries",
            ((f"Pi({j})", D @ mk(("Pi", j)), (mk(("Pi", j)) + mk(("mul", j)) * 2) @ D) for j in range(1, N + 1)),
            deg,
            spin_cut,
        )
    ]
    h = lambda a, b: conf_metric(cfg, a, b)  # noqa: E731
    cg = lambda a: conf_grade(cfg, a)  # noqa: E731
    K = lambda a, b: mk(("Kconf", a, b))  # noqa: E731
    idx = list(range(-1, N + 1))

    def pairs():
        for a in idx:
            for b in idx:
                for c in idx:
                    for d in idx:
                        terms = []
                        if h(c, b):
                            terms.append(K(a, d) * h(c, b))
                        if h(d, a):
                            terms.append(K(b, c) * (_sg(cg(a) * (cg(b) + cg(c))) * h(d, a)))
                        if h(d, b):
                            terms.append(K(a, c) * (-_sg(cg(c) * cg(d)) * h(d, b)))
                        if h(c, a):
                            terms.append(K(b, d) * (-_sg(cg(a) * cg(b)) * h(c, a)))
                        rhs = sum_ops(terms, "rhs") if terms else Z
                        yield f"[K({a},{b}),K({c},{d})]", bracket(K(a, b), K(c, d)), rhs

    out.append(_all_eq("conformal algebra relations", "conformal symmetry algebra osp(m+1,1|2n)", pairs(), deg, spin_cut))
    return out


def _needs_m_above_2(cfg: SpaceConfig, name: str, anchor: str) -> list[Check] | None:
    if cfg.m <= 2:
        return [Check(name, anchor, SKIP, {"reason": "the result assumes m > 2"})]
    return None


def fischer_suite(cfg: SpaceConfig, k: int, Q: int) -> list[Check]:
    anchor = "refined Fischer decomposition of harmonics"
    skip = _needs_m_above_2(cfg, "Fischer decomposition", anchor)
    if skip:
        return skip
    try:
        return fischer_check(cfg, k, Q)
    except FischerSingular as exc:
        return [check("Fischer decomposition", anchor, False, k=k, reason="FischerSingular: k = 1 − M/2", detail=str(exc))]


def monogenics_suite(cfg: SpaceConfig, k: int, Q: int) -> list[Check]:
    out = harmonics_check(cfg, k) + monogenics_check(cfg, k, Q)
    if cfg.m % 2 == 0:
        out += monogenics_check(cfg, k, Q, "+") + monogenics_check(cfg, k, Q, "-")
    return out


def casimir_suite(cfg: SpaceConfig, k: int, Q: int) -> list[Check]:
    skip = _needs_m_above_2(cfg, "Casimir", "Casimir of H_k tensor S")
    return skip or casimir_check(cfg, k, Q)


def submodule_suite(cfg: SpaceConfig, k: int, Q: int) -> list[Check]:
    anchor = "indecomposable monogenics"
    skip = _needs_m_above_2(cfg, "submodule structure", anchor)
    if skip:
        return skip
    try:
        return submodule_check(cfg, k, Q)
    except WindowViolation as exc:
        return [Check("submodule structure", anchor, SKIP, {"reason": f"WindowViolation: {exc}", "window": submodule_window(cfg)})]


def singular_suite(cfg: SpaceConfig, k: int, Q: int) -> list[Check]:
    skip = _needs_m_above_2(cfg, "singular vector weights", "spherical monogenics as highest weight modules")
    if skip:
        return skip
    if cfg.m % 2:
        return singular_check(cfg, k, Q)
    return singular_check(cfg, k, Q, "+") + singular_check(cfg, k, Q, "-")


def pi_power_suite(cfg: SpaceConfig, k_max: int | None = None) -> list[Check]:
    return pi_power_check(cfg, k_max)


def howe_suite(cfg: SpaceConfig, deg: int = 2, spin_cut: int = 2) -> list[Check]:
    return howe_check(cfg, deg, spin_cut)


CELL_SUITES = {
    "fischer": fischer_suite,
    "monogenics": monogenics_suite,
    "casimir": casimir_suite,
    "submodule": submodule_suite,
    "singular": singular_suite,
}


def run_cell(suite: str, m: int, n: int, k: int, Q: int) -> list[dict]:
    """Worker entry point; returns serialized checks so results cross process boundaries."""
    cfg = SpaceConfig(m, n)
    return [c.to_json() for c in CELL_SUITES[suite](cfg, k, Q)]
