"""The twelve acceptance criteria, all exact over Q(i, sqrt2).

Each test records a PASS/FAIL line that pytest prints in its summary; run
``python tests/test_acceptance.py`` to execute only these.
"""

import sys
import time
from fractions import Fraction
from functools import lru_cache

import pytest

from superdirac.analysis import (
    Weight,
    casimir_test,
    fischer_check,
    harmonics,
    howe_closure_check,
    monogenics,
    pi_power_test,
    singular_check,
    submodule_check,
)
from superdirac.errors import FischerSingular
from superdirac.exprdsl import golden_corpus, normal_order, verify_identity
from superdirac.superspace import SpaceConfig
from superdirac.suites import conformal_suite, invariance_suite, osp12_suite

from oracles import classical_harmonic_dimension, classical_monogenic_dimension, osp_dimension

H = Fraction(1, 2)
OSP12_CONFIGS = [(3, 1), (4, 2), (5, 1), (5, 0), (3, 0)]


@lru_cache(maxsize=None)
def _osp12(m, n):
    start = time.perf_counter()
    checks = osp12_suite(SpaceConfig(m, n), 4, 3)
    return checks, time.perf_counter() - start


def _failed(checks):
    return [c.name for c in checks if not c.passed]


def test_criterion_01_osp12_relations(acceptance):
    bad, times = {}, {}
    for m, n in OSP12_CONFIGS:
        checks, elapsed = _osp12(m, n)
        relations = [c for c in checks if not c.name.startswith("Stein-Weiss")]
        assert len(relations) == 9
        times[(m, n)] = round(elapsed, 1)
        if _failed(relations):
            bad[(m, n)] = _failed(relations)
    ok = not bad and max(times.values()) < 120
    acceptance(1, ok, f"osp(1|2) relations on P<=4 x S<=3, seconds per config {times}" + (f", failures {bad}" if bad else ""))
    assert ok


def test_criterion_02_stein_weiss(acceptance):
    bad = []
    for m, n in OSP12_CONFIGS:
        sw = [c for c in _osp12(m, n)[0] if c.name.startswith("Stein-Weiss")]
        if len(sw) != 1 or not sw[0].passed:
            bad.append((m, n))
    ok = not bad
    acceptance(2, ok, "Stein-Weiss form equals the Clifford form" + (f", failing {bad}" if bad else ""))
    assert ok


def test_criterion_03_invariance(acceptance):
    checks = invariance_suite(SpaceConfig(3, 1), 3, 2)
    names = [c.name for c in checks]
    ok = len(checks) == 3 and not _failed(checks)
    acceptance(3, ok, f"(3,1) on P<=3 x S<=2: {names}" + (f", failing {_failed(checks)}" if not ok else ""))
    assert ok


def test_criterion_04_conformal(acceptance):
    start = time.perf_counter()
    checks = conformal_suite(SpaceConfig(3, 1), 3, 2)
    elapsed = time.perf_counter() - start
    ok = len(checks) == 2 and not _failed(checks) and elapsed < 300
    acceptance(4, ok, f"(3,1) Pi_j intertwining and conformal brackets, {elapsed:.0f} s")
    assert ok


def test_criterion_05_fischer(acceptance):
    cells = [((3, 1), k) for k in range(1, 5)] + [((5, 0), k) for k in range(1, 4)]
    bad = []
    for (m, n), k in cells:
        checks = fischer_check(SpaceConfig(m, n), k, k + 2)
        if _failed(checks) or checks[-1].data["dim_intersection"] != 0:
            bad.append((m, n, k))
    try:
        fischer_check(SpaceConfig(4, 2), 1, 3)
        singular_raised = False
    except FischerSingular:
        singular_raised = True
    ok = not bad and singular_raised
    acceptance(5, ok, f"{len(cells)} cells exact, (4,2) k=1 raises FischerSingular: {singular_raised}" + (f", failing {bad}" if bad else ""))
    assert ok


def test_criterion_06_casimir(acceptance):
    regular = casimir_test(SpaceConfig(3, 1), 1, 3)
    nilpotent = casimir_test(SpaceConfig(4, 2), 1, 3)
    ok = (
        regular.kind == "eigenvalues"
        and regular.eigenvalues == [0, -1]
        and nilpotent.shift == 0
        and nilpotent.kind == "nilpotent"
    )
    acceptance(6, ok, f"(3,1) k=1 spectrum {regular.eigenvalues}; (4,2) k=1 {nilpotent.kind} on {nilpotent.basis_size} vectors")
    assert ok


def test_criterion_07_submodule(acceptance):
    checks = submodule_check(SpaceConfig(4, 2), 1, 3)
    uniq = [c for c in checks if c.name.startswith("unique")]
    dims_match = all(c.data["dim_intersection"] == c.data["dim_x_power_image"] for c in uniq)
    ok = len(checks) == 4 and not _failed(checks) and dims_match
    summary = {c.name: c.data.get("dim_intersection", c.data.get("dim_image")) for c in checks}
    acceptance(7, ok, f"(4,2) k=1 Q=3 {summary}")
    assert ok


def test_criterion_08_pi_powers(acceptance):
    odd = pi_power_test(SpaceConfig(3, 1), 6)
    neg = pi_power_test(SpaceConfig(4, 3), 4)
    zeros = [row["zero"] for row in neg["table"]]
    ok = odd["nonzero_ok"] and all(not r["zero"] for r in odd["table"]) and len(odd["table"]) == 6 and zeros[2] is False and zeros[3] is True
    acceptance(8, ok, f"(3,1) nonzero for k<=6; (4,3) zero pattern for k=1..4 {zeros}")
    assert ok


def test_criterion_09_singular_weights(acceptance):
    found = {}
    ok = True
    for k in range(3):
        c = singular_check(SpaceConfig(3, 1), k, k + 2)[0]
        found[(3, 1, k)] = [str(w) for w in c.data["found"]]
        ok = ok and c.data["unique"] and c.data["found"] == [Weight((k + H,), (-H,))]
    c = singular_check(SpaceConfig(5, 0), 1, 3)[0]
    found[(5, 0, 1)] = [str(w) for w in c.data["found"]]
    ok = ok and c.data["unique"] and c.data["found"] == [Weight((Fraction(3, 2), H), ())]
    acceptance(9, ok, f"weights {found}")
    assert ok


def test_criterion_10_howe_closure(acceptance):
    start = time.perf_counter()
    r = howe_closure_check(SpaceConfig(3, 1))
    elapsed = time.perf_counter() - start
    expected = osp_dimension(3 + 4, 2 * 3 + 2)
    ok = r["rank"] == expected == 113 and r["rank_next_cut"] == r["rank"] and r["closed"] and elapsed < 600
    acceptance(10, ok, f"rank {r['rank']} (expected {expected}), next cut {r['rank_next_cut']}, {r['pairs_checked']} brackets closed: {r['closed']}, {elapsed:.0f} s")
    assert ok


def test_criterion_11_two_routes(acceptance):
    cfg = SpaceConfig(3, 1)
    results = [verify_identity(cfg, lhs, rhs) for _, lhs, rhs in golden_corpus(cfg)]
    bad = [(r.lhs, r.rhs, r.status) for r in results if r.status != "pass"]
    lhs = normal_order(cfg, "dirac*vector + vector*dirac")
    rhs = normal_order(cfg, "-2*euler - M")
    symbolic = lhs == rhs and (lhs - rhs).is_zero()
    ok = not bad and symbolic
    acceptance(11, ok, f"{len(results)} corpus identities, {len(bad)} not passing; anticommutator normal form {lhs}")
    assert ok


def test_criterion_12_classical_limit(acceptance):
    cfg = SpaceConfig(3, 0)
    dims = [(len(harmonics(cfg, k)), len(monogenics(cfg, k, 0))) for k in range(6)]
    ok = all(h == 2 * k + 1 == classical_harmonic_dimension(3, k) and mk == 2 * (k + 1) == classical_monogenic_dimension(3, k) for k, (h, mk) in enumerate(dims))
    acceptance(12, ok, f"(3,0) (dim H_k, dim M_k) for k=0..5: {dims}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
