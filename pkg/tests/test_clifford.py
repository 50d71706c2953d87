import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superdirac.clifford import (
    CliffordElement,
    bivector,
    e_perp,
    hat,
    kappa,
    kappa_of,
    spinor,
)
from superdirac.exactfield import I, SQRT2
from superdirac.superspace import SpaceConfig, spinor_basis

CFG = SpaceConfig(3, 1)
CONFIGS = [SpaceConfig(3, 1), SpaceConfig(4, 1), SpaceConfig(2, 2), SpaceConfig(5, 0)]


def gen(k, cfg=CFG):
    return CliffordElement.gen(cfg, k)


def test_bosonic_generator_squares_to_minus_one():
    assert gen(1) * gen(1) == -1


def test_symplectic_pair_commutator():
    assert gen(4) * gen(5) - gen(5) * gen(4) == 2


def test_mixed_generators_anticommute():
    assert gen(1) * gen(4) + gen(4) * gen(1) == 0


def test_hat_and_bivector():
    assert hat(CFG, 4) == gen(5) * -1
    assert hat(CFG, 5) == gen(4)
    assert bivector(CFG, 1, 2) == CliffordElement.word(CFG, (1, 2), Fraction(-1, 2))
    assert bivector(CFG, 1, 1) == 0


def test_spinor_images():
    one = spinor(CFG)
    assert kappa(CFG, 4)(one) == spinor(CFG, t=(1,)).scale(SQRT2)
    assert kappa(CFG, 3)(one) == one.scale(I)
    assert kappa(CFG, 3)(spinor(CFG, theta=(1,))) == spinor(CFG, theta=(1,)).scale(-I)
    assert e_perp(CFG, 1, one) == spinor(CFG, theta=(1,))
    assert not e_perp(CFG, 4, one)


@pytest.mark.parametrize("cfg", CONFIGS, ids=str)
def test_spinor_realization_respects_relations(cfg):
    """κ(E_k)κ(E_l) + (-1)^{[k][l]} κ(E_l)κ(E_k) = -2 g_lk on every low spinor."""
    N = cfg.dim
    for k in range(1, N + 1):
        for l in range(1, N + 1):
            s = -1 if cfg.grade(k) and cfg.grade(l) else 1
            op = kappa(cfg, k) @ kappa(cfg, l) + (kappa(cfg, l) @ kappa(cfg, k)).scale(s)
            for sm in spinor_basis(cfg, 2):
                v = spinor(cfg, [a + 1 for a in range(sm.theta.bit_length()) if sm.theta >> a & 1], sm.t)
                assert op(v) == v.scale(-2 * cfg.g(l, k))


def test_kappa_of_word_is_composition():
    w = gen(1) * gen(4)
    one = spinor(CFG)
    assert kappa_of(w)(one) == kappa(CFG, 1)(kappa(CFG, 4)(one))


words = st.lists(st.integers(1, CFG.dim), min_size=0, max_size=6)


@settings(max_examples=80)
@given(st.lists(st.tuples(words, st.integers(-3, 3)), max_size=4), st.integers(0, 10**6))
def test_normal_form_is_strategy_independent(terms, seed):
    x = CliffordElement(CFG, {})
    for w, c in terms:
        x = x + CliffordElement.word(CFG, w, c)
    a = x.normal_form("leftmost").terms
    b = x.normal_form("rightmost").terms
    c = x.normal_form("random", random.Random(seed)).terms
    assert a == b == c
    assert x.normal_form().is_normal()


@settings(max_examples=40)
@given(words, words)
def test_realization_is_multiplicative(u, v):
    x, y = CliffordElement.word(CFG, u), CliffordElement.word(CFG, v)
    for sm in spinor_basis(CFG, 1):
        vec = spinor(CFG, [1] if sm.theta else [], sm.t)
        assert kappa_of(x * y)(vec) == kappa_of(x)(kappa_of(y)(vec))
