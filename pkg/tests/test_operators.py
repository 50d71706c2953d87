from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superdirac.clifford import spinor
from superdirac.errors import IndexOutOfRange, UndeclaredParity
from superdirac.exactfield import Scalar
from superdirac.operators import (
    bracket,
    catalog,
    commutator,
    equal_on,
    identity,
    make_operator,
    parse_spec,
    zero,
)
from superdirac.superspace import Element, SpaceConfig, block_basis, multiply, variable

SMALL = [SpaceConfig(3, 1), SpaceConfig(2, 1), SpaceConfig(1, 1), SpaceConfig(3, 0), SpaceConfig(4, 1)]


def ops(cfg):
    mk = lambda s: make_operator(cfg, s)  # noqa: E731
    return mk("dirac"), mk("vector"), mk("laplace"), mk("r2"), mk("euler")


@pytest.mark.parametrize("cfg", SMALL, ids=str)
def test_dirac_squares_to_minus_laplace(cfg):
    D, _, L, _, _ = ops(cfg)
    assert equal_on(D @ D, -L, 3, 2)


@pytest.mark.parametrize("cfg", SMALL, ids=str)
def test_vector_squares_to_minus_r2(cfg):
    _, X, _, R, _ = ops(cfg)
    assert equal_on(X @ X, -R, 3, 2)


@pytest.mark.parametrize("cfg", SMALL, ids=str)
def test_dirac_vector_anticommutator(cfg):
    D, X, _, _, E = ops(cfg)
    assert equal_on(bracket(D, X), E * (-2) - identity(cfg) * cfg.M, 3, 2)


@pytest.mark.parametrize("cfg", SMALL, ids=str)
def test_two_forms_of_the_dirac_operator_agree(cfg):
    assert equal_on(make_operator(cfg, "dirac"), make_operator(cfg, "dirac_sw"), 3, 2)


@pytest.mark.parametrize("cfg", SMALL, ids=str)
def test_euler_counts_degree(cfg):
    E = make_operator(cfg, "euler")
    for pm, sm in block_basis(cfg, 2, 1):
        b = Element.basis(pm, sm)
        assert E(b) == b.scale(2)
    assert equal_on(E, make_operator(cfg, "euler_sum"), 3, 1)


def test_dirac_on_first_coordinate():
    cfg = SpaceConfig(3, 1)
    D = make_operator(cfg, "dirac")
    assert D(multiply(variable(cfg, 1), spinor(cfg))) == spinor(cfg, theta=(1,))


def test_invariance_under_k_generators_small():
    cfg = SpaceConfig(2, 1)
    D = make_operator(cfg, "dirac")
    for i in range(1, cfg.dim + 1):
        for j in range(1, cfg.dim + 1):
            assert equal_on(commutator(D, make_operator(cfg, ("K", i, j))), zero(cfg), 2, 1)


def test_conformal_operator_antisymmetry():
    cfg = SpaceConfig(3, 1)
    assert equal_on(make_operator(cfg, ("Kconf", 2, -1)), make_operator(cfg, ("Kconf", -1, 2)) * -1, 2, 1)
    assert equal_on(make_operator(cfg, ("Kconf", 0, 0)), zero(cfg), 2, 1)


def test_equal_on_reports_witness():
    cfg = SpaceConfig(3, 1)
    r = equal_on(make_operator(cfg, "dirac"), make_operator(cfg, "vector"), 2, 1)
    assert not r and r.witness is not None and r.checked == 1
    assert r.to_json()["equal"] is False


def test_index_errors():
    cfg = SpaceConfig(3, 1)
    with pytest.raises(IndexOutOfRange):
        make_operator(cfg, ("mul", 6))
    with pytest.raises(IndexOutOfRange):
        make_operator(cfg, ("Kconf", -2, 1))
    with pytest.raises(ValueError):
        make_operator(cfg, "gradient")
    with pytest.raises(ValueError):
        make_operator(cfg, "nonsense")


def test_bracket_needs_declared_parity():
    cfg = SpaceConfig(3, 1)
    mixed = make_operator(cfg, ("mul", 1)) + make_operator(cfg, ("mul", 4))
    assert mixed.parity is None
    with pytest.raises(UndeclaredParity):
        bracket(mixed, make_operator(cfg, "dirac"))


def test_parse_spec():
    assert parse_spec("K(1,2)") == ("K", 1, 2)
    assert parse_spec("dirac") == "dirac"
    assert parse_spec("Kconf(-1, 0)") == ("Kconf", -1, 0)


def test_catalog_lists_parities():
    entries = catalog(SpaceConfig(2, 1))
    assert {e["spec"] for e in entries} >= {"dirac", "vector", "K(1,2)", "Pi(1)"}
    assert all("parity" in e for e in entries)


coefs = st.lists(st.tuples(st.integers(0, 200), st.integers(-4, 4)), min_size=1, max_size=5)


@settings(max_examples=30, deadline=None)
@given(coefs)
def test_casimir_relation_on_random_fields(data):
    """x∂x + ∂x x = -2E - M on arbitrary combinations, not only basis vectors."""
    cfg = SpaceConfig(3, 1)
    basis = block_basis(cfg, 0, 2) + block_basis(cfg, 1, 2) + block_basis(cfg, 2, 2)
    f = Element({basis[i % len(basis)]: Scalar(c) for i, c in data})
    D, X, _, _, E = ops(cfg)
    lhs = D(X(f)) + X(D(f))
    assert lhs == E(f).scale(-2) + f.scale(-cfg.M)


def test_pi_symmetry_single_index():
    cfg = SpaceConfig(3, 1)
    D = make_operator(cfg, "dirac")
    P = make_operator(cfg, ("Pi", 4))
    assert equal_on(D @ P, (P + make_operator(cfg, ("mul", 4)) * 2) @ D, 2, 1)


def test_scale_by_fraction():
    cfg = SpaceConfig(3, 0)
    op = make_operator(cfg, "euler") * Fraction(1, 2)
    b = block_basis(cfg, 2, 0)[0]
    assert op.on_basis(*b) == Element.basis(*b).scale(1)
