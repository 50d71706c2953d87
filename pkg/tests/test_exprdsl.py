import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from superdirac.errors import IndexOutOfRange, ParseError, UndeclaredParity
from superdirac.exprdsl import (
    Bracket,
    Gen,
    Named,
    Neg,
    Num,
    Power,
    Product,
    Sum,
    Sym,
    count_summands,
    evaluate,
    golden_corpus,
    normal_order,
    parity,
    parse,
    parse_equation,
    to_text,
    verify_identity,
)
from superdirac.operators import equal_on, make_operator
from superdirac.superspace import SpaceConfig

CFG = SpaceConfig(3, 1)


def test_parse_generators_and_named():
    assert parse("X(1)") == Gen("X", 1)
    assert parse("K(1,2)") == Named("K", (1, 2))
    assert parse("dirac") == Named("dirac")
    assert parse("1/2*M") == Product((Num(Fraction(1, 2)), Sym("M")))
    assert parse("[X(1), D(1)]") == Bracket(Gen("X", 1), Gen("D", 1))
    assert parse("X(1)^2") == Power(Gen("X", 1), 2)
    assert parse("X(1) - D(2)") == Sum((Gen("X", 1), Neg(Gen("D", 2))))


def test_three_summands_round_trip():
    text = "X(1)*D(1) - 2*E(4) + [K(1,2), Pi(3)]"
    node = parse(text)
    assert count_summands(node) == 3
    assert parse(to_text(node)) == node


@pytest.mark.parametrize(
    "text,pos",
    [("X(1)*(", 6), ("X(1", 3), ("foo", 0), ("1/0", 2), ("X(1) $ D(1)", 5), ("K(1)", 0), ("[X(1) D(1)]", 6), ("X(1)^a", 5)],
)
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.position == pos
    assert isinstance(exc.value, SyntaxError)


def test_equation_errors_use_whole_line_positions():
    a, b = parse_equation("dirac*dirac == -laplace")
    assert b == Neg(Named("laplace"))
    with pytest.raises(ParseError) as exc:
        parse_equation("dirac == X(1)*(")
    assert exc.value.position == len("dirac == X(1)*(")
    with pytest.raises(ParseError):
        parse_equation("dirac")


def test_parities_follow_operator_grading():
    assert parity(CFG, parse("X(4)")) == 1
    assert parity(CFG, parse("dirac")) == 1
    assert parity(CFG, parse("K(1,4)")) == 1
    assert parity(CFG, parse("K(4,5)")) == 0
    assert parity(CFG, parse("X(1) + X(4)")) is None
    with pytest.raises(UndeclaredParity):
        normal_order(CFG, "[X(1) + X(4), D(1)]")
    with pytest.raises(IndexOutOfRange):
        parity(CFG, parse("X(6)"))


@pytest.mark.parametrize(
    "expr,expected",
    [
        ("D(1)*X(1)", "1 + X(1)*D(1)"),
        ("X(1)*D(1)", "X(1)*D(1)"),
        ("D(4)*X(4)", "1 - X(4)*D(4)"),
        ("X(4)*X(4)", "0"),
        ("[D(2), X(2)]", "1"),
        ("E(1)*E(1)", "-1"),
        ("X(1) - X(1)", "0"),
    ],
)
def test_normal_order_examples(expr, expected):
    assert str(normal_order(CFG, expr)) == expected


def test_m_stays_symbolic_until_compared():
    nf = normal_order(CFG, "2*M*X(1)*D(1) - X(1) + M")
    assert str(nf) == "M - X(1) + 2*M*X(1)*D(1)"
    assert normal_order(CFG, "M - 1").is_zero()
    assert not normal_order(SpaceConfig(4, 1), "M - 1").is_zero()
    assert normal_order(CFG, "[dirac, vector] + 2*euler") == normal_order(CFG, "-M")


# --------------------------------------------------------------------------
# Property tests over random expressions

SMALL = SpaceConfig(1, 1)
leaves = st.one_of(
    st.builds(Gen, st.sampled_from(["X", "D", "Dup", "E", "Ehat"]), st.integers(1, SMALL.dim)),
    st.builds(Num, st.fractions(min_value=0, max_value=5, max_denominator=3)),
    st.builds(Sym, st.sampled_from(["M", "i", "sqrt2"])),
    st.just(Named("vector")),
    st.just(Named("euler")),
    st.builds(lambda i, j: Named("K", (i, j)), st.integers(1, SMALL.dim), st.integers(1, SMALL.dim)),
)


def _extend(children):
    return st.one_of(
        st.builds(Neg, children),
        st.builds(lambda xs: Sum(tuple(xs)), st.lists(children, min_size=2, max_size=3)),
        st.builds(lambda xs: Product(tuple(xs)), st.lists(children, min_size=2, max_size=3)),
        st.builds(Power, children, st.integers(0, 2)),
        st.builds(Bracket, children, children),
    )


asts = st.recursive(leaves, _extend, max_leaves=8)


@settings(max_examples=200, deadline=None)
@given(asts)
def test_print_parse_round_trip(node):
    assert parse(to_text(node)) == node


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
@given(asts, st.integers(0, 10**6))
def test_normal_form_is_strategy_independent(node, seed):
    try:
        left = normal_order(SMALL, node, "leftmost")
    except UndeclaredParity:
        assume(False)
    right = normal_order(SMALL, node, "rightmost")
    rand = normal_order(SMALL, node, "random", random.Random(seed))
    assert left.terms == right.terms == rand.terms


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
@given(asts)
def test_both_routes_agree_on_random_expressions(node):
    cfg = SpaceConfig(2, 1)
    try:
        result = verify_identity(cfg, node, node, k_max=2, Q_max=1)
    except UndeclaredParity:
        assume(False)
    assert result.passed


# --------------------------------------------------------------------------
# Two-route identities


def test_golden_corpus_passes_both_routes():
    results = [verify_identity(CFG, lhs, rhs) for _, lhs, rhs in golden_corpus(CFG)]
    assert len(results) > 100
    bad = [(r.lhs, r.rhs, r.status) for r in results if r.status != "pass"]
    assert not bad


def test_golden_corpus_even_m():
    cfg = SpaceConfig(2, 1)
    for name, lhs, rhs in golden_corpus(cfg, sample=6):
        r = verify_identity(cfg, lhs, rhs, k_max=2, Q_max=1)
        assert r.status == "pass", name


def test_false_identity_has_witness():
    r = verify_identity(CFG, "dirac", "vector")
    assert r.status == "fail"
    assert r.witness is not None
    assert not r.residual.is_zero()
    assert r.to_json()["status"] == "fail"


def test_evaluation_matches_operators_module():
    assert equal_on(evaluate(CFG, "dirac*dirac"), -make_operator(CFG, "laplace"), 2, 1)
    assert equal_on(evaluate(CFG, "X(1)*D(1) + X(2)*D(2)"), evaluate(CFG, "[X(1), D(1)] + D(1)*X(1) + X(2)*D(2)"), 2, 1)
