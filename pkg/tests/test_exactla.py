import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superdirac.errors import DimensionMismatch, UnboundedShift
from superdirac.exactfield import I, SQRT2, Scalar
from superdirac.exactla import (
    Span,
    block_matrix,
    image_basis,
    intersect,
    kernel_basis,
    member,
    rank,
    restrict,
    solve,
)
from superdirac.operators import make_operator
from superdirac.superspace import SpaceConfig

from oracles import dense_rank, kernel_dimension, matrix_from_columns

entries = st.sampled_from([Scalar(0), Scalar(0), Scalar(1), Scalar(-2), I, SQRT2, 1 + I, Scalar(3, 0, -1)])


@st.composite
def sparse_columns(draw):
    rows = draw(st.integers(1, 6))
    cols = draw(st.integers(1, 6))
    out = []
    for _ in range(cols):
        col = {}
        for r in range(rows):
            x = draw(entries)
            if x:
                col[r] = x
        out.append(col)
    return rows, out


@settings(max_examples=80, deadline=None)
@given(sparse_columns(), st.integers(0, 1000))
def test_rank_matches_oracle_with_permuted_pivots(data, seed):
    n_rows, cols = data
    order = list(range(len(cols)))
    random.Random(seed).shuffle(order)
    sp = Span()
    for c in cols:
        sp.add(c)
    assert sp.rank == dense_rank(matrix_from_columns(cols, n_rows), order)


@settings(max_examples=80, deadline=None)
@given(sparse_columns(), st.integers(0, 1000))
def test_kernel_vectors_vanish_and_have_oracle_dimension(data, seed):
    n_rows, cols = data
    sp = Span(track=True)
    kern = [d for d in (sp.add(c) for c in cols) if d]
    order = list(range(len(cols)))
    random.Random(seed).shuffle(order)
    assert len(kern) == kernel_dimension(cols, n_rows, order)
    for v in kern:
        total: dict = {}
        for i, c in v.items():
            for r, x in cols[i].items():
                total[r] = total.get(r, Scalar()) + c * x
        assert not any(total.values())


@settings(max_examples=60, deadline=None)
@given(sparse_columns(), sparse_columns())
def test_intersection_dimension_formula(a, b):
    (_, U), (_, W) = a, b
    both = Span()
    for v in U + W:
        both.add(v)
    ru, rw = Span(), Span()
    for v in U:
        ru.add(v)
    for v in W:
        rw.add(v)
    cap = intersect(U, W)
    assert len(cap) == ru.rank + rw.rank - both.rank
    assert all(member(v, U) and member(v, W) for v in cap)


def test_coordinates_reconstruct():
    sp = Span(track=True)
    gens = [{0: Scalar(1), 1: I}, {1: SQRT2}, {0: Scalar(2), 1: 2 * I + SQRT2}]
    deps = [sp.add(v) for v in gens]
    assert deps[0] is None and deps[1] is None and deps[2]
    co = sp.coordinates({0: Scalar(3), 1: 3 * I + SQRT2})
    assert co == {0: Scalar(3), 1: Scalar(1)}
    assert sp.coordinates({2: Scalar(1)}) is None


def test_restrict_keeps_allowed_support():
    vs = [{0: Scalar(1), 1: Scalar(1)}, {1: Scalar(1), 2: Scalar(1)}, {0: Scalar(1), 1: Scalar(2), 2: Scalar(1)}]
    out = restrict(vs, lambda k: k != 2)
    assert len(out) == 1 and set(out[0]) == {0, 1}
    assert len(restrict(vs + [{2: Scalar(1)}], lambda k: k != 2)) == 2


def test_block_matrix_of_dirac():
    cfg = SpaceConfig(3, 1)
    B = block_matrix(make_operator(cfg, "dirac"), 1, 1)
    assert B.shape[1] == 5 * 4
    assert rank(B) == len(image_basis(B))
    assert len(kernel_basis(B)) == B.shape[1] - rank(B)
    assert solve(B, "rank") == rank(B)
    assert B.to_csv().count("\n") == B.shape[0]


def test_block_matrix_needs_shifts():
    cfg = SpaceConfig(3, 1)
    op = make_operator(cfg, "dirac")
    op.poly_shift = None
    with pytest.raises(UnboundedShift):
        block_matrix(op, 1, 1)


def test_membership_dimension_check():
    cfg = SpaceConfig(3, 0)
    B = block_matrix(make_operator(cfg, "vector"), 0, 0)
    with pytest.raises(DimensionMismatch):
        solve(B, "member", {99: Scalar(1)})
    assert solve(B, "member", B.columns[0])
    with pytest.raises(ValueError):
        solve(B, "factorize")
