from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlrc.errors import DimensionMismatch, IndexOutOfRange, MalformedInput, NotStrictlyIncreasing, SpecMismatch
from qlrc.gf import field_create
from qlrc.linalg import (
    Matrix,
    block_diagonal,
    frobenius,
    matmul,
    nullspace,
    rank,
    row_basis,
    rref,
    same_row_space,
    select_columns,
    stack_horizontal,
    stack_vertical,
)

GF2 = field_create(2)
GF4 = field_create(2, 2)
GF121 = field_create(11, 2)

# generator of the four-coordinate puncturing example
PUNCTURE_G = [[1, 0, 1, 0], [0, 1, 1, 1]]


def test_rank_basics():
    assert rank(Matrix.zeros(GF121, 3, 4)) == 0
    assert rank(Matrix.identity(GF121, 5)) == 5
    # columns c1, c2 and c1 + c2
    M = Matrix(GF2, [[1, 0, 1], [0, 1, 1]])
    assert rank(M) == 2
    assert rank(Matrix(GF2, [[1, 0, 1], [0, 1, 1], [1, 1, 0]])) == 2


def test_nullspace_examples():
    assert nullspace(Matrix.identity(GF4, 3)).rows == 0
    N = nullspace(Matrix(GF2, [[1, 1]]))
    assert N.to_list() == [[1, 1]]


def test_rref_pivots():
    R, piv = rref(Matrix(GF2, [[0, 1, 1], [1, 1, 0]]))
    assert piv == (0, 1)
    assert R.to_list() == [[1, 0, 1], [0, 1, 1]]


def test_select_columns():
    G = Matrix(GF2, PUNCTURE_G)
    assert select_columns(G, [0, 1, 3]).to_list() == [[1, 0, 0], [0, 1, 1]]
    assert select_columns(G, range(4)) == G
    assert select_columns(G, []).shape == (2, 0)
    with pytest.raises(IndexOutOfRange):
        select_columns(G, [0, 4])
    with pytest.raises(NotStrictlyIncreasing):
        select_columns(G, [1, 1])
    with pytest.raises(NotStrictlyIncreasing):
        select_columns(G, [2, 1])


def test_stacking():
    A = Matrix(GF4, [[1, 2], [3, 0]])
    assert stack_vertical([A]) == A
    assert block_diagonal([], GF4).shape == (0, 0)
    D = block_diagonal([A, Matrix(GF4, [[1]])])
    assert D.to_list() == [[1, 2, 0], [3, 0, 0], [0, 0, 1]]
    assert stack_horizontal([A, A]).shape == (2, 4)
    with pytest.raises(DimensionMismatch):
        stack_vertical([A, Matrix(GF4, [[1, 2, 3]])])
    with pytest.raises(SpecMismatch):
        stack_vertical([A, Matrix(GF2, [[1, 0]])])


def test_matrix_is_immutable_and_hashable():
    A = Matrix(GF4, [[1, 2], [3, 0]])
    with pytest.raises(ValueError):
        A.data[0, 0] = 2
    assert hash(A) == hash(Matrix(GF4, [[1, 2], [3, 0]]))


def test_entries_must_be_field_elements():
    with pytest.raises(MalformedInput):
        Matrix(GF4, [[4]])


def test_serialisation_round_trips():
    A = Matrix(GF121, [[0, 17, 120], [5, 6, 7]])
    assert Matrix.from_json(A.to_json()) == A
    assert Matrix.from_text(GF121, A.to_text()) == A
    assert A.to_latex().startswith("\\begin{pmatrix}")
    assert Matrix.from_latex(GF121, A.to_latex()) == A
    with pytest.raises(MalformedInput):
        Matrix.from_latex(GF121, "1 & 2")
    with pytest.raises(MalformedInput):
        Matrix.from_json({"field": GF121.to_json(), "rows": 2, "cols": 2, "data": [1, 2, 3]})


def test_frobenius_of_subfield_matrix_is_identity():
    A = Matrix(GF121, [[1, 2, 10]])
    assert frobenius(A, 11) == A


@st.composite
def matrices(draw, spec, max_rows=5, max_cols=7):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    data = draw(st.lists(st.integers(0, spec.order - 1), min_size=r * c, max_size=r * c))
    return Matrix(spec, np.array(data, dtype=np.int64).reshape(r, c), cols=c)


FIELDS = [GF2, field_create(3), GF4, field_create(5), field_create(3, 2), GF121]


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(FIELDS).flatmap(lambda F: matrices(F)))
def test_rank_nullity_and_orthogonality(M):
    N = nullspace(M)
    assert rank(M) + N.rows == M.cols
    assert rank(N) == N.rows
    if N.rows and M.rows:
        assert matmul(M, N.T).is_zero()


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(FIELDS).flatmap(lambda F: matrices(F)))
def test_row_basis_spans_the_same_space(M):
    B = row_basis(M)
    assert B.rows == rank(M)
    assert same_row_space(B, M)
    R, piv = rref(M)
    assert len(piv) == rank(M)
    for i, p in enumerate(piv):
        assert R.data[i, p] == 1
        assert np.count_nonzero(R.data[:, p]) == 1
