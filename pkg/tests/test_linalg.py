from fractions import Fraction

import pytest

from src.linalg import (QuotientBasis, SparseMatrix, kernel_basis, kernel_free_columns, quotient_basis,
                        rank, rref, to_fraction, vec_axpy)


def dense(data):
    return SparseMatrix.from_rows(len(data[0]), [dict(enumerate(row)) for row in data])


def test_to_fraction_rejects_floats():
    assert to_fraction("3/4") == Fraction(3, 4)
    assert to_fraction(2) == Fraction(2)
    with pytest.raises(TypeError):
        to_fraction(0.5)


def test_vec_axpy_drops_cancelled_entries():
    target = {0: Fraction(1), 1: Fraction(2)}
    vec_axpy(target, {1: Fraction(1), 2: Fraction(5)}, -2)
    assert target == {0: 1, 2: -10}


def test_sparse_matrix_products():
    a = dense([[1, 2], [3, 4]])
    assert a @ SparseMatrix.identity(2) == a
    assert (a @ a)[1, 1] == 22
    assert a.trace() == 5
    assert a.column_vectors() == [{0: 1, 1: 3}, {0: 2, 1: 4}]
    assert dense([[1, 0], [0, 0]]).entries == [(0, 0, 1)]


def test_sparse_matrix_rejects_bad_entries():
    with pytest.raises(IndexError):
        SparseMatrix(2, 2, {(2, 0): 1})
    with pytest.raises(ValueError):
        SparseMatrix(-1, 2)
    with pytest.raises(ValueError):
        SparseMatrix(2, 3) @ SparseMatrix(2, 3)


def test_rank_is_exact():
    m = dense([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(m) == 2
    assert rank(SparseMatrix(3, 4)) == 0
    # a rational matrix a float pivot would get wrong
    m = dense([[Fraction(1, 3), Fraction(1, 7)], [Fraction(7, 3), 1]])
    assert rank(m) == 1


def test_rref_rows_are_fully_reduced():
    m = dense([[1, 1, 0], [0, 1, 1]])
    rows = dict(rref(m))
    assert rows[0] == {0: 1, 2: -1}
    assert rows[1] == {1: 1, 2: 1}


def test_kernel_basis_is_indexed_by_free_columns():
    m = dense([[1, 1, 0], [0, 1, 1]])
    basis = kernel_basis(m)
    assert kernel_free_columns(m) == [2]
    assert len(basis) == 1
    assert (m @ SparseMatrix.from_columns(3, basis)).is_zero()
    assert basis[0] == {0: 1, 1: -1, 2: 1}


def test_from_rows_round_trips_through_sdm():
    m = SparseMatrix.from_rows(3, [{0: 2, 1: 2}, {}, {2: Fraction(1, 5)}])
    assert m.shape == (3, 3)
    sdm = m.to_sdm()
    assert sdm.shape == (3, 3)
    assert SparseMatrix.from_sdm(sdm) == m
    assert m[2, 2] == Fraction(1, 5)
    assert rank(m) == 2


def test_kernel_of_zero_matrix_is_everything():
    m = SparseMatrix(2, 3)
    assert kernel_free_columns(m) == [0, 1, 2]
    assert kernel_basis(m) == [{0: 1}, {1: 1}, {2: 1}]


def test_quotient_projection():
    quotient = QuotientBasis(3, [{0: 1, 1: 1}])
    assert len(quotient) == 2
    assert quotient.columns == [1, 2]
    # e0 = (e0 + e1) - e1, so it projects to -e1
    assert quotient.project({0: 1}) == {0: -1}
    assert quotient.project({0: 1, 1: 1}) == {}
    reps, project = quotient_basis(3, [])
    assert len(reps) == 3
    assert project({2: 4}) == {2: 4}
    with pytest.raises(IndexError):
        QuotientBasis(2, [{3: 1}])
