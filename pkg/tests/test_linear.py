import random
from fractions import Fraction

import pytest

from src.algebra.linear import (
    SparseMatrix,
    independent_columns,
    kernel_basis,
    rank,
    rref,
    solve,
    solve_keyed,
)

F = Fraction


def test_sparse_matrix_drops_zero_entries_and_sorts():
    m = SparseMatrix(2, 2, ((1, 0, F(3)), (0, 1, F(0)), (0, 0, F(1))))
    assert m.entries == ((0, 0, F(1)), (1, 0, F(3)))
    assert m.get(0, 1) == 0


def test_sparse_matrix_rejects_duplicates_and_out_of_range():
    with pytest.raises(ValueError):
        SparseMatrix(1, 1, ((0, 0, 1), (0, 0, 2)))
    with pytest.raises(ValueError):
        SparseMatrix(1, 1, ((1, 0, 1),))


def test_rref_pivots_are_lowest_columns():
    m = SparseMatrix.from_rows([[0, 2, 4], [0, 1, 2], [1, 0, 1]])
    reduced, pivots = rref(m)
    assert pivots == [0, 1]
    assert reduced.to_rows() == [[1, 0, 1], [0, 1, 2], [0, 0, 0]]


def test_rank_with_fractions():
    m = SparseMatrix.from_rows([["1/2", "1/3"], [3, 2]])
    assert rank(m) == 1


def test_kernel_basis_uses_unit_free_variables():
    m = SparseMatrix.from_rows([[1, 1, 0], [0, 0, 1]])
    assert kernel_basis(m) == [(F(-1), F(1), F(0))]


def test_solve_particular_sets_free_variables_to_zero():
    m = SparseMatrix.from_rows([[1, 1, 0], [0, 0, 1]])
    solution = solve(m, [F(2), F(3)])
    assert solution.particular == (F(2), F(0), F(3))
    assert m.apply(solution.particular) == (F(2), F(3))
    assert len(solution.kernel) == 1


def test_solve_inconsistent_returns_none():
    m = SparseMatrix.from_rows([[1, 1], [2, 2]])
    assert solve(m, [F(1), F(3)]) is None


def test_solve_rejects_wrong_rhs_length():
    with pytest.raises(ValueError):
        solve(SparseMatrix.from_rows([[1]]), [F(1), F(2)])


def test_solve_keyed_matches_words():
    columns = [{("a", "b"): F(1), ("b", "a"): F(-1)}, {("a", "a"): F(2)}]
    solution = solve_keyed(columns, {("a", "b"): F(3), ("b", "a"): F(-3), ("a", "a"): F(1)})
    assert solution.particular == (F(3), F("1/2"))
    assert solution.kernel == []
    assert solve_keyed(columns, {("b", "b"): F(1)}) is None


def test_independent_columns_keeps_first_of_dependent_pair():
    columns = [{"x": F(1)}, {"x": F(2)}, {"y": F(1)}]
    assert independent_columns(columns) == [0, 2]
    assert independent_columns([]) == []


def test_rank_plus_nullity_is_the_column_count():
    rng = random.Random(31)
    for _ in range(60):
        rows, cols = rng.randint(1, 6), rng.randint(1, 7)
        m = SparseMatrix.from_rows([
            [F(rng.choice((-2, -1, 0, 0, 0, 1, 3)), rng.randint(1, 2)) for _ in range(cols)]
            for _ in range(rows)
        ])
        kernel = kernel_basis(m)
        assert rank(m) + len(kernel) == cols
        for vector in kernel:
            assert all(value == 0 for value in m.apply(vector))
