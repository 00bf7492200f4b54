from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spiderflat.exactlinear import (
    Matrix,
    NoSolution,
    NonUnique,
    lcm_of_denominators,
    rank,
    row_reduce,
    solve_linear,
    to_rational,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=7)


def test_to_rational_rejects_float():
    assert to_rational("3/4") == Fraction(3, 4)
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_rank_and_rref():
    A = Matrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(A) == 2
    rows, piv = row_reduce(A.to_rows())
    assert piv == [0, 1]
    assert rows[0][:2] == [1, 0] and rows[1][:2] == [0, 1]


def test_solve_unique_and_overdetermined():
    A = Matrix.from_rows([[2, 1], [1, 3], [3, 4]])
    assert solve_linear(A, [5, 10, 15]) == [1, 3]


def test_solve_errors():
    A = Matrix.from_rows([[1, 1], [2, 2]])
    with pytest.raises(NoSolution):
        solve_linear(A, [1, 3])
    with pytest.raises(NonUnique):
        solve_linear(A, [1, 2])


def test_matrix_helpers():
    I3 = Matrix.identity(3)
    assert I3.apply([1, 2, 3]) == [1, 2, 3]
    M = Matrix.from_rows([[1, 2], [3, 4], [5, 6]])
    assert M.transpose().to_rows() == [[1, 3, 5], [2, 4, 6]]
    assert M[(2, 1)] == 6
    assert lcm_of_denominators([Fraction(1, 4), Fraction(5, 6), 3]) == 12


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.tuples(st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n),
                        st.lists(small, min_size=n, max_size=n))))
def test_solve_recovers_solution(data):
    rows, x0 = data
    A = Matrix.from_rows(rows)
    b = A.apply(x0)
    if rank(A) == len(rows):
        assert solve_linear(A, b) == x0
    else:
        with pytest.raises(NonUnique):
            solve_linear(A, b)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_invariant_under_transpose(rows):
    A = Matrix.from_rows(rows)
    assert rank(A) == rank(A.transpose()) <= min(A.rows, A.cols)
