"""Exact sparse linear algebra: reduction, kernels, solving, quotients."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from operadlab.linalg import (
    NoSolution,
    QuotientSpace,
    RationalMatrix,
    is_zero_vec,
    kernel_basis,
    quotient_basis,
    row_reduce,
    solve_particular,
    vec,
)


def mat(rows):
    entries = {
        (i, j): Fraction(v)
        for i, r in enumerate(rows)
        for j, v in enumerate(r)
        if v
    }
    return RationalMatrix(len(rows), len(rows[0]) if rows else 0, entries)


small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-4, 4), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


class TestRowReduce:
    def test_known_rank(self):
        M = mat([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
        R, pivots, T = row_reduce(M)
        assert len(pivots) == 2

    def test_identity_full_rank(self):
        M = mat([[1, 0], [0, 1]])
        _, pivots, _ = row_reduce(M)
        assert pivots == [0, 1]

    @given(small_matrices)
    @settings(max_examples=60, deadline=None)
    def test_transform_reproduces_reduction(self, rows):
        M = mat(rows)
        R, pivots, T = row_reduce(M)
        assert T.matmul(M).entries == R.entries
        # row-echelon: each pivot column has a single unit entry
        for r, c in enumerate(pivots):
            col = [R.entries.get((i, c), Fraction(0)) for i in range(R.rows)]
            assert col[r] == 1 and all(v == 0 for i, v in enumerate(col) if i != r)


class TestKernel:
    def test_kernel_of_zero_map_is_everything(self):
        M = RationalMatrix.zero(2, 3)
        assert len(kernel_basis(M)) == 3

    def test_kernel_dimension(self):
        M = mat([[1, 2, 3], [2, 4, 6]])
        assert len(kernel_basis(M)) == 2

    @given(small_matrices)
    @settings(max_examples=60, deadline=None)
    def test_kernel_vectors_annihilate(self, rows):
        M = mat(rows)
        basis = kernel_basis(M)
        _, pivots, _ = row_reduce(M)
        assert len(basis) == M.cols - len(pivots)
        for v in basis:
            assert is_zero_vec(M.matvec(v))


class TestSolve:
    def test_solves_consistent_system(self):
        M = mat([[1, 1], [0, 1]])
        x = solve_particular(M, vec([3, 1]))
        assert M.matvec(x) == vec([3, 1])

    def test_inconsistent_raises(self):
        M = mat([[1, 1], [2, 2]])
        with pytest.raises(NoSolution):
            solve_particular(M, vec([1, 1]))

    @given(small_matrices, st.lists(st.integers(-3, 3), min_size=4, max_size=4))
    @settings(max_examples=60, deadline=None)
    def test_image_vectors_always_solvable(self, rows, coeffs):
        M = mat(rows)
        b = M.matvec(vec(coeffs[: M.cols]))
        x = solve_particular(M, b)
        assert M.matvec(x) == b


class TestQuotient:
    def test_reduce_vanishes_exactly_on_subspace(self):
        Q = QuotientSpace(3, [vec([1, 1, 0])])
        assert Q.dim == 2
        assert is_zero_vec(Q.reduce(vec([2, 2, 0])))
        assert not is_zero_vec(Q.reduce(vec([1, 0, 0])))

    def test_representatives_plus_subspace_span(self):
        sub = [vec([1, 0, 1]), vec([0, 1, 1])]
        reps, reduce = quotient_basis(3, sub)
        assert len(reps) == 1

    def test_reduce_is_linear(self, rng):
        Q = QuotientSpace(4, [vec([1, 2, 0, 0]), vec([0, 0, 1, 1])])
        for _ in range(20):
            a = vec([Fraction(rng.randint(-3, 3)) for _ in range(4)])
            b = vec([Fraction(rng.randint(-3, 3)) for _ in range(4)])
            lhs = Q.reduce([x + y for x, y in zip(a, b)])
            rhs = [x + y for x, y in zip(Q.reduce(a), Q.reduce(b))]
            assert lhs == rhs


def test_deterministic_pivoting():
    M = mat([[0, 1, 1], [1, 1, 0]])
    assert row_reduce(M)[1] == row_reduce(mat([[0, 1, 1], [1, 1, 0]]))[1]
