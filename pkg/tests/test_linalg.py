from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from walker.field import SQRT3
from walker.linalg import RationalMatrix, Span, kernel_basis, rank, rref, solve, span_dim

from conftest import rationals

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_rank_nullity(M):
    ker = kernel_basis(M)
    assert rank(M) + len(ker) == len(M[0])
    for v in ker:
        for row in M:
            assert sum(a * b for a, b in zip(row, v)) == 0


@given(matrices)
def test_rref_pivots(M):
    R, piv = rref(M)
    assert len(piv) == rank(M)
    for k, p in enumerate(piv):
        assert R[k][p] == 1


@given(matrices, st.data())
def test_solve_consistent(M, data):
    x = data.draw(st.lists(rationals, min_size=len(M[0]), max_size=len(M[0])))
    b = [sum(a * c for a, c in zip(row, x)) for row in M]
    y = solve(M, b)
    assert y is not None
    assert [sum(a * c for a, c in zip(row, y)) for row in M] == b


def test_solve_inconsistent():
    assert solve([[1, 1], [2, 2]], [1, 3]) is None


def test_sqrt3_entries():
    assert rank([[1, SQRT3], [SQRT3, 3]]) == 1
    assert span_dim([(1, SQRT3), (SQRT3, 3), (0, 1)]) == 2


def test_span_incremental():
    s = Span(3)
    assert s.add((1, 0, 0))
    assert not s.add((2, 0, 0))
    assert s.add((1, 1, 0))
    assert s.contains((0, 5, 0)) and not s.contains((0, 0, 1))
    assert len(s) == 2


def test_matrix_bracket_and_so_coordinates():
    E = [RationalMatrix.elementary_so(3, i, j) for i, j in ((0, 1), (0, 2), (1, 2))]
    # [E12, E13] is a multiple of E23 (so(3) commutation)
    b = E[0].bracket(E[1])
    assert b.is_antisymmetric()
    assert b == E[2] or b == -E[2]
    M = RationalMatrix.from_so_coordinates(3, (1, Fraction(1, 2), -3))
    assert M.so_coordinates() == (1, Fraction(1, 2), -3)
    assert (M @ RationalMatrix.identity(3)) == M
    assert M.T == -M and M.trace() == 0
