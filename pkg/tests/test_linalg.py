from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kron_ansatz import linalg


@st.composite
def square(draw, size=None):
    n = draw(st.integers(1, 4)) if size is None else size
    return linalg.matrix([[draw(st.integers(-3, 3)) for _ in range(n)] for _ in range(n)])


def test_to_fraction():
    assert linalg.to_fraction("3/4") == Fraction(3, 4)
    assert linalg.to_fraction(-2) == Fraction(-2)
    with pytest.raises(TypeError):
        linalg.to_fraction(True)


def test_det_examples():
    assert linalg.det(linalg.matrix([[1, 2], [3, 4]])) == -2
    assert linalg.det(linalg.zeros(0, 0)) == 1
    assert linalg.rank(linalg.matrix([[1, 2], [2, 4]])) == 1


@given(square(), square(), st.data())
@settings(max_examples=40, deadline=None)
def test_det_multiplicative(A, B, data):
    if A.shape != B.shape:
        B = data.draw(square(A.shape[0]))
    assert linalg.det(linalg.matmul(A, B)) == linalg.det(A) * linalg.det(B)


@given(square())
@settings(max_examples=40, deadline=None)
def test_inverse_and_nullspace(A):
    n = A.shape[0]
    if linalg.is_nonsingular(A):
        assert linalg.equal(linalg.matmul(A, linalg.inverse(A)), linalg.eye(n))
        assert linalg.nullspace(A) == []
    else:
        basis = linalg.nullspace(A)
        assert len(basis) == n - linalg.rank(A)
        for v in basis:
            assert linalg.is_zero(linalg.matmul(A, v))


def test_solve():
    A = linalg.matrix([[2, 1], [1, 3]])
    b = linalg.matrix([[3], [5]])
    x = linalg.solve(A, b)
    assert linalg.equal(linalg.matmul(A, x), b)
    assert linalg.solve(linalg.matrix([[1, 1], [1, 1]]), linalg.matrix([[1], [2]])) is None


def test_assemble_with_empty_blocks():
    M = linalg.assemble([[linalg.eye(2), linalg.zeros(2, 0)],
                         [linalg.zeros(0, 2), linalg.zeros(0, 0)]])
    assert linalg.equal(M, linalg.eye(2))
    D = linalg.direct_sum(linalg.zeros(1, 0), linalg.eye(2))
    assert D.shape == (3, 2) and linalg.is_zero(D[0])
