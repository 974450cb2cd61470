import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from quiver_edmonds import kernels
from quiver_edmonds.errors import ShapeError
from quiver_edmonds.rational import RationalMatrix, block_sum, to_fraction


def leibniz(rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = -1 if inversions % 2 else 1
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total


def int_matrices(max_n=5, lo=-9, hi=9, square=True):
    def build(n, m):
        return st.lists(st.lists(st.integers(lo, hi), min_size=m, max_size=m), min_size=n, max_size=n)
    if square:
        return st.integers(0, max_n).flatmap(lambda n: build(n, n))
    return st.tuples(st.integers(1, max_n), st.integers(1, max_n)).flatmap(lambda s: build(*s))


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_det_matches_leibniz_on_both_backends(rows):
    expected = leibniz(rows)
    assert kernels.det_int(rows, backend="python") == expected
    if kernels.BACKEND == "native":
        assert kernels.det_int(rows, backend="native") == expected


@settings(max_examples=150, deadline=None)
@given(int_matrices(square=False))
def test_rank_matches_sympy_on_both_backends(rows):
    expected = sympy.Matrix(rows).rank()
    assert kernels.rank_int(rows, backend="python") == expected
    if kernels.BACKEND == "native":
        assert kernels.rank_int(rows, backend="native") == expected


def test_low_rank_products_have_exact_rank():
    left = [[1, 2], [3, 4], [5, 6], [7, 8]]
    right = [[1, 0, 2, 1], [0, 1, 1, 3]]
    prod = [[sum(row[k] * right[k][j] for k in range(2)) for j in range(4)] for row in left]
    assert kernels.rank_int(prod) == 2
    assert kernels.det_int(prod) == 0


def test_large_entries_route_to_python_and_stay_exact():
    big = 10 ** 30
    rows = [[big, 1, 0], [2, big, 5], [7, 3, big]]
    assert not kernels.fits_native(rows)
    assert kernels.det_int(rows) == leibniz(rows)


def test_hadamard_bound_dominates_minors():
    rows = [[3, -4], [1, 1]]
    assert kernels.hadamard_bound(rows) >= abs(leibniz(rows))


def test_rational_det_and_inverse():
    m = RationalMatrix.from_rows([["1/2", 1], [3, "2/3"]])
    assert m.det() == Fraction(1, 2) * Fraction(2, 3) - 3
    assert m @ m.inverse() == RationalMatrix.identity(2)


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        RationalMatrix.from_rows([[1, 2], [2, 4]]).inverse()


def test_zero_by_zero_determinant_is_one():
    assert RationalMatrix.zeros(0, 0).det() == 1


def test_shapes_are_checked():
    with pytest.raises(ShapeError):
        RationalMatrix(2, 2, (Fraction(1),))
    with pytest.raises(ShapeError):
        RationalMatrix.identity(2) @ RationalMatrix.zeros(3, 1)


def test_floats_are_refused():
    with pytest.raises(TypeError):
        to_fraction(0.5)
    assert to_fraction(" -3/4 ") == Fraction(-3, 4)


def test_block_sum():
    a, b = RationalMatrix.identity(2), RationalMatrix.from_rows([[0, 1], [1, 0]])
    assert block_sum([(Fraction(2), a), (Fraction(-1), b)], 2, 2) == RationalMatrix.from_rows([[2, -1], [-1, 2]])


def test_rank_with_rational_entries():
    m = RationalMatrix.from_rows([["1/3", "2/3"], ["1/6", "1/3"]])
    assert m.rank() == 1
