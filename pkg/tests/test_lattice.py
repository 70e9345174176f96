from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from torichyp.lattice import (
    DimensionMismatch,
    NoSolution,
    ZeroVector,
    det,
    gcd_of,
    integral_solution,
    is_primitive,
    make_primitive,
    maximal_minors_gcd,
    nullspace,
    pairing,
    rank,
    solve_dual,
    unimodular_completion,
)

small = st.integers(-6, 6)


def test_make_primitive_divides_by_gcd():
    assert make_primitive((4, -6, 2)) == (2, -3, 1)
    assert is_primitive((2, 3))
    assert not is_primitive((2, 4))
    with pytest.raises(ZeroVector):
        make_primitive((0, 0))


def test_det_known_values():
    assert det([[1, 1], [1, -1]]) == -2
    assert det([[1, 0, 0], [0, 1, 0], [-1, -1, 2]]) == 2
    with pytest.raises(DimensionMismatch):
        det([[1, 2, 3], [4, 5, 6]])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_sympy(rows):
    assert det(rows) == sympy.Matrix(rows).det()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_matches_sympy(rows):
    assert rank(rows) == sympy.Matrix(rows).rank()


def test_solve_dual_rational_and_integral():
    sol = solve_dual([(1, 1), (1, -1)], [1, 0])
    assert sol.coords == (Fraction(1, 2), Fraction(1, 2))
    assert not sol.integral
    sol = solve_dual([(1, 0), (0, 1)], [-2, 3])
    assert sol.integral and sol.as_ints() == (-2, 3)
    with pytest.raises(NoSolution):
        solve_dual([(1, 0), (2, 0)], [1, 1])


@settings(max_examples=80, deadline=None)
@given(st.lists(small, min_size=3, max_size=3).filter(any))
def test_unimodular_completion(u):
    u = make_primitive(u)
    a, a_inv = unimodular_completion(u)
    assert abs(det(a)) == 1
    assert [pairing(row, u) for row in a] == [1, 0, 0]
    ident = [[sum(a[i][k] * a_inv[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert ident == [[int(i == j) for j in range(3)] for i in range(3)]
    m = integral_solution(u, -5)
    assert pairing(m, u) == -5


def test_nullspace_is_primitive_and_orthogonal():
    (v,) = nullspace([(1, 2, 3), (0, 1, 1)], 3)
    assert pairing(v, (1, 2, 3)) == 0 and pairing(v, (0, 1, 1)) == 0
    assert gcd_of(v) == 1


def test_maximal_minors_gcd_detects_nonsaturated_cone():
    assert maximal_minors_gcd([(1, 0, 0), (0, 1, 0)]) == 1
    assert maximal_minors_gcd([(1, 0, 1), (-1, 0, 1)]) == 2
