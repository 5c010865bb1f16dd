from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from doflab.bounds import (FORMULAS, build_outer_region, fd_lower, fd_upper, formula, half_duplex, ic_dof,
                           max_sum_dof, parallel_relay, simplex_max, solve_max_sum, symmetric_point, x_dof)
from doflab.errors import ParameterError


def test_region_3x4():
    r = build_outer_region(3, 4)
    assert len(r.inequalities) == 12 and len(r.variables) == 12
    assert max_sum_dof(r) == 2


def test_region_2x2_value():
    assert max_sum_dof(build_outer_region(2, 2)) == Fraction(4, 3)


def test_region_single_link():
    assert max_sum_dof(build_outer_region(1, 1)) == 1


def test_relays_shift_destination_labels_only():
    r = build_outer_region(2, 2, relays=3)
    assert {d for d, _ in r.variables} == {6, 7}
    assert max_sum_dof(r) == Fraction(4, 3)


def test_region_inequality_coefficients():
    r = build_outer_region(2, 3)
    ineq = next(i for i in r.inequalities if i.focus == (3, 1))
    # sum_q d[q,1] + sum_p d[3,p] - d[3,1]
    assert ineq.coefficients == {(3, 1): 1, (4, 1): 1, (5, 1): 1, (3, 2): 1}


@pytest.mark.parametrize("s,d", [(s, d) for s in range(1, 7) for d in range(1, 7)])
def test_lp_matches_closed_form(s, d):
    r = build_outer_region(s, d)
    sol = solve_max_sum(r)
    assert sol.value == x_dof(s, d)
    assert r.contains(sol.point)
    # dual certificate: y >= 0, A^T y >= 1, b.y = value
    A, b = r.matrix()
    assert all(y >= 0 for y in sol.duals)
    for j in range(len(r.variables)):
        assert sum(A[i][j] * sol.duals[i] for i in range(len(A))) >= 1
    assert sum(bi * yi for bi, yi in zip(b, sol.duals)) == sol.value


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6))
def test_symmetric_point_tight(s, d):
    r = build_outer_region(s, d)
    p = symmetric_point(r)
    assert all(v == Fraction(1, s + d - 1) for v in p.values())
    assert r.contains(p) and all(r.tight(p))
    assert sum(p.values()) == x_dof(s, d)


@pytest.mark.parametrize("k", range(2, 7))
def test_full_duplex_region(k):
    r = build_outer_region(k, kind="full_duplex")
    assert len(r.inequalities) == k * (k - 1)
    assert max_sum_dof(r) == fd_upper(k)


def test_region_errors():
    with pytest.raises(ParameterError):
        build_outer_region(0, 2)
    with pytest.raises(ParameterError):
        build_outer_region(3, 3, kind="full_duplex")
    with pytest.raises(ParameterError):
        build_outer_region(3, 3, kind="ring")


def test_simplex_small():
    value, x, y, _ = simplex_max([[1, 2], [3, 1]], [4, 6], [1, 1])
    assert value == Fraction(14, 5)
    assert x == [Fraction(8, 5), Fraction(6, 5)]
    assert y == [Fraction(2, 5), Fraction(1, 5)]


def test_simplex_rejects_bad_data():
    with pytest.raises(ParameterError):
        simplex_max([[1]], [-1], [1])
    with pytest.raises(ParameterError):
        simplex_max([[0.5]], [1], [1])
    with pytest.raises(ParameterError):
        simplex_max([[-1]], [1], [1])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(0, 5), min_size=3, max_size=3), min_size=2, max_size=4),
       st.lists(st.integers(0, 9), min_size=4, max_size=4), st.lists(st.integers(0, 4), min_size=3, max_size=3))
def test_simplex_duality(A, b, c):
    b = b[:len(A)]
    # keep the LP bounded: every variable with positive cost appears in some row
    for j in range(3):
        if c[j] > 0 and all(row[j] == 0 for row in A):
            A[0][j] = 1
    value, x, y, _ = simplex_max(A, b, c)
    assert all(v >= 0 for v in x) and all(v >= 0 for v in y)
    for i, row in enumerate(A):
        assert sum(a * v for a, v in zip(row, x)) <= b[i]
    for j in range(3):
        assert sum(A[i][j] * y[i] for i in range(len(A))) >= c[j]
    assert value == sum(cj * xj for cj, xj in zip(c, x)) == sum(bi * yi for bi, yi in zip(b, y))


def test_closed_forms():
    assert ic_dof(4) == 2
    assert x_dof(3, 4) == 2
    assert fd_lower(5) == Fraction(5, 2)
    assert fd_upper(3) == 2
    assert half_duplex(3) == Fraction(9, 8)
    assert parallel_relay(2, 3) == Fraction(3, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 200))
def test_formula_ordering(k):
    assert fd_lower(k) == ic_dof(k)
    assert fd_lower(k) <= fd_upper(k)
    if k >= 3:
        assert fd_lower(k) < fd_upper(k)
        assert fd_lower(k) > half_duplex(k)


def test_formula_dispatch():
    assert formula("x_dof", 2, 2) == Fraction(4, 3)
    assert set(FORMULAS) == {"ic_dof", "x_dof", "fd_lower", "fd_upper", "half_duplex", "parallel_relay"}
    with pytest.raises(ParameterError):
        formula("nope", 1)
    with pytest.raises(ParameterError):
        formula("x_dof", 2)
    with pytest.raises(ParameterError):
        formula("fd_upper", 1)
