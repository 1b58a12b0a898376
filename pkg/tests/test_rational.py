import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from recreg.rational import (
    DimensionError,
    RatMatrix,
    det,
    nullspace,
    parse_rational,
    positive_multiple,
    primitive,
    rank,
    solve_linear,
)


def cofactor_det(m):
    if len(m) == 1:
        return F(m[0][0])
    return sum((-1) ** j * m[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(len(m)))


def elimination_rank(m):
    rows = [[F(x) for x in r] for r in m]
    r = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


small = st.integers(-9, 9)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


def test_parse_forms():
    assert parse_rational("3/6") == F(1, 2)
    assert parse_rational("-0.125") == F(-1, 8)
    assert parse_rational(7) == 7
    assert parse_rational("1e-3") == F(1, 1000)
    for bad in ("1/0", "abc", "nan", "inf", True):
        with pytest.raises((ValueError, ZeroDivisionError, TypeError)):
            parse_rational(bad)


def test_det_small_cases():
    assert det([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert det([[1, 2], [3, 4]]) == -2
    with pytest.raises(DimensionError):
        det([[1, 2, 3], [4, 5, 6]])


def test_det_matches_cofactor_on_random_4x4():
    rng = random.Random(7)
    for _ in range(100):
        m = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
        assert det(m) == cofactor_det(m)


@given(square(3))
def test_det_transpose_and_row_swap(m):
    t = [list(r) for r in zip(*m)]
    assert det(m) == det(t)
    assert det([m[1], m[0], m[2]]) == -det(m)


def test_rank_examples():
    assert rank([[0, 0, 0], [0, 0, 0]]) == 0
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank([[1, 2], [2, 4]]) == 1


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_matches_elimination(m):
    assert rank(m) == elimination_rank(m)


def test_solve_examples():
    s = solve_linear([[1, 0], [0, 1]], [3, 5])
    assert s.x == (3, 5) and s.nullspace == ()
    s = solve_linear([[1, 1]], [0])
    assert s.x == (0, 0)
    (v,) = s.nullspace
    assert v[0] == -v[1] != 0
    assert solve_linear([[1, 1], [1, 1]], [0, 1]).x is None
    with pytest.raises(DimensionError):
        solve_linear([[1, 1]], [1, 2])


def test_random_consistent_systems_substitute_back():
    rng = random.Random(11)
    for _ in range(60):
        m = [[rng.randint(-5, 5) for _ in range(5)] for _ in range(3)]
        x0 = [F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(5)]
        b = [sum(a * x for a, x in zip(row, x0)) for row in m]
        s = solve_linear(m, b)
        assert [sum(a * x for a, x in zip(row, s.x)) for row in m] == b
        for v in s.nullspace:
            assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in m)
        assert len(s.nullspace) == 5 - rank(m)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=3))
def test_nullspace_is_annihilated(m):
    for v in nullspace(m, 3):
        assert all(sum(a * x for a, x in zip(r, v)) == 0 for r in m)


@given(st.lists(st.fractions(max_denominator=50), min_size=1, max_size=4))
def test_results_are_canonical(v):
    if any(v):
        p = primitive(v)
        assert all(x.denominator == 1 for x in p)
        assert math.gcd(*[int(x) for x in p]) == 1
        assert positive_multiple(p, v)
    assert all(math.gcd(x.numerator, x.denominator) == 1 and x.denominator > 0 for x in v)


def test_matrix_shape_invariant():
    m = RatMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert (m.rows, m.cols) == (2, 3)
    assert m.transpose().tolist() == [[1, 4], [2, 5], [3, 6]]
    with pytest.raises(DimensionError):
        RatMatrix.from_rows([[1, 2], [3]])
