from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wreath_observable.exact import solve_consistent


def fraction_rref_rank(rows):
    """Rank by plain Gauss-Jordan over Fractions (independent oracle)."""
    m = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def matmul(a, x):
    return [sum(Fraction(v) * xi for v, xi in zip(row, x)) for row in a]


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=200, deadline=None)
@given(matrices, st.data())
def test_solution_of_consistent_system(a, data):
    x0 = data.draw(st.lists(st.integers(-5, 5), min_size=len(a[0]), max_size=len(a[0])))
    b = [int(v) for v in matmul(a, x0)]
    x = solve_consistent(a, b)
    assert matmul(a, x) == b


@settings(max_examples=200, deadline=None)
@given(matrices, st.data())
def test_inconsistent_detected_iff_rank_grows(a, data):
    b = data.draw(st.lists(st.integers(-5, 5), min_size=len(a), max_size=len(a)))
    consistent = fraction_rref_rank(a) == fraction_rref_rank([r + [v] for r, v in zip(a, b)])
    if consistent:
        assert matmul(a, solve_consistent(a, b)) == b
    else:
        with pytest.raises(ArithmeticError):
            solve_consistent(a, b)


def test_singular_gram_free_variables_zero():
    # two identical columns: the second is free
    a = [[2, 2], [2, 2]]
    assert solve_consistent(a, [4, 4]) == [Fraction(2), Fraction(0)]


def test_nonsingular_exact():
    a = [[2, 1], [1, 3]]
    assert solve_consistent(a, [1, 2]) == [Fraction(1, 5), Fraction(3, 5)]
