"""Exact linear algebra over the integers / rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def solve_consistent(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction]:
    """One exact solution of ``matrix @ x = rhs`` with free variables set to 0.

    Fraction-free (Bareiss) elimination to row echelon form; every division
    by the previous pivot is exact and is asserted to be.  Raises
    ``ArithmeticError`` when the system is inconsistent.
    """
    rows = [list(map(int, r)) + [int(b)] for r, b in zip(matrix, rhs)]
    nrows = len(rows)
    ncols = len(rows[0]) - 1 if rows else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        top = rows[r]
        p = top[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            a = row[c]
            if a == 0 and p == prev:
                continue
            for j in range(c + 1, ncols + 1):
                q, rem = divmod(p * row[j] - a * top[j], prev)
                if rem:
                    raise AssertionError("non-exact Bareiss division")
                row[j] = q
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    for i in range(r, nrows):
        if rows[i][ncols]:
            raise ArithmeticError("inconsistent linear system")
    x = [Fraction(0)] * ncols
    for i in reversed(range(r)):
        c = pivots[i]
        row = rows[i]
        acc = Fraction(row[ncols])
        for j in range(c + 1, ncols):
            if row[j] and x[j]:
                acc -= row[j] * x[j]
        x[c] = acc / row[c]
    return x
