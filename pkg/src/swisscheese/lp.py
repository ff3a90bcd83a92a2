"""Two-phase simplex over the rationals with Bland's rule.

Solves   maximise c.x   subject to   A x = b,  x >= 0
exactly; Bland's rule rules out cycling, so termination is guaranteed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class Infeasible(ValueError):
    pass


class Unbounded(ValueError):
    pass


@dataclass
class LPSolution:
    x: list[Fraction]
    value: Fraction
    pivots: int


def _pivot(T: list[list[Fraction]], obj: list[Fraction], basis: list[int], row: int, col: int) -> None:
    pr = T[row]
    p = pr[col]
    if p != 1:
        pr[:] = [v / p for v in pr]
    for i, r in enumerate(T):
        if i != row and r[col]:
            f = r[col]
            r[:] = [a - f * b for a, b in zip(r, pr)]
    if obj[col]:
        f = obj[col]
        obj[:] = [a - f * b for a, b in zip(obj, pr)]
    basis[row] = col


def _optimise(T, obj, basis, ncols: int) -> int:
    """Drive reduced costs nonnegative over the first ``ncols`` columns."""
    pivots = 0
    while True:
        col = next((j for j in range(ncols) if obj[j] < 0), None)
        if col is None:
            return pivots
        best = None
        for i, r in enumerate(T):
            if r[col] > 0:
                ratio = r[-1] / r[col]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise Unbounded(f"column {col} unbounded")
        _pivot(T, obj, basis, best[1], col)
        pivots += 1


def simplex_max(c: list[Fraction], A: list[list[Fraction]], b: list[Fraction]) -> LPSolution:
    n = len(c)
    m = len(A)
    rows = []
    for a_row, rhs in zip(A, b):
        a_row = [Fraction(v) for v in a_row]
        rhs = Fraction(rhs)
        if rhs < 0:
            a_row = [-v for v in a_row]
            rhs = -rhs
        rows.append((a_row, rhs))
    # phase 1 tableau: original columns, one artificial per row, rhs
    T = []
    for i, (a_row, rhs) in enumerate(rows):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(a_row + art + [rhs])
    basis = [n + i for i in range(m)]
    obj = [-sum((T[i][j] for i in range(m)), Fraction(0)) for j in range(n)] + [Fraction(0)] * m
    obj.append(-sum((r[-1] for r in T), Fraction(0)))
    pivots = _optimise(T, obj, basis, n + m)
    if obj[-1] != 0:
        raise Infeasible(f"phase 1 optimum {obj[-1]}")
    # drive remaining artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, obj, basis, i, col)
            pivots += 1
        i += 1
    T = [r[:n] + [r[-1]] for r in T]
    obj = [-Fraction(v) for v in c] + [Fraction(0)]
    for i, bj in enumerate(basis):
        f = obj[bj]
        if f:
            obj = [a - f * v for a, v in zip(obj, T[i])]
    pivots += _optimise(T, obj, basis, n)
    x = [Fraction(0)] * n
    for i, bj in enumerate(basis):
        x[bj] = T[i][-1]
    return LPSolution(x, obj[-1], pivots)
