"""Exact rational simplex for small packing LPs.

Solves ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0``, so the slack
basis is feasible from the start and no phase one is needed.  Pivoting uses
Bland's rule, which cannot cycle.  Arithmetic is in :class:`Fraction`
throughout; nothing is ever rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class Unbounded(ArithmeticError):
    pass


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    primal: tuple  # optimal x
    dual: tuple  # optimal y (one entry per constraint row)
    pivots: int


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    m = len(b)
    n = len(c)
    if any(len(row) != n for row in A) or len(A) != m:
        raise ValueError("constraint matrix shape does not match c and b")
    if any(Fraction(x) < 0 for x in b):
        raise ValueError("right-hand side must be nonnegative")

    width = n + m + 1
    T = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]] + [Fraction(0)] * m + [Fraction(b[i])]
        row[n + i] = Fraction(1)
        T.append(row)
    obj = [-Fraction(x) for x in c] + [Fraction(0)] * (m + 1)
    basis = [n + i for i in range(m)]

    pivots = 0
    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if (best is None or ratio < best
                        or (ratio == best and basis[i] < basis[leave])):
                    best, leave = ratio, i
        if leave is None:
            raise Unbounded("objective is unbounded")
        piv = T[leave][enter]
        prow = [x / piv for x in T[leave]]
        T[leave] = prow
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * p for x, p in zip(T[i], prow)]
        f = obj[enter]
        obj = [x - f * p for x, p in zip(obj, prow)]
        basis[leave] = enter
        pivots += 1

    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = T[i][-1]
    y = tuple(obj[n + i] for i in range(m))
    assert len(obj) == width
    return LPResult(value=obj[-1], primal=tuple(x), dual=y, pivots=pivots)
