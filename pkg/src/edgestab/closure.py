"""Integral closures of powers of monomial ideals.

A monomial ``x^a`` lies in the closure of ``I^n`` exactly when ``a`` lies in
``n`` times the Newton polyhedron of ``I``, i.e. when the packing LP

    max sum(l_g)   s.t.   sum(l_g * g) <= a,  l >= 0

over the minimal generators ``g`` of ``I`` has optimum at least ``n``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, reduce
from math import lcm as ilcm
from typing import Sequence

import numpy as np

from . import lp, staircase
from .monomial import (
    DimensionError,
    MonomialIdeal,
    equal,
    grlex_key,
    power_contains,
    unit_ideal,
)


class ClosureError(ValueError):
    pass


def _packing_lp(I: MonomialIdeal, alpha: Sequence[int]) -> lp.LPResult:
    gens = I.gens
    A = [[g[i] for g in gens] for i in range(I.ambient)]
    return lp.maximize([1] * len(gens), A, list(alpha))


def np_member(I: MonomialIdeal, n: int, alpha: Sequence[int]) -> bool:
    if n < 1:
        raise ValueError("n must be at least 1")
    if len(alpha) != I.ambient:
        raise DimensionError("exponent vector length does not match ambient")
    if I.is_zero:
        return False
    if I.is_unit:
        return True
    return _packing_lp(I, alpha).value >= n


def packing_value(I: MonomialIdeal, alpha: Sequence[int]) -> Fraction:
    """Largest ``t`` with ``alpha`` in ``t * NP(I)``."""
    return _packing_lp(I, alpha).value


# Certified dual cuts, keyed by generator set.  Each entry (Y, D) is an
# integer vector with Y/D >= 0 and <g, Y/D> >= 1 for every generator g, so
# <a, Y> < n*D proves a is outside n*NP(I) by weak duality.
_CUTS: dict[tuple, list[tuple[np.ndarray, int]]] = {}


def _certified_cut(I: MonomialIdeal, y: Sequence[Fraction]) -> tuple[np.ndarray, int]:
    if any(v < 0 for v in y):
        raise AssertionError("dual solution has a negative entry")
    for g in I.gens:
        if sum(gi * yi for gi, yi in zip(g, y)) < 1:
            raise AssertionError(f"dual solution violates generator {g}")
    D = reduce(ilcm, (v.denominator for v in y), 1)
    return np.array([int(v * D) for v in y], dtype=np.int64), D


def _shift_or(mask: np.ndarray, g: Sequence[int]) -> np.ndarray:
    """``out[a] = mask[a - g]`` (False when a - g leaves the box)."""
    out = np.zeros_like(mask)
    src, dst = [], []
    for gi, size in zip(g, mask.shape):
        if gi >= size:
            return out
        src.append(slice(0, size - gi))
        dst.append(slice(gi, size))
    out[tuple(dst)] = mask[tuple(src)]
    return out


def power_membership(I: MonomialIdeal, n: int, bounds) -> np.ndarray:
    """Membership array of ``I^n`` on the given box."""
    cur = staircase.indicator([g for g in I.gens if all(a <= b for a, b in zip(g, bounds))],
                              bounds)
    for _ in range(n - 1):
        nxt = np.zeros_like(cur)
        for g in I.gens:
            nxt |= _shift_or(cur, g)
        cur = nxt
    return cur


def closure_power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    if n < 1:
        raise ValueError("n must be at least 1")
    if I.is_zero:
        raise ClosureError("closure of a power of the zero ideal is not computed")
    return _closure_cached(I, n)


@lru_cache(maxsize=8192)
def _closure_cached(I: MonomialIdeal, n: int) -> MonomialIdeal:
    if I.is_unit:
        return unit_ideal(I.ambient)
    r = I.ambient
    bounds = tuple(n * b for b in I.bounds)
    member = power_membership(I, n, bounds)

    # Degree cap for minimal points: if a = sum(l_g g) + v with sum(l) = n and
    # v >= 0, then |a| >= n*D + r forces |v| >= r, hence some v_i >= 1, and
    # a - e_i is still in n*NP(I); so a is not minimal.  Minimal generators
    # therefore satisfy |a| <= n*D + r - 1.
    cap = n * I.max_degree + r - 1
    deg = staircase.degree_grid(bounds)
    grid = np.indices(member.shape, dtype=np.int64)

    undecided = ~member & (deg <= cap)
    cuts = _CUTS.setdefault(I.gens, [])
    for Y, D in cuts:
        undecided &= np.tensordot(Y, grid, axes=1) >= n * D

    while undecided.any():
        low = deg[undecided].min()
        alpha = tuple(int(x) for x in np.argwhere(undecided & (deg == low))[0])
        res = _packing_lp(I, alpha)
        if res.value >= n:
            cone = tuple(slice(a, None) for a in alpha)
            member[cone] = True
            undecided[cone] = False
        else:
            Y, D = _certified_cut(I, res.dual)
            cuts.append((Y, D))
            undecided &= np.tensordot(Y, grid, axes=1) >= n * D
            assert not undecided[alpha]

    gens = staircase.minimal_generators(member)
    if any(sum(g) > cap for g in gens):
        raise AssertionError("closure generator exceeds the degree cap")
    return MonomialIdeal(r, tuple(sorted(gens, key=grlex_key)))


def is_integrally_closed(I: MonomialIdeal) -> bool:
    if I.is_zero:
        raise ClosureError("zero ideal")
    return equal(closure_power(I, 1), I)


def power_certificate(I: MonomialIdeal, n: int, alpha: Sequence[int],
                      m_max: int) -> int | None:
    """Smallest ``m <= m_max`` with ``x^(m*alpha)`` in ``I^(n*m)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    for m in range(1, m_max + 1):
        if power_contains(I, n * m, tuple(m * a for a in alpha)):
            return m
    return None
