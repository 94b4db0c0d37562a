"""Irreducible decompositions and associated primes of monomial ideals.

Primes are reported as sorted tuples of 1-based variable indices; a set of
primes (an "Ass set") is a sorted tuple of such supports.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

import numpy as np

from . import staircase
from .closure import closure_power
from .monomial import (
    MonomialIdeal,
    colon_ideal,
    equal,
    intersect,
    is_subset,
    localize,
    make_ideal,
    prime_ideal,
)


class DecompositionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class IrreducibleComponent:
    """``(x_i^a_i : i in dom)`` stored as sorted ``((i, a_i), ...)``."""

    bounds: tuple

    @property
    def support(self) -> tuple:
        return tuple(i for i, _ in self.bounds)

    def ideal(self, r: int) -> MonomialIdeal:
        gens = []
        for i, a in self.bounds:
            e = [0] * r
            e[i - 1] = a
            gens.append(tuple(e))
        return make_ideal(r, gens)

    def contains_monomial(self, f: Sequence[int]) -> bool:
        return any(f[i - 1] >= a for i, a in self.bounds)

    def __str__(self):
        return "(" + ", ".join(f"x{i}^{a}" if a > 1 else f"x{i}" for i, a in self.bounds) + ")"


def _check_proper(I: MonomialIdeal):
    if I.is_zero:
        raise DecompositionError("zero ideal has no irreducible decomposition here")
    if I.is_unit:
        raise DecompositionError("unit ideal is not proper")


def irreducible_decomposition(I: MonomialIdeal) -> list[IrreducibleComponent]:
    """Irredundant irreducible components, read off the staircase corners.

    Each maximal standard monomial ``a`` (coordinates at the generator bound
    count as infinite) gives the component ``(x_i^(a_i+1) : a_i < bound_i)``.
    """
    _check_proper(I)
    bounds = I.bounds
    member = staircase.indicator(I.gens, bounds)
    corners = np.argwhere(staircase.corner_mask(member))
    comps = []
    for a in corners:
        comps.append(IrreducibleComponent(tuple(
            (i + 1, int(a[i]) + 1) for i in range(I.ambient) if a[i] < bounds[i])))
    return sorted(comps, key=_component_key)


def _component_key(c: IrreducibleComponent):
    return (len(c.bounds), c.support, c.bounds)


def irreducible_decomposition_splitting(I: MonomialIdeal) -> list[IrreducibleComponent]:
    """Same result by recursive splitting on mixed generators.

    Split the grlex-first generator with at least two variables as
    ``x_i^a * v``: ``I = (I + x_i^a) ∩ (I + v)``.  Leaves are generated by
    pure powers; components containing another component are dropped.
    """
    _check_proper(I)
    r = I.ambient
    leaves: set[IrreducibleComponent] = set()
    stack = [I]
    while stack:
        J = stack.pop()
        mixed = next((g for g in J.gens if sum(1 for x in g if x) >= 2), None)
        if mixed is None:
            leaves.add(IrreducibleComponent(tuple(sorted(
                (next(i for i, x in enumerate(g) if x) + 1, max(g)) for g in J.gens))))
            continue
        i = next(k for k, x in enumerate(mixed) if x)
        u = tuple(x if k == i else 0 for k, x in enumerate(mixed))
        v = tuple(0 if k == i else x for k, x in enumerate(mixed))
        stack.append(make_ideal(r, J.gens + (u,)))
        stack.append(make_ideal(r, J.gens + (v,)))
    comps = sorted(leaves, key=_component_key)
    kept = [c for c in comps
            if not any(d != c and _component_contains(c, d) for d in comps)]
    rebuilt = kept[0].ideal(r)
    for c in kept[1:]:
        rebuilt = intersect(rebuilt, c.ideal(r))
    if not equal(rebuilt, I):
        raise AssertionError("irreducible components do not intersect back to the ideal")
    return kept


def _component_contains(big: IrreducibleComponent, small: IrreducibleComponent) -> bool:
    """``small ⊆ big`` for irreducible monomial ideals."""
    bb = dict(big.bounds)
    return all(i in bb and bb[i] <= a for i, a in small.bounds)


def intersection_of(components: Iterable[IrreducibleComponent], r: int) -> MonomialIdeal:
    out = None
    for c in components:
        out = c.ideal(r) if out is None else intersect(out, c.ideal(r))
    return out


def associated_primes(I: MonomialIdeal) -> tuple:
    return tuple(sorted({c.support for c in irreducible_decomposition(I)},
                        key=lambda p: (len(p), p)))


def is_associated(I: MonomialIdeal, support: Iterable[int]) -> bool:
    """Socle test after localising at the variables outside ``support``."""
    support = sorted(set(support))
    if not support:
        return False
    outside = [i for i in range(1, I.ambient + 1) if i not in support]
    J = localize(I, outside)
    if J.is_unit or J.is_zero:
        return False
    return not equal(colon_ideal(J, prime_ideal(I.ambient, support)), J)


def maximal_in_ass(I: MonomialIdeal) -> bool:
    """Whether ``(x_1, ..., x_r)`` is associated to ``R/I``."""
    if I.is_unit:
        return False
    if I.is_zero:
        return False
    return is_associated(I, range(1, I.ambient + 1))


def ass_via_localization(I: MonomialIdeal, n: int) -> tuple:
    """Ass of ``R/closure(I^n)`` by recursion over single-variable localisations.

    Non-maximal primes come from closures of powers of the localised ideals;
    the prime of all active variables is tested with a socle check.
    """
    r = I.ambient
    memo: dict[frozenset, frozenset] = {}

    def rec(active: frozenset) -> frozenset:
        if active in memo:
            return memo[active]
        J = localize(I, [i for i in range(1, r + 1) if i not in active])
        out: set = set()
        if not (J.is_unit or J.is_zero) and active:
            C = closure_power(J, n)
            if not equal(colon_ideal(C, prime_ideal(r, sorted(active))), C):
                out.add(tuple(sorted(active)))
            for i in sorted(active):
                out |= rec(active - {i})
        memo[active] = frozenset(out)
        return memo[active]

    return tuple(sorted(rec(frozenset(range(1, r + 1))), key=lambda p: (len(p), p)))


def witness_search(I: MonomialIdeal, support: Iterable[int], degree: int):
    """First monomial ``f`` of the given degree with ``I : f = (x_i : i in support)``.

    Candidates are scanned in descending lexicographic order.
    """
    support = sorted(set(support))
    r = I.ambient
    if I.is_zero or I.is_unit or degree < 0:
        return None
    G = np.asarray(I.gens, dtype=np.int64)
    in_p = np.zeros(r, dtype=bool)
    in_p[[i - 1 for i in support]] = True
    cands = []
    for combo in combinations_with_replacement(range(r), degree):
        e = [0] * r
        for i in combo:
            e[i] += 1
        cands.append(e)
    if not cands:
        return None
    F = np.asarray(cands, dtype=np.int64)
    for start in range(0, len(F), 512):
        block = F[start:start + 512]
        D = np.maximum(G[None, :, :] - block[:, None, :], 0)  # gens of I : f
        nonzero = D.any(axis=2)
        outside_I = nonzero.all(axis=1)
        inside_P = (D[:, :, in_p] > 0).any(axis=2).all(axis=1)
        ok = outside_I & inside_P
        for i in support:
            e = np.zeros(r, dtype=np.int64)
            e[i - 1] = 1
            ok &= (D <= e).all(axis=2).any(axis=1)
        hits = np.flatnonzero(ok)
        if hits.size:
            return tuple(int(x) for x in block[hits[0]])
    return None


def full_support(r: int) -> tuple:
    return tuple(range(1, r + 1))

