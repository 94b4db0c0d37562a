"""Monomial ideals stored by their minimal generating antichain.

Monomials are plain tuples of nonnegative integers (exponent vectors).  All
ideal operations return new :class:`MonomialIdeal` values whose generators
are minimal and sorted in graded lexicographic order, so equality of ideals
is equality of values.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Sequence

import numpy as np

from . import staircase
from .graph import Graph

Monomial = tuple  # exponent vector


class DimensionError(ValueError):
    pass


def degree(m: Sequence[int]) -> int:
    return sum(m)


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def mul(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def grlex_key(m: Sequence[int]):
    return (sum(m), tuple(-x for x in m))


def unit(r: int) -> tuple:
    return (0,) * r


def variable(r: int, i: int) -> tuple:
    """The monomial ``x_i`` (1-based)."""
    return tuple(1 if j == i - 1 else 0 for j in range(r))


# Below this many candidates a plain quadratic sweep beats numpy setup cost.
_SMALL = 64
_MAX_BOX = 4_000_000


def minimalize(vectors: Iterable[Sequence[int]], r: int) -> tuple:
    cands = {tuple(int(x) for x in v) for v in vectors}
    for c in cands:
        if len(c) != r:
            raise DimensionError(f"exponent vector {c} has length {len(c)}, expected {r}")
    if not cands:
        return ()
    if len(cands) <= _SMALL:
        kept: list[tuple] = []
        for c in sorted(cands, key=grlex_key):
            if not any(divides(k, c) for k in kept):
                kept.append(c)
        return tuple(kept)
    bounds = staircase.bounds_of(list(cands), r)
    if staircase.volume(bounds) <= _MAX_BOX:
        member = staircase.indicator(list(cands), bounds)
        gens = staircase.minimal_generators(member)
    else:
        gens = _minimalize_pairwise(np.asarray(sorted(cands, key=grlex_key)))
    return tuple(sorted(gens, key=grlex_key))


def _minimalize_pairwise(arr: np.ndarray) -> list[tuple]:
    kept = np.empty((0, arr.shape[1]), dtype=arr.dtype)
    for row in arr:
        if kept.shape[0] and np.any(np.all(kept <= row, axis=1)):
            continue
        kept = np.vstack([kept, row])
    return [tuple(int(x) for x in k) for k in kept]


@dataclass(frozen=True)
class MonomialIdeal:
    ambient: int
    gens: tuple

    def __post_init__(self):
        if self.ambient < 1:
            raise DimensionError("ambient variable count must be positive")

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.gens == (unit(self.ambient),)

    @property
    def is_squarefree(self) -> bool:
        return all(x <= 1 for g in self.gens for x in g)

    @property
    def max_degree(self) -> int:
        return max((sum(g) for g in self.gens), default=0)

    @property
    def bounds(self) -> tuple:
        return staircase.bounds_of(self.gens, self.ambient)

    @property
    def support(self) -> frozenset:
        return frozenset(i + 1 for g in self.gens for i, x in enumerate(g) if x)

    def __contains__(self, f) -> bool:
        return contains(self, f)

    def __len__(self) -> int:
        return len(self.gens)

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(format_monomial(g) for g in self.gens) + ")"

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "generators": [list(g) for g in self.gens]}

    @classmethod
    def from_json(cls, data) -> "MonomialIdeal":
        if isinstance(data, str):
            data = json.loads(data)
        return make_ideal(int(data["ambient"]), [tuple(g) for g in data["generators"]])


# --- constructors ----------------------------------------------------------

def make_ideal(r: int, gens: Iterable[Sequence[int]]) -> MonomialIdeal:
    gens = list(gens)
    for g in gens:
        if len(g) != r:
            raise DimensionError(f"generator {tuple(g)} does not have length {r}")
        if any(x < 0 for x in g):
            raise ValueError(f"negative exponent in {tuple(g)}")
    return MonomialIdeal(r, minimalize(gens, r))


def zero_ideal(r: int) -> MonomialIdeal:
    return MonomialIdeal(r, ())


def unit_ideal(r: int) -> MonomialIdeal:
    return MonomialIdeal(r, (unit(r),))


def prime_ideal(r: int, support: Iterable[int]) -> MonomialIdeal:
    """``(x_i : i in support)`` with 1-based indices."""
    return make_ideal(r, [variable(r, i) for i in support])


def edge_ideal(g: Graph) -> MonomialIdeal:
    r = max(g.vertex_count, 1)
    gens = []
    for u, v in g.edges:
        e = [0] * r
        e[u - 1] = e[v - 1] = 1
        gens.append(tuple(e))
    return make_ideal(r, gens)


# --- arithmetic ------------------------------------------------------------

def _same_ambient(I: MonomialIdeal, J: MonomialIdeal) -> int:
    if I.ambient != J.ambient:
        raise DimensionError(f"ambient mismatch: {I.ambient} vs {J.ambient}")
    return I.ambient


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    r = _same_ambient(I, J)
    return MonomialIdeal(r, minimalize(I.gens + J.gens, r))


def _pairwise(I: MonomialIdeal, J: MonomialIdeal, op) -> tuple:
    r = I.ambient
    if len(I.gens) * len(J.gens) <= 4 * _SMALL:
        if op is np.add:
            cands = [mul(a, b) for a in I.gens for b in J.gens]
        else:
            cands = [lcm(a, b) for a in I.gens for b in J.gens]
        return minimalize(cands, r)
    A = np.asarray(I.gens, dtype=np.int64)
    B = np.asarray(J.gens, dtype=np.int64)
    C = op(A[:, None, :], B[None, :, :]).reshape(-1, r)
    C = np.unique(C, axis=0)
    return minimalize(C.tolist(), r)


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    r = _same_ambient(I, J)
    if I.is_zero or J.is_zero:
        return zero_ideal(r)
    return MonomialIdeal(r, _pairwise(I, J, np.add))


def power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    if n < 0:
        raise ValueError("power exponent must be nonnegative")
    return _power_cached(I, n)


@lru_cache(maxsize=4096)
def _power_cached(I: MonomialIdeal, n: int) -> MonomialIdeal:
    if n == 0:
        return unit_ideal(I.ambient)
    if n == 1:
        return I
    half = _power_cached(I, n // 2)
    out = product(half, half)
    if n % 2:
        out = product(out, I)
    return out


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    r = _same_ambient(I, J)
    if I.is_zero or J.is_zero:
        return zero_ideal(r)
    if len(I.gens) * len(J.gens) > 4 * _SMALL:
        # membership of I ∩ J is the conjunction of memberships on a common box
        bounds = tuple(max(a, b) for a, b in zip(I.bounds, J.bounds))
        if staircase.volume(bounds) <= _MAX_BOX:
            member = staircase.indicator(I.gens, bounds) & staircase.indicator(J.gens, bounds)
            gens = staircase.minimal_generators(member)
            return MonomialIdeal(r, tuple(sorted(gens, key=grlex_key)))
    return MonomialIdeal(r, _pairwise(I, J, np.maximum))


def colon(I: MonomialIdeal, f: Sequence[int]) -> MonomialIdeal:
    if len(f) != I.ambient:
        raise DimensionError("monomial length does not match ambient")
    gens = [tuple(max(a - b, 0) for a, b in zip(g, f)) for g in I.gens]
    return MonomialIdeal(I.ambient, minimalize(gens, I.ambient))


def colon_ideal(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    r = _same_ambient(I, J)
    if J.is_zero:
        return unit_ideal(r)
    out = None
    for h in J.gens:
        part = colon(I, h)
        out = part if out is None else intersect(out, part)
    return out


def contains(I: MonomialIdeal, f: Sequence[int]) -> bool:
    if len(f) != I.ambient:
        raise DimensionError("monomial length does not match ambient")
    return any(divides(g, f) for g in I.gens)


def is_subset(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """``I ⊆ J``."""
    _same_ambient(I, J)
    if len(I.gens) * len(J.gens) <= 4 * _SMALL:
        return all(contains(J, g) for g in I.gens)
    if J.is_zero:
        return I.is_zero
    bounds = J.bounds
    if staircase.volume(bounds) > _MAX_BOX:
        return all(contains(J, g) for g in I.gens)
    member = staircase.indicator(J.gens, bounds)
    pts = np.minimum(np.asarray(I.gens, dtype=np.int64), np.asarray(bounds, dtype=np.int64))
    return bool(member[tuple(pts.T)].all())


def equal(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    _same_ambient(I, J)
    return I.gens == J.gens


def localize(I: MonomialIdeal, F: Iterable[int]) -> MonomialIdeal:
    """Invert the variables in ``F`` (1-based) and contract back to R."""
    F = set(F)
    for i in F:
        if not 1 <= i <= I.ambient:
            raise DimensionError(f"variable index {i} outside 1..{I.ambient}")
    gens = [tuple(0 if (j + 1) in F else x for j, x in enumerate(g)) for g in I.gens]
    return MonomialIdeal(I.ambient, minimalize(gens, I.ambient))


def saturate(I: MonomialIdeal, support: Iterable[int]) -> MonomialIdeal:
    """``I : (x_i : i in support)^∞`` by iterated colon."""
    support = sorted(set(support))
    if not support:
        raise ValueError("saturation needs a nonempty prime support")
    P = prime_ideal(I.ambient, support)
    cur = I
    while True:
        nxt = colon_ideal(cur, P)
        if equal(nxt, cur):
            return cur
        cur = nxt


def minimal_transversals(I: MonomialIdeal) -> list[frozenset]:
    """Minimal primes of a squarefree ideal: minimal sets meeting every generator.

    For an edge ideal these are the minimal vertex covers.
    """
    if not I.is_squarefree:
        raise ValueError("minimal primes by transversals need a squarefree ideal")
    if I.is_zero:
        return []
    supports = [frozenset(i + 1 for i, x in enumerate(g) if x) for g in I.gens]
    if any(not s for s in supports):
        return []
    found: list[frozenset] = []
    for size in range(1, I.ambient + 1):
        for C in combinations(range(1, I.ambient + 1), size):
            C = frozenset(C)
            if any(f <= C for f in found):
                continue
            if all(s & C for s in supports):
                found.append(C)
    return sorted(found, key=lambda c: (len(c), sorted(c)))


def prime_power(r: int, support: Iterable[int], n: int) -> MonomialIdeal:
    support = sorted(support)
    gens = []
    for combo in combinations_with_replacement(support, n):
        e = [0] * r
        for i in combo:
            e[i - 1] += 1
        gens.append(tuple(e))
    return make_ideal(r, gens)


def symbolic_power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    if n < 1:
        raise ValueError("symbolic power needs n >= 1")
    if not I.is_squarefree:
        raise ValueError("symbolic power is implemented for squarefree ideals only")
    if I.is_zero or I.is_unit:
        return I
    out = None
    for C in minimal_transversals(I):
        part = prime_power(I.ambient, C, n)
        out = part if out is None else intersect(out, part)
    return out


def power_contains(I: MonomialIdeal, k: int, f: Sequence[int]) -> bool:
    """``x^f ∈ I^k`` by searching for k generators whose product divides f.

    Works without materialising ``I^k``; the search is memoised on the
    remaining exponent vector.
    """
    gens = I.gens

    @lru_cache(maxsize=None)
    def rec(rem: tuple, k: int, start: int) -> bool:
        if k == 0:
            return True
        if sum(rem) < k * min(sum(g) for g in gens):
            return False
        for idx in range(start, len(gens)):
            g = gens[idx]
            if divides(g, rem):
                if rec(tuple(a - b for a, b in zip(rem, g)), k - 1, idx):
                    return True
        return False

    if k == 0:
        return True
    if not gens:
        return False
    return rec(tuple(f), k, 0)


# --- text forms --------------------------------------------------------------

def format_monomial(m: Sequence[int]) -> str:
    parts = []
    for i, x in enumerate(m):
        if x == 1:
            parts.append(f"x{i + 1}")
        elif x > 1:
            parts.append(f"x{i + 1}^{x}")
    return "*".join(parts) if parts else "1"


_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_monomial(text: str, r: int) -> tuple:
    text = text.strip().replace(" ", "")
    e = [0] * r
    if text == "1":
        return tuple(e)
    for factor in text.split("*"):
        m = _FACTOR.match(factor)
        if not m:
            raise ValueError(f"cannot parse monomial factor {factor!r}")
        i = int(m.group(1))
        if not 1 <= i <= r:
            raise DimensionError(f"variable x{i} outside 1..{r}")
        e[i - 1] += int(m.group(2) or 1)
    return tuple(e)
