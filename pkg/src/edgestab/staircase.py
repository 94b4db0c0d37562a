"""Dense boolean membership arrays for monomial ideals over a bounding box.

A monomial ideal whose generators have i-th exponent at most ``b_i`` is
determined by its membership on the box ``prod [0, b_i]``: a coordinate at
its bound behaves like "infinity" since raising it further never changes
membership.  Bulk operations (minimal generators, corners, upper Koszul
faces) are then a handful of vectorised shifts.
"""

from __future__ import annotations

from itertools import product as iproduct

import numpy as np


def bounds_of(gens, r: int) -> tuple[int, ...]:
    if not gens:
        return (0,) * r
    return tuple(int(x) for x in np.max(np.asarray(gens, dtype=np.int64), axis=0))


def volume(bounds) -> int:
    v = 1
    for b in bounds:
        v *= b + 1
    return v


def upward_closure(mask: np.ndarray) -> np.ndarray:
    out = mask.copy()
    for axis in range(out.ndim):
        np.logical_or.accumulate(out, axis=axis, out=out)
    return out


def indicator(gens, bounds) -> np.ndarray:
    """Membership array of the ideal generated by ``gens`` (all inside the box)."""
    arr = np.zeros(tuple(b + 1 for b in bounds), dtype=bool)
    if len(gens):
        g = np.asarray(gens, dtype=np.int64).reshape(len(gens), len(bounds))
        arr[tuple(g.T)] = True
    return upward_closure(arr)


def shift_down(mask: np.ndarray, axis: int, fill: bool = False) -> np.ndarray:
    """``out[a] = mask[a - e_axis]``, with ``fill`` where ``a_axis == 0``."""
    out = np.full_like(mask, fill)
    src = [slice(None)] * mask.ndim
    dst = [slice(None)] * mask.ndim
    src[axis] = slice(0, -1)
    dst[axis] = slice(1, None)
    out[tuple(dst)] = mask[tuple(src)]
    return out


def shift_up(mask: np.ndarray, axis: int) -> np.ndarray:
    """``out[a] = mask[min(a + e_axis, bound)]`` (the top slab saturates)."""
    out = np.empty_like(mask)
    src = [slice(None)] * mask.ndim
    dst = [slice(None)] * mask.ndim
    src[axis] = slice(1, None)
    dst[axis] = slice(0, -1)
    out[tuple(dst)] = mask[tuple(src)]
    last = [slice(None)] * mask.ndim
    last[axis] = slice(-1, None)
    out[tuple(last)] = mask[tuple(last)]
    return out


def minimal_mask(member: np.ndarray) -> np.ndarray:
    """Points of an upward-closed set with no predecessor inside the set."""
    out = member.copy()
    for axis in range(member.ndim):
        out &= ~shift_down(member, axis)
    return out


def points(mask: np.ndarray) -> list[tuple[int, ...]]:
    return [tuple(int(x) for x in row) for row in np.argwhere(mask)]


def minimal_generators(member: np.ndarray) -> list[tuple[int, ...]]:
    return points(minimal_mask(member))


def corner_mask(member: np.ndarray) -> np.ndarray:
    """Maximal standard monomials: outside the ideal, but every unit step
    that does not sit at the (saturating) bound lands inside it."""
    out = ~member
    for axis in range(member.ndim):
        top = np.zeros_like(member)
        idx = [slice(None)] * member.ndim
        idx[axis] = slice(-1, None)
        top[tuple(idx)] = True
        out &= top | shift_up(member, axis)
    return out


def degree_grid(bounds) -> np.ndarray:
    grids = np.indices(tuple(b + 1 for b in bounds), dtype=np.int64)
    return grids.sum(axis=0) if len(bounds) else np.zeros((), dtype=np.int64)


def squarefree_vectors(r: int):
    return list(iproduct((0, 1), repeat=r))
