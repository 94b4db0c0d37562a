"""Multigraded Betti numbers and depth of monomial quotients.

``beta_{i,a}(I)`` is the rank of reduced homology ``H~_{i-1}`` of the upper
Koszul complex ``K^a(I) = {squarefree g <= a : x^(a-g) in I}``, taken over
the rationals.  Nonzero values only occur at lcm-lattice points; depth then
follows from Auslander-Buchsbaum: ``depth R/I = r - pd(R/I)``.
"""

from __future__ import annotations

from math import gcd
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from . import staircase
from .monomial import MonomialIdeal, divides, lcm

FIELD = "QQ (characteristic 0)"


class HomologyError(ValueError):
    pass


# --- exact linear algebra ----------------------------------------------------

def exact_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals of an integer matrix.

    Fraction-free elimination on sparse rows: unit pivots are preferred so
    that the +-1 boundary matrices of small complexes stay small, and every
    combined row is divided by the gcd of its entries.
    """
    work = []
    for row in rows:
        d = {j: int(x) for j, x in enumerate(row) if x}
        if d:
            work.append(d)
    return _sparse_rank(work)


def _sparse_rank(work: list[dict]) -> int:
    rank = 0
    while work:
        # pick the row whose leading column is smallest, unit entries first
        best = None
        for i, row in enumerate(work):
            col = min(row)
            key = (col, abs(row[col]) != 1)
            if best is None or key < best[0]:
                best = (key, i)
        piv = work.pop(best[1])
        col = best[0][0]
        p = piv[col]
        rank += 1
        rest = []
        for row in work:
            a = row.get(col)
            if a is None:
                rest.append(row)
                continue
            if p in (1, -1):
                new = dict(row)
                f = a * p
                for j, v in piv.items():
                    w = new.get(j, 0) - f * v
                    if w:
                        new[j] = w
                    else:
                        new.pop(j, None)
            else:
                new = {}
                for j in set(row) | set(piv):
                    w = p * row.get(j, 0) - a * piv.get(j, 0)
                    if w:
                        new[j] = w
                if new:
                    gg = 0
                    for v in new.values():
                        gg = gcd(gg, v)
                    if gg > 1:
                        new = {j: v // gg for j, v in new.items()}
            if new:
                rest.append(new)
        work = rest
    return rank


# --- simplicial homology -----------------------------------------------------

def reduced_homology(faces) -> dict[int, int]:
    """Reduced rational Betti numbers ``{k: dim H~_k}`` of a simplicial complex.

    ``faces`` is a collection of vertex tuples closed under subsets.  The
    empty complex ``{()}`` has ``H~_{-1}`` of rank one; the void complex (no
    faces at all) has no homology.
    """
    faces = {tuple(sorted(f)) for f in faces}
    if not faces:
        return {}
    by_dim: dict[int, list] = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(f)
    for k in by_dim:
        by_dim[k].sort()
    top = max(by_dim)
    index = {k: {f: j for j, f in enumerate(fs)} for k, fs in by_dim.items()}

    def boundary_rank(k: int) -> int:
        # d_k : C_k -> C_{k-1}
        if k not in by_dim or (k - 1) not in by_dim:
            return 0
        rows = []
        tgt = index[k - 1]
        for f in by_dim[k]:
            row = [0] * len(tgt)
            for j in range(len(f)):
                row[tgt[f[:j] + f[j + 1:]]] = (-1) ** j
            rows.append(row)
        return exact_rank(rows)

    ranks = {k: boundary_rank(k) for k in range(0, top + 1)}
    out = {}
    for k in range(-1, top + 1):
        dim = len(by_dim.get(k, ()))
        h = dim - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if h:
            out[k] = h
    return out


@lru_cache(maxsize=None)
def _homology_of_mask(r: int, packed: bytes) -> tuple:
    bits = np.unpackbits(np.frombuffer(packed, dtype=np.uint8))[: 1 << r]
    codes = [int(j) for j in np.flatnonzero(bits)]
    if _is_cone(codes, r):
        return ()
    faces = [_face_of(r, j) for j in codes]
    return tuple(sorted(reduced_homology(faces).items()))


def _is_cone(codes: list[int], r: int) -> bool:
    """A nonvoid complex that is a cone over some vertex is acyclic."""
    if not codes:
        return False
    present = set(codes)
    for v in range(r):
        bit = 1 << v
        if all((c | bit) in present for c in codes):
            return True
    return False


@lru_cache(maxsize=None)
def _face_of(r: int, j: int) -> tuple:
    return tuple(i + 1 for i in range(r) if (j >> i) & 1)


# --- lcm lattice and upper Koszul complexes ---------------------------------

def lcm_lattice(I: MonomialIdeal) -> list[tuple]:
    """Joins of nonempty generator subsets, by closing the generators under join."""
    if I.is_zero:
        raise HomologyError("zero ideal has an empty lcm lattice")
    seen = set(I.gens)
    frontier = list(I.gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in I.gens:
                j = lcm(a, g)
                if j not in seen:
                    seen.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(seen, key=lambda a: (sum(a), a))


def lcm_lattice_mask(I: MonomialIdeal) -> np.ndarray:
    """Lattice membership on the generator box.

    ``a`` is a join of generators iff, for every i with ``a_i > 0``, some
    generator below ``a`` reaches ``a_i``; equivalently the count of
    generators below ``a`` drops when ``a_i`` is lowered by one.
    """
    bounds = I.bounds
    count = np.zeros(tuple(b + 1 for b in bounds), dtype=np.int64)
    g = np.asarray(I.gens, dtype=np.int64)
    np.add.at(count, tuple(g.T), 1)
    for axis in range(count.ndim):
        np.cumsum(count, axis=axis, out=count)
    mask = count > 0
    for axis in range(count.ndim):
        lower = staircase.shift_down(count, axis, fill=-1)
        mask &= count > lower
    return mask


def upper_koszul(I: MonomialIdeal, alpha: Sequence[int]) -> list[tuple]:
    """Faces (1-based vertex tuples) of the upper Koszul complex at ``alpha``."""
    alpha = tuple(alpha)
    if not any(divides(g, alpha) for g in I.gens):
        raise HomologyError(f"{alpha} is not above any generator")
    supp = [i for i, a in enumerate(alpha) if a > 0]
    faces = []
    for k in range(len(supp) + 1):
        for S in combinations(supp, k):
            shifted = list(alpha)
            for i in S:
                shifted[i] -= 1
            if any(divides(g, shifted) for g in I.gens):
                faces.append(tuple(i + 1 for i in S))
    return faces


def _koszul_codes(I: MonomialIdeal, pts: np.ndarray, member: np.ndarray) -> np.ndarray:
    """Packed face-indicator rows, one per lattice point."""
    r = I.ambient
    cols = []
    for j in range(1 << r):
        gamma = np.array([(j >> i) & 1 for i in range(r)], dtype=np.int64)
        shifted = pts - gamma
        ok = (shifted >= 0).all(axis=1)
        col = np.zeros(len(pts), dtype=bool)
        if ok.any():
            col[ok] = member[tuple(shifted[ok].T)]
        cols.append(col)
    return np.packbits(np.stack(cols, axis=1), axis=1)


def betti_numbers(I: MonomialIdeal) -> dict[tuple[int, tuple], int]:
    """``{(i, a): beta_{i,a}(I)}`` with zero entries omitted."""
    if I.is_zero or I.is_unit:
        raise HomologyError("Betti numbers need a nonzero proper ideal")
    member = staircase.indicator(I.gens, I.bounds)
    pts = np.argwhere(lcm_lattice_mask(I))
    codes = _koszul_codes(I, pts, member)
    uniq, inverse = np.unique(codes, axis=0, return_inverse=True)
    hom = [_homology_of_mask(I.ambient, row.tobytes()) for row in uniq]
    table = {}
    for p, u in zip(pts, inverse.reshape(-1)):
        for k, rank in hom[u]:
            table[(k + 1, tuple(int(x) for x in p))] = rank
    return table


def total_betti(table: dict) -> dict[int, int]:
    out: dict[int, int] = {}
    for (i, _), v in table.items():
        out[i] = out.get(i, 0) + v
    return dict(sorted(out.items()))


def projective_dimension(I: MonomialIdeal) -> int:
    """``pd(R/I) = 1 + max{i : beta_i(I) != 0}``."""
    table = betti_numbers(I)
    return 1 + max(i for i, _ in table)


def depth_quotient(I: MonomialIdeal, r: int | None = None) -> int:
    if r is None:
        r = I.ambient
    if r != I.ambient:
        raise HomologyError(f"ambient {I.ambient} does not match r = {r}")
    if I.is_unit:
        raise HomologyError("R/R is the zero module")
    if I.is_zero:
        return r
    return r - projective_dimension(I)


# --- Taylor complex oracle ---------------------------------------------------

def taylor_betti(I: MonomialIdeal, max_gens: int = 8) -> dict[tuple[int, tuple], int]:
    """Betti numbers of ``I`` from the degree strands of the Taylor resolution.

    Independent of the upper Koszul route: ranks come from sympy.
    """
    import sympy

    gens = I.gens
    if len(gens) > max_gens:
        raise HomologyError(f"Taylor oracle limited to {max_gens} generators")
    strands: dict[tuple, dict[int, list]] = {}
    for k in range(1, len(gens) + 1):
        for S in combinations(range(len(gens)), k):
            a = gens[S[0]]
            for s in S[1:]:
                a = lcm(a, gens[s])
            strands.setdefault(a, {}).setdefault(k, []).append(S)
    table = {}
    for a, by_size in strands.items():
        def drank(k):
            # differential from subsets of size k to size k-1 within the strand
            if k not in by_size or (k - 1) not in by_size:
                return 0
            tgt = {S: j for j, S in enumerate(by_size[k - 1])}
            M = sympy.zeros(len(by_size[k]), len(tgt))
            for row, S in enumerate(by_size[k]):
                for j in range(len(S)):
                    T = S[:j] + S[j + 1:]
                    if T in tgt:
                        M[row, tgt[T]] = (-1) ** j
            return M.rank()

        for k, basis in by_size.items():
            h = len(basis) - drank(k) - drank(k + 1)
            if h:
                table[(k - 1, a)] = h
    return table
