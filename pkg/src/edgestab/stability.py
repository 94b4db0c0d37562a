"""Stability indices of integral-closure powers of edge ideals.

The sequences are computed up to the invariant bounds ``phi0`` (associated
primes) and ``phi1`` (depth), plus ``probe`` extra powers.  A change past
the bound is a counterexample to the bound and raises
:class:`StabilityViolation` instead of being reported as data.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field

from . import graph as gr
from .closure import closure_power
from .decomposition import associated_primes, maximal_in_ass
from .homology import FIELD, depth_quotient
from .monomial import (
    MonomialIdeal,
    edge_ideal,
    is_subset,
    power,
    symbolic_power,
)

# Always-on invariant assertions (containment chain, depth/socle agreement).
CHECKS = os.environ.get("EDGESTAB_CHECKS", "1") not in ("0", "", "false")


class StabilityViolation(AssertionError):
    def __init__(self, message: str, payload: dict):
        super().__init__(message)
        self.payload = payload


def _require_edges(g: gr.Graph):
    if not g.edges:
        raise gr.GraphError("stability indices need a graph with at least one edge")


def closure_of_power(g: gr.Graph, n: int, shortcut: bool = True) -> MonomialIdeal:
    """``closure(I(g)^n)``; bipartite graphs use ordinary powers when ``shortcut``."""
    I = edge_ideal(g)
    bipartite = all(p.is_bipartite for p in g.profiles)
    C = power(I, n) if (shortcut and bipartite) else closure_power(I, n)
    if CHECKS:
        check_containment_chain(I, n, C, g)
    return C


def check_containment_chain(I: MonomialIdeal, n: int, C: MonomialIdeal, g=None):
    """``I^n ⊆ closure(I^n) ⊆ I^(n)``."""
    if (I, n, C) in _CHAIN_OK:
        return
    if not is_subset(power(I, n), C):
        raise StabilityViolation("ordinary power not inside its closure",
                                 {"graph": _gid(g), "n": n})
    if not is_subset(C, symbolic_power(I, n)):
        raise StabilityViolation("closure not inside the symbolic power",
                                 {"graph": _gid(g), "n": n})
    _CHAIN_OK.add((I, n, C))


_CHAIN_OK: set = set()


def _gid(g) -> str | None:
    return gr.to_graph6(g) if g is not None else None


def first_stable_index(seq: list) -> int:
    """Least ``n`` (1-based) from which ``seq`` is constant."""
    k = len(seq)
    while k > 1 and seq[k - 2] == seq[-1]:
        k -= 1
    return k


def ass_sequence(g: gr.Graph, upto: int | None = None, shortcut: bool = True) -> list[tuple]:
    _require_edges(g)
    upto = gr.phi0(g) if upto is None else upto
    seq = []
    for n in range(1, upto + 1):
        seq.append(associated_primes(closure_of_power(g, n, shortcut)))
        if len(seq) > 1 and not set(seq[-2]) <= set(seq[-1]):
            raise StabilityViolation(
                "associated primes of closure powers are not increasing",
                {"graph": _gid(g), "n": n, "previous": seq[-2], "current": seq[-1]})
    return seq


def depth_sequence(g: gr.Graph, upto: int | None = None, shortcut: bool = True) -> list[int]:
    _require_edges(g)
    upto = gr.phi1(g) if upto is None else upto
    seq = []
    for n in range(1, upto + 1):
        C = closure_of_power(g, n, shortcut)
        d = depth_quotient(C)
        if CHECKS and (d == 0) != maximal_in_ass(C):
            raise StabilityViolation("depth zero disagrees with the socle test",
                                     {"graph": _gid(g), "n": n, "depth": d})
        seq.append(d)
    return seq


def astab_bar(g: gr.Graph, probe: int = 1) -> int:
    bound = gr.phi0(g)
    seq = ass_sequence(g, bound + probe)
    _check_bound(g, seq, bound, "ass")
    return first_stable_index(seq[:bound])


def dstab_bar(g: gr.Graph, probe: int = 1) -> int:
    bound = gr.phi1(g)
    seq = depth_sequence(g, bound + probe)
    _check_bound(g, seq, bound, "depth")
    return first_stable_index(seq[:bound])


def _check_bound(g, seq, bound, what):
    for n in range(bound + 1, len(seq) + 1):
        if seq[n - 1] != seq[bound - 1]:
            raise StabilityViolation(
                f"{what} sequence changes after the bound {bound}",
                {"graph": _gid(g), "bound": bound, "n": n,
                 "at_bound": seq[bound - 1], "after": seq[n - 1]})


@dataclass
class StabilityReport:
    graph6: str
    edges: list
    vertex_count: int
    leaf_edges: int
    odd_girth: int | None
    n0: int
    n1: int | None
    phi0: int
    phi1: int
    ass_sequence: list
    depth_sequence: list
    astab_bar: int
    dstab_bar: int
    pseudoforest: bool
    has_c4: bool
    probe: int = 1
    homology_field: str = FIELD
    extra: dict = field(default_factory=dict)

    @property
    def astab_gap(self) -> int:
        return self.phi0 - self.astab_bar

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ass_sequence"] = [[list(p) for p in A] for A in self.ass_sequence]
        d["edges"] = [list(e) for e in self.edges]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "StabilityReport":
        d = dict(d)
        d["ass_sequence"] = [tuple(tuple(p) for p in A) for A in d["ass_sequence"]]
        d["edges"] = [tuple(e) for e in d["edges"]]
        return cls(**d)

    CSV_FIELDS = ("graph6", "vertex_count", "leaf_edges", "odd_girth", "n0", "n1",
                  "phi0", "phi1", "astab_bar", "dstab_bar", "pseudoforest", "has_c4")

    def csv_row(self) -> list[str]:
        return ["" if getattr(self, f) is None else str(getattr(self, f))
                for f in self.CSV_FIELDS]


def report(g: gr.Graph, probe: int = 1, shortcut: bool = True) -> StabilityReport:
    _require_edges(g)
    p0, p1 = gr.phi0(g), gr.phi1(g)
    ass = ass_sequence(g, p0 + probe, shortcut)
    _check_bound(g, ass, p0, "ass")
    dep = depth_sequence(g, p1 + probe, shortcut)
    _check_bound(g, dep, p1, "depth")
    try:
        n1 = gr.n1(g)
    except gr.GraphError:
        n1 = None
    return StabilityReport(
        graph6=gr.to_graph6(g),
        edges=g.edge_list,
        vertex_count=g.vertex_count,
        leaf_edges=gr.leaf_edge_count(g),
        odd_girth=gr.odd_girth(g),
        n0=gr.n0(g),
        n1=n1,
        phi0=p0,
        phi1=p1,
        ass_sequence=ass[:p0],
        depth_sequence=dep[:p1],
        astab_bar=first_stable_index(ass[:p0]),
        dstab_bar=first_stable_index(dep[:p1]),
        pseudoforest=gr.is_pseudoforest(g),
        has_c4=4 in gr.cycle_lengths(g),
        probe=probe,
    )


def clear_caches() -> None:
    """Drop every memo table (closures, cuts, powers, homology, chain checks).

    Only needed for cold-start timing; results never depend on the caches.
    """
    from . import closure, homology, monomial

    closure._closure_cached.cache_clear()
    closure._CUTS.clear()
    monomial._power_cached.cache_clear()
    homology._homology_of_mask.cache_clear()
    homology._face_of.cache_clear()
    _CHAIN_OK.clear()
