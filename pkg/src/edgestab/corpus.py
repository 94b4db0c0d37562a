"""Graph corpora: exhaustive small graphs up to isomorphism, random pseudoforests, files."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from pathlib import Path
from typing import Iterator

from . import graph as gr


class CorpusError(ValueError):
    pass


# --- canonical forms ---------------------------------------------------------

def _refined_classes(g: gr.Graph) -> list[list[int]]:
    """Vertex classes by an isomorphism-invariant colour refinement, in colour order."""
    colour = {v: g.degree(v) for v in g.vertices}
    while True:
        sig = {v: (colour[v], tuple(sorted(colour[w] for w in g.adjacency[v])))
               for v in g.vertices}
        keys = sorted(set(sig.values()))
        new = {v: keys.index(sig[v]) for v in g.vertices}
        if len(set(new.values())) == len(set(colour.values())):
            colour = new
            break
        colour = new
    classes: dict[int, list[int]] = {}
    for v in g.vertices:
        classes.setdefault(colour[v], []).append(v)
    return [classes[c] for c in sorted(classes)]


def canonical_form(g: gr.Graph) -> tuple:
    """Lexicographically least upper-triangle adjacency word over all
    labellings compatible with the refined colour classes."""
    r = g.vertex_count
    classes = _refined_classes(g)
    pairs = [(i, j) for j in range(r) for i in range(j)]
    best = None
    for perms in product(*(permutations(c) for c in classes)):
        order = [v for p in perms for v in p]  # new label k -> old vertex order[k]
        word = tuple(1 if _norm(order[i], order[j]) in g.edges else 0 for i, j in pairs)
        if best is None or word < best:
            best = word
    return (r, best)


def _norm(u, v):
    return (u, v) if u < v else (v, u)


def canonical_graph(g: gr.Graph) -> gr.Graph:
    r, word = canonical_form(g)
    pairs = [(i + 1, j + 1) for j in range(r) for i in range(j)]
    return gr.Graph.from_edges(r, [p for p, b in zip(pairs, word) if b])


# --- exhaustive enumeration ------------------------------------------------------

@lru_cache(maxsize=None)
def connected_graphs(k: int) -> tuple[gr.Graph, ...]:
    """All connected graphs on exactly ``k`` vertices, one per isomorphism class.

    Every connected graph has a non-cut vertex, so extending each class on
    ``k - 1`` vertices by one new vertex with every nonempty neighbourhood
    reaches every class on ``k`` vertices.
    """
    if k < 1:
        return ()
    if k == 1:
        return (gr.Graph(1, frozenset()),)
    seen = {}
    for h in connected_graphs(k - 1):
        for size in range(1, k):
            for nbrs in combinations(range(1, k), size):
                g = gr.Graph.from_edges(k, list(h.edges) + [(v, k) for v in nbrs])
                key = canonical_form(g)
                if key not in seen:
                    seen[key] = canonical_graph(g)
    return tuple(sorted(seen.values(), key=_order_key))


def _order_key(g: gr.Graph):
    return (g.vertex_count, len(g.edges), gr.to_graph6(g))


def all_graphs(k: int) -> tuple[gr.Graph, ...]:
    """All graphs on exactly ``k`` vertices up to isomorphism (multisets of
    connected components)."""
    comps = [(size, h) for size in range(1, k + 1) for h in connected_graphs(size)]
    out = []

    def rec(remaining, start, acc):
        if remaining == 0:
            g = gr.Graph(0, frozenset())
            for h in acc:
                g = g.disjoint_union(h)
            out.append(canonical_graph(g))
            return
        for idx in range(start, len(comps)):
            size, h = comps[idx]
            if size <= remaining:
                rec(remaining - size, idx, acc + [h])

    rec(k, 0, [])
    return tuple(sorted(out, key=_order_key))


# --- random pseudoforests ----------------------------------------------------------

def _prufer_tree(k: int, rng: random.Random) -> list[tuple[int, int]]:
    if k == 1:
        return []
    if k == 2:
        return [(1, 2)]
    seq = [rng.randint(1, k) for _ in range(k - 2)]
    degree = [1] * (k + 1)
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(1, k + 1) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = [v for v in range(1, k + 1) if degree[v] == 1]
    edges.append((u, w))
    return edges


def _random_component(k: int, rng: random.Random) -> list[tuple[int, int]]:
    if k >= 3 and rng.random() < 0.5:
        want_odd = rng.random() < 0.5
        lengths = [L for L in range(3, k + 1) if (L % 2 == 1) == want_odd] or \
                  list(range(3, k + 1))
        L = rng.choice(lengths)
        edges = [(i, i % L + 1) for i in range(1, L + 1)]
        for v in range(L + 1, k + 1):
            edges.append((rng.randint(1, v - 1), v))
        return edges
    return _prufer_tree(k, rng)


def random_pseudoforest(max_vertices: int, rng: random.Random) -> gr.Graph:
    r = rng.randint(2, max_vertices)
    sizes = []
    left = r
    while left:
        s = rng.randint(1, left)
        sizes.append(s)
        left -= s
    if max(sizes) < 2:
        sizes = [2] + sizes[2:]
    edges = []
    offset = 0
    for s in sizes:
        edges += [(u + offset, v + offset) for u, v in _random_component(s, rng)]
        offset += s
    perm = list(range(1, offset + 1))
    rng.shuffle(perm)
    return gr.Graph.from_edges(offset, [(perm[u - 1], perm[v - 1]) for u, v in edges])


# --- corpus specs ------------------------------------------------------------------

@dataclass(frozen=True)
class CorpusSpec:
    mode: str  # "exhaustive" | "random_pseudoforest" | "file"
    max_vertices: int = 5
    count: int = 0
    seed: int | None = None
    path: str | None = None
    connected_only: bool = True
    pseudoforest_only: bool = False
    no_c4: bool = False

    def validate(self):
        if self.mode not in ("exhaustive", "random_pseudoforest", "file"):
            raise CorpusError(f"unknown corpus mode {self.mode!r}")
        if self.mode in ("exhaustive", "random_pseudoforest") and self.max_vertices < 1:
            raise CorpusError("max_vertices must be positive")
        if self.mode == "random_pseudoforest":
            if self.seed is None:
                raise CorpusError("random corpora need an explicit seed")
            if self.count < 0:
                raise CorpusError("count must be nonnegative")
            if self.max_vertices < 2:
                raise CorpusError("random pseudoforests need max_vertices >= 2")
        if self.mode == "file" and not self.path:
            raise CorpusError("file corpus needs a path")

    def describe(self) -> dict:
        return {k: v for k, v in self.__dict__.items()}


def _passes(spec: CorpusSpec, g: gr.Graph) -> bool:
    if not g.edges:
        return False
    if spec.connected_only and len(g.component_vertex_sets) != 1:
        return False
    if spec.pseudoforest_only and not gr.is_pseudoforest(g):
        return False
    if spec.no_c4 and 4 in gr.cycle_lengths(g):
        return False
    return True


def generate_corpus(spec: CorpusSpec) -> Iterator[gr.Graph]:
    spec.validate()
    if spec.mode == "exhaustive":
        for k in range(1, spec.max_vertices + 1):
            pool = connected_graphs(k) if spec.connected_only else all_graphs(k)
            for g in pool:
                if _passes(spec, g):
                    yield g
    elif spec.mode == "random_pseudoforest":
        rng = random.Random(spec.seed)
        made = 0
        while made < spec.count:
            g = random_pseudoforest(spec.max_vertices, rng)
            if _passes(spec, g):
                made += 1
                yield g
    else:
        for g in read_graph_file(spec.path):
            if _passes(spec, g):
                yield g


def read_graph_file(path) -> list[gr.Graph]:
    """Edge-list blocks separated by blank lines, or one graph6 string per line."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        return []
    if len(lines[0].split()) == 2:
        blocks, cur = [], []
        for ln in text.splitlines():
            if ln.strip():
                cur.append(ln)
            elif cur:
                blocks.append(cur)
                cur = []
        if cur:
            blocks.append(cur)
        return [gr.parse_edge_list("\n".join(b)) for b in blocks]
    return [gr.from_graph6(ln) for ln in lines]


def write_graph_file(path, graphs) -> None:
    Path(path).write_text("\n".join(gr.format_edge_list(g) for g in graphs))
