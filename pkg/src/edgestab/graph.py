"""Finite simple graphs and the structural invariants used by the stability bounds.

Vertices are the integers ``1..r``.  A :class:`Graph` is an immutable value;
the expensive structural queries (cycle lengths, components) are cached on
first use.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable


class GraphError(ValueError):
    pass


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphError("vertex count must be nonnegative")
        normed = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (1 <= u <= self.vertex_count and 1 <= v <= self.vertex_count):
                raise GraphError(f"edge {e} outside 1..{self.vertex_count}")
            normed.add(_norm_edge(u, v))
        object.__setattr__(self, "edges", frozenset(normed))

    @classmethod
    def from_edges(cls, r: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        edges = list(edges)
        seen = set()
        for u, v in edges:
            e = _norm_edge(u, v)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
        return cls(r, frozenset(seen))

    # --- basic structure -------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    @cached_property
    def adjacency(self) -> dict[int, frozenset]:
        adj = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(ns) for v, ns in adj.items()}

    def neighbors(self, v: int) -> frozenset:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __repr__(self):
        return f"Graph({self.vertex_count}, {self.edge_list})"

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled to 1..k preserving vertex order."""
        keep = sorted(set(vertices))
        relabel = {v: i + 1 for i, v in enumerate(keep)}
        edges = [(relabel[u], relabel[v]) for u, v in self.edges
                 if u in relabel and v in relabel]
        return Graph.from_edges(len(keep), edges)

    def disjoint_union(self, other: "Graph") -> "Graph":
        r = self.vertex_count
        edges = list(self.edges) + [(u + r, v + r) for u, v in other.edges]
        return Graph.from_edges(r + other.vertex_count, edges)

    @cached_property
    def component_vertex_sets(self) -> tuple[tuple[int, ...], ...]:
        seen = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            comp = []
            queue = deque([s])
            seen.add(s)
            while queue:
                u = queue.popleft()
                comp.append(u)
                for w in self.adjacency[u]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    @cached_property
    def _cycle_lengths(self) -> frozenset:
        return frozenset(_simple_cycle_lengths(self.adjacency, self.vertex_count))

    @cached_property
    def profiles(self) -> tuple["ComponentProfile", ...]:
        return tuple(ComponentProfile.of(self.induced(vs), vs)
                     for vs in self.component_vertex_sets)


@dataclass(frozen=True)
class ComponentProfile:
    vertices: tuple[int, ...]
    is_bipartite: bool
    odd_girth: int | None
    max_odd_cycle: int | None
    max_cycle: int
    leaf_edge_count: int
    edge_count: int

    @classmethod
    def of(cls, comp: Graph, vertices: tuple[int, ...]) -> "ComponentProfile":
        og = odd_girth(comp)
        return cls(
            vertices=vertices,
            is_bipartite=og is None,
            odd_girth=og,
            max_odd_cycle=max_odd_cycle(comp),
            max_cycle=max_cycle(comp),
            leaf_edge_count=leaf_edge_count(comp),
            edge_count=len(comp.edges),
        )

    @property
    def size(self) -> int:
        return len(self.vertices)


def _simple_cycle_lengths(adj: dict[int, frozenset], r: int) -> set[int]:
    # Each cycle is rooted at its smallest vertex; the DFS only walks through
    # larger vertices, so every cycle is seen exactly twice (two directions).
    lengths = set()
    for s in range(1, r + 1):
        on_path = {s}
        stack = [(s, iter(sorted(w for w in adj[s] if w > s)), 1)]
        while stack:
            u, it, depth = stack[-1]
            advanced = False
            for w in it:
                if w == s:
                    continue
                if w in on_path:
                    continue
                if s in adj[w] and depth + 1 >= 3:
                    lengths.add(depth + 1)
                on_path.add(w)
                stack.append((w, iter(sorted(x for x in adj[w] if x > s)), depth + 1))
                advanced = True
                break
            if not advanced:
                stack.pop()
                on_path.discard(u)
    return lengths


# --- operations ------------------------------------------------------------

def components(g: Graph) -> list[tuple[Graph, tuple[int, ...]]]:
    """Connected components as (relabelled induced graph, original vertices)."""
    return [(g.induced(vs), vs) for vs in g.component_vertex_sets]


def is_bipartite(g: Graph) -> tuple[bool, dict[int, int] | tuple[int, ...]]:
    """Return ``(True, colouring)`` or ``(False, odd_cycle)``."""
    colour: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    for s in g.vertices:
        if s in colour:
            continue
        colour[s] = 0
        parent[s] = None
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in sorted(g.adjacency[u]):
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    parent[w] = u
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return False, _odd_cycle_from(u, w, parent)
    return True, colour


def _odd_cycle_from(u: int, w: int, parent: dict) -> tuple[int, ...]:
    pu = [u]
    while parent[pu[-1]] is not None:
        pu.append(parent[pu[-1]])
    pw = [w]
    while parent[pw[-1]] is not None:
        pw.append(parent[pw[-1]])
    # strip the common tail down to the lowest common ancestor
    while len(pu) > 1 and len(pw) > 1 and pu[-2] == pw[-2]:
        pu.pop()
        pw.pop()
    return tuple(pu + pw[-2::-1])


def odd_girth(g: Graph) -> int | None:
    """Shortest odd cycle length, by BFS from every vertex."""
    best = None
    for s in g.vertices:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
                elif dist[w] == dist[u]:
                    length = 2 * dist[u] + 1
                    if best is None or length < best:
                        best = length
    return best


def cycle_lengths(g: Graph) -> frozenset:
    return g._cycle_lengths


def max_odd_cycle(g: Graph) -> int | None:
    odd = [c for c in g._cycle_lengths if c % 2]
    return max(odd) if odd else None


def max_cycle(g: Graph) -> int:
    return max(g._cycle_lengths, default=0)


def has_cycle_of_length(g: Graph, length: int) -> bool:
    if length < 3:
        raise GraphError("cycle length must be at least 3")
    return length in g._cycle_lengths


def leaf_edge_count(g: Graph) -> int:
    return sum(1 for u, v in g.edges if g.degree(u) == 1 or g.degree(v) == 1)


def is_pseudoforest(g: Graph) -> bool:
    return all(p.edge_count <= p.size for p in g.profiles)


def delete_closed_neighborhood(g: Graph, v: int) -> Graph:
    """``G \\ N_G[v]``, relabelled to consecutive vertices."""
    if not 1 <= v <= g.vertex_count:
        raise GraphError(f"vertex {v} outside 1..{g.vertex_count}")
    closed = g.adjacency[v] | {v}
    return g.induced(u for u in g.vertices if u not in closed)


# --- invariants --------------------------------------------------------------

def _n0_of(profiles: list[ComponentProfile]) -> int:
    nonbip = [p for p in profiles if not p.is_bipartite]
    s = len(nonbip)
    if s == 0:
        return 1
    total = sum(p.size - p.leaf_edge_count - (p.odd_girth + 1) // 2 for p in nonbip)
    j = s // 2
    if s % 2 == 0:
        k = (min(p.odd_girth for p in nonbip) + 1) // 2
        return total + j + k
    return total + j + 1


def n0(g: Graph) -> int:
    return _n0_of(list(g.profiles))


def n1(g: Graph) -> int:
    """Defined only when every component contains an odd cycle."""
    profs = g.profiles
    if not profs or any(p.is_bipartite for p in profs):
        raise GraphError("n1 needs every connected component to be nonbipartite")
    p = len(profs)
    base = (g.vertex_count - leaf_edge_count(g)
            - sum((q.max_odd_cycle + 1) // 2 for q in profs))
    s = p // 2
    if p % 2 == 1:
        return base + s + 1
    m = (min(q.odd_girth for q in profs) + 1) // 2
    return base + s + m


def phi0(g: Graph) -> int:
    # bipartite components never enter n0, so only nonbipartite subsets matter
    nonbip = [p for p in g.profiles if not p.is_bipartite]
    best = 1
    for size in range(1, len(nonbip) + 1):
        for subset in combinations(nonbip, size):
            best = max(best, _n0_of(list(subset)))
    return best


def phi1(g: Graph) -> int:
    profs = g.profiles
    ks = []
    nonbip = []
    for p in profs:
        if p.is_bipartite:
            ks.append(max(p.max_cycle // 2, 1))
        else:
            ks.append((p.max_odd_cycle + 1) // 2)
            nonbip.append(p)
    base = g.vertex_count - leaf_edge_count(g) - sum(ks)
    t = len(nonbip)
    if t == 0:
        return base + 1
    j = t // 2
    if t % 2 == 0:
        m = (min(p.odd_girth for p in nonbip) + 1) // 2
        return base + j + m
    return base + j + 1


def bipartite_part(g: Graph) -> Graph:
    return g.induced(v for p in g.profiles if p.is_bipartite for v in p.vertices)


def nonbipartite_part(g: Graph) -> Graph:
    return g.induced(v for p in g.profiles if not p.is_bipartite for v in p.vertices)


# --- text formats ------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty edge-list input")
    try:
        head = lines[0].split()
        r, m = int(head[0]), int(head[1])
        body = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
    except (ValueError, IndexError) as exc:
        raise GraphError(f"malformed edge list: {exc}") from exc
    if len(body) != m or any(len(e) != 2 for e in body):
        raise GraphError(f"expected {m} edge lines of two integers")
    return Graph.from_edges(r, body)


def format_edge_list(g: Graph) -> str:
    out = [f"{g.vertex_count} {len(g.edges)}"]
    out += [f"{u} {v}" for u, v in g.edge_list]
    return "\n".join(out) + "\n"


def to_graph6(g: Graph) -> str:
    r = g.vertex_count
    if r > 62:
        raise GraphError("graph6 writer supports at most 62 vertices")
    bits = []
    for j in range(2, r + 1):
        for i in range(1, j):
            bits.append(1 if (i, j) in g.edges else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(63 + r)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        chars.append(chr(63 + val))
    return "".join(chars)


def from_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(d < 0 or d > 63 for d in data):
        raise GraphError("invalid graph6 character")
    r = data[0]
    if r == 63:
        raise GraphError("graph6 reader supports at most 62 vertices")
    bits = []
    for d in data[1:]:
        bits.extend((d >> k) & 1 for k in range(5, -1, -1))
    need = r * (r - 1) // 2
    if len(bits) < need:
        raise GraphError("graph6 string too short")
    edges = []
    k = 0
    for j in range(2, r + 1):
        for i in range(1, j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(r, edges)


# --- small named graphs ------------------------------------------------------

def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(1, n + 1), 2))


def edgeless(n: int) -> Graph:
    return Graph(n, frozenset())
