import itertools
import random

import networkx as nx
import pytest

from edgestab import graph as gr
from edgestab.corpus import (
    CorpusError,
    CorpusSpec,
    all_graphs,
    canonical_form,
    connected_graphs,
    generate_corpus,
    random_pseudoforest,
    read_graph_file,
    write_graph_file,
)

# Numbers of graphs up to isomorphism (OEIS A001349 and A000088).
CONNECTED = [1, 1, 2, 6, 21, 112, 853]
ALL = [1, 2, 4, 11, 34, 156]


def to_nx(g):
    G = nx.Graph()
    G.add_nodes_from(g.vertices)
    G.add_edges_from(g.edge_list)
    return G


@pytest.mark.parametrize("k", range(1, 7))
def test_connected_counts(k):
    assert len(connected_graphs(k)) == CONNECTED[k - 1]


@pytest.mark.parametrize("k", range(1, 7))
def test_all_graph_counts(k):
    assert len(all_graphs(k)) == ALL[k - 1]


def test_seven_vertex_connected_count():
    assert len(connected_graphs(7)) == 853


@pytest.mark.parametrize("k", range(2, 6))
def test_classes_are_distinct_and_connected(k):
    gs = [to_nx(g) for g in connected_graphs(k)]
    assert all(nx.is_connected(G) for G in gs)
    for G, H in itertools.combinations(gs, 2):
        assert not nx.is_isomorphic(G, H)


def test_canonical_form_is_isomorphism_invariant():
    rng = random.Random(3)
    for g in connected_graphs(6)[::7]:
        perm = list(g.vertices)
        rng.shuffle(perm)
        h = gr.Graph.from_edges(g.vertex_count, [(perm[u - 1], perm[v - 1]) for u, v in g.edges])
        assert canonical_form(h) == canonical_form(g)


def test_exhaustive_three():
    gs = list(generate_corpus(CorpusSpec("exhaustive", max_vertices=3)))
    assert sorted(len(g.edges) for g in gs) == [1, 2, 3]


def test_filters():
    spec = CorpusSpec("exhaustive", max_vertices=5, pseudoforest_only=True, no_c4=True)
    for g in generate_corpus(spec):
        assert gr.is_pseudoforest(g) and 4 not in gr.cycle_lengths(g)


def test_random_pseudoforests_are_deterministic():
    spec = CorpusSpec("random_pseudoforest", max_vertices=5, count=8, seed=42)
    first = list(generate_corpus(spec))
    assert first == list(generate_corpus(spec))
    assert len(first) == 8
    assert all(gr.is_pseudoforest(g) and g.edges for g in first)


def test_random_pseudoforest_shape():
    rng = random.Random(0)
    seen_odd = seen_even = False
    for _ in range(300):
        g = random_pseudoforest(7, rng)
        assert 2 <= g.vertex_count <= 7 and gr.is_pseudoforest(g)
        lengths = gr.cycle_lengths(g)
        seen_odd |= any(L % 2 for L in lengths)
        seen_even |= any(L % 2 == 0 for L in lengths)
    assert seen_odd and seen_even


def test_random_corpus_needs_seed():
    with pytest.raises(CorpusError):
        list(generate_corpus(CorpusSpec("random_pseudoforest", max_vertices=5, count=2)))


def test_file_round_trip(tmp_path):
    gs = list(generate_corpus(CorpusSpec("exhaustive", max_vertices=4)))
    path = tmp_path / "corpus.edges"
    write_graph_file(path, gs)
    assert read_graph_file(path) == gs
    spec = CorpusSpec("file", path=str(path))
    assert list(generate_corpus(spec)) == gs


def test_graph6_file(tmp_path):
    path = tmp_path / "g.g6"
    path.write_text("Bw\nCF\n")
    assert [len(g.edges) for g in read_graph_file(path)] == [3, 3]
