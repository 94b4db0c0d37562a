import json

from edgestab import graph as gr
from edgestab.corpus import CorpusSpec
from edgestab.harness import (
    PairLimits,
    binomial_expansion,
    check_ass_oracle,
    check_bounds_and_sharpness,
    check_depth_split,
    check_leaf_and_cover,
    check_maximal_ideal_threshold,
    check_naive,
    check_closure_expansion,
    check_ass_of_sum,
    check_depth_of_sum,
    depth_product_formula,
    embed,
    naive_expansion_holds,
    report_json,
    run,
)
from edgestab.monomial import edge_ideal, make_ideal

C3 = gr.cycle(3)
K2 = gr.path(2)
P3 = gr.path(3)
C5 = gr.cycle(5)


def pendant(g):
    return gr.Graph.from_edges(g.vertex_count + 1, g.edge_list + [(1, g.vertex_count + 1)])


def test_embed():
    I = embed(edge_ideal(K2), 5, 3)
    assert I == make_ideal(5, [(0, 0, 0, 1, 1)])


def test_binomial_expansion_at_one_is_the_sum():
    I = embed(edge_ideal(K2), 5, 0)
    J = embed(edge_ideal(C3), 5, 2)
    from edgestab.monomial import ideal_sum
    assert binomial_expansion(I, J, 1) == ideal_sum(I, J)


def test_t0_examples():
    assert check_closure_expansion(K2, C3, 2).passed
    assert check_closure_expansion(P3, C5, 2).passed


def test_t1_examples():
    r = check_ass_of_sum(K2, C3, 2)
    assert r.passed and r.detail["size"] == 8
    r = check_ass_of_sum(K2, C3, 1)
    assert r.passed and r.detail["size"] == 6
    assert check_ass_of_sum(P3, C3, 2).passed


def test_t2_examples():
    assert check_depth_of_sum(K2, C3, 2).passed
    assert check_depth_of_sum(K2, C3, 1).passed
    assert check_depth_of_sum(P3, C5, 2).passed


def test_depth_product_formula_index_convention():
    # n = 1: only the second family contributes
    assert depth_product_formula({1: 1}, {1: 1}, 1) == 2
    assert depth_product_formula({1: 1, 2: 1}, {1: 1, 2: 0}, 2) == 1


def test_naive_expansion_fails_for_two_triangles():
    assert naive_expansion_holds(C3, C3, 2)
    assert not naive_expansion_holds(C3, C3, 3)
    (res,) = check_naive(C3.disjoint_union(C3))
    assert res.passed and res.detail["fails_at"] == [3]


def test_per_graph_checks_on_examples():
    for g in (C3, pendant(C3), gr.cycle(4)):
        results = check_bounds_and_sharpness(g)
        assert all(r.passed for r in results)
    names = {r.check for r in check_bounds_and_sharpness(gr.cycle(4))}
    assert "dstab_sharp" not in names
    assert all(r.passed for r in check_maximal_ideal_threshold(C3))
    assert all(r.passed for r in check_leaf_and_cover(pendant(C3)))
    assert all(r.passed for r in check_ass_oracle(C5))


def test_d1_on_composites():
    g = P3.disjoint_union(C3)
    results = {r.check: r for r in check_depth_split(g)}
    assert results["depth_floor"].passed and results["depth_split"].passed
    results = {r.check: r for r in check_depth_split(gr.edgeless(1).disjoint_union(C5))}
    assert results["depth_split"].passed


def test_empty_corpus_passes(tmp_path):
    path = tmp_path / "empty.edges"
    path.write_text("")
    rep = run(CorpusSpec("file", path=str(path)))
    assert rep["ok"] and rep["graphs"] == 0 and rep["summary"] == {}


def test_small_run_is_deterministic():
    spec = CorpusSpec("random_pseudoforest", max_vertices=5, count=4, seed=7)
    limits = PairLimits(2, 3, 2)
    a, b = run(spec, pairs=limits), run(spec, pairs=limits)
    assert a["ok"]
    a.pop("timing"), b.pop("timing")
    assert report_json(a) == report_json(b)


def test_report_has_no_floats():
    rep = run(CorpusSpec("exhaustive", max_vertices=3), pairs=PairLimits(2, 3, 2))

    def walk(x):
        assert not isinstance(x, float)
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, (list, tuple)):
            for v in x:
                walk(v)

    walk(json.loads(report_json(rep)))
    assert rep["schema"] == 1 and rep["ok"]
