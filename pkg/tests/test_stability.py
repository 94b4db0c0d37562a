import json

import pytest

from edgestab import graph as gr
from edgestab.monomial import edge_ideal, make_ideal, power
from edgestab.stability import (
    StabilityReport,
    StabilityViolation,
    ass_sequence,
    astab_bar,
    check_containment_chain,
    depth_sequence,
    dstab_bar,
    first_stable_index,
    report,
)

COVERS = ((1, 2), (1, 3), (2, 3))


def pendant(g):
    return gr.Graph.from_edges(g.vertex_count + 1, g.edge_list + [(1, g.vertex_count + 1)])


def test_first_stable_index():
    assert first_stable_index([1]) == 1
    assert first_stable_index([1, 0, 0]) == 2
    assert first_stable_index([0, 1, 1, 1]) == 2
    assert first_stable_index([3, 3, 3]) == 1


def test_triangle_sequences():
    c3 = gr.cycle(3)
    assert ass_sequence(c3) == [COVERS, COVERS + ((1, 2, 3),)]
    assert depth_sequence(c3) == [1, 0]
    assert astab_bar(c3) == 2 and dstab_bar(c3) == 2


def test_edge_sequences():
    k2 = gr.path(2)
    assert ass_sequence(k2) == [((1,), (2,))]
    assert depth_sequence(k2) == [1]
    assert depth_sequence(gr.path(3)) == [1]
    assert astab_bar(k2) == dstab_bar(k2) == 1


def test_pentagon_depth_needs_three_powers():
    c5 = gr.cycle(5)
    assert gr.phi1(c5) == 3
    assert dstab_bar(c5) == 3


def test_two_triangles_reach_the_bound():
    g = gr.cycle(3).disjoint_union(gr.cycle(3))
    assert gr.phi0(g) == 5
    assert astab_bar(g) == 5


def test_reports():
    rep = report(gr.cycle(3))
    assert (rep.n0, rep.n1, rep.phi0, rep.phi1, rep.astab_bar, rep.dstab_bar) == (2,) * 6
    rep = report(gr.path(2))
    assert (rep.n0, rep.phi0, rep.phi1, rep.astab_bar, rep.dstab_bar) == (1,) * 5
    assert rep.n1 is None
    rep = report(pendant(gr.cycle(3)))
    assert rep.phi0 == 2 and rep.astab_bar == 2 and rep.leaf_edges == 1


def test_report_round_trip():
    rep = report(pendant(gr.cycle(3)))
    back = StabilityReport.from_dict(json.loads(rep.to_json()))
    assert back == rep
    assert rep.csv_row()[0] == rep.graph6
    assert "." not in rep.to_json().replace('"QQ (characteristic 0)"', "")


def test_shortcut_opt_out_agrees():
    g = gr.cycle(4)
    assert report(g, shortcut=False).ass_sequence == report(g).ass_sequence


def test_edgeless_graph_rejected():
    with pytest.raises(gr.GraphError):
        report(gr.edgeless(3))


def test_chain_violation_is_reported():
    I = edge_ideal(gr.cycle(3))
    too_small = power(I, 3)
    with pytest.raises(StabilityViolation):
        check_containment_chain(I, 2, too_small)
    too_big = make_ideal(3, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
    with pytest.raises(StabilityViolation):
        check_containment_chain(I, 2, too_big)
