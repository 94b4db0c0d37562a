import pytest
from hypothesis import given

from edgestab import graph as gr
from edgestab.closure import closure_power
from edgestab.homology import (
    HomologyError,
    betti_numbers,
    depth_quotient,
    exact_rank,
    lcm_lattice,
    lcm_lattice_mask,
    projective_dimension,
    reduced_homology,
    taylor_betti,
    total_betti,
    upper_koszul,
)
from edgestab.monomial import edge_ideal, make_ideal, power

from strategies import ideals

C3 = edge_ideal(gr.cycle(3))


def boundary_of_simplex(k):
    """All proper faces of the simplex on 1..k."""
    from itertools import combinations
    return [f for d in range(k) for f in combinations(range(1, k + 1), d)]


def test_reduced_homology_of_spheres():
    assert reduced_homology([()]) == {-1: 1}
    assert reduced_homology([]) == {}
    assert reduced_homology([(), (1,)]) == {}
    assert reduced_homology([(), (1,), (2,)]) == {0: 1}
    for k in range(2, 6):
        assert reduced_homology(boundary_of_simplex(k)) == {k - 2: 1}


def test_torus_free_part():
    # seven-vertex torus
    tri = [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3),
           (1, 2, 6), (2, 3, 7), (3, 4, 1), (4, 5, 2), (5, 6, 3), (6, 7, 4), (7, 1, 5)]
    from itertools import combinations
    faces = {()}
    for t in tri:
        for d in range(4):
            faces |= set(combinations(sorted(t), d))
    assert reduced_homology(faces) == {1: 2, 2: 1}


def test_exact_rank():
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([[2, 3], [4, 5]]) == 2
    assert exact_rank([]) == 0


def test_lcm_lattice_examples():
    xy_yz = make_ideal(3, [(1, 1, 0), (0, 1, 1)])
    assert set(lcm_lattice(xy_yz)) == {(1, 1, 0), (0, 1, 1), (1, 1, 1)}
    assert set(lcm_lattice(C3)) == {(1, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)}
    assert lcm_lattice(make_ideal(2, [(2, 1)])) == [(2, 1)]


@given(ideals(max_r=3, max_gens=4))
def test_lattice_mask_matches_joins(I):
    import numpy as np
    pts = {tuple(int(x) for x in p) for p in np.argwhere(lcm_lattice_mask(I))}
    assert pts == set(lcm_lattice(I))


def test_upper_koszul_examples():
    # at a generator nothing can be removed and stay in the ideal
    assert upper_koszul(make_ideal(2, [(1, 1)]), (1, 1)) == [()]
    # at x1x2x3 each single variable can be dropped, no pair can
    assert upper_koszul(C3, (1, 1, 1)) == [(), (1,), (2,), (3,)]
    with pytest.raises(HomologyError):
        upper_koszul(C3, (1, 0, 0))


def test_betti_examples():
    assert total_betti(betti_numbers(make_ideal(2, [(1, 1)]))) == {0: 1}
    assert total_betti(betti_numbers(C3)) == {0: 3, 1: 2}
    assert projective_dimension(make_ideal(2, [(2, 0), (1, 1), (0, 2)])) == 2


def test_depth_examples():
    assert depth_quotient(edge_ideal(gr.path(2))) == 1
    assert depth_quotient(C3) == 1
    assert depth_quotient(closure_power(C3, 2)) == 0
    assert depth_quotient(make_ideal(3, [])) == 3
    with pytest.raises(HomologyError):
        depth_quotient(C3, 4)


@given(ideals(max_r=3, max_gens=5))
def test_koszul_betti_numbers_match_taylor(I):
    assert betti_numbers(I) == taylor_betti(I)


@pytest.mark.parametrize("g", [gr.cycle(4), gr.path(4), gr.cycle(5)], ids=["C4", "P4", "C5"])
def test_koszul_betti_numbers_match_taylor_on_edge_ideals(g):
    I = edge_ideal(g)
    assert betti_numbers(I) == taylor_betti(I)
    assert betti_numbers(power(edge_ideal(gr.path(3)), 2)) == taylor_betti(
        power(edge_ideal(gr.path(3)), 2))


def test_taylor_limit():
    with pytest.raises(HomologyError):
        taylor_betti(power(C3, 3), max_gens=8)
