import pytest
from hypothesis import given

from edgestab import graph as gr
from edgestab.closure import closure_power
from edgestab.decomposition import (
    DecompositionError,
    IrreducibleComponent,
    ass_via_localization,
    associated_primes,
    intersection_of,
    irreducible_decomposition,
    irreducible_decomposition_splitting,
    is_associated,
    maximal_in_ass,
    witness_search,
)
from edgestab.monomial import colon, edge_ideal, make_ideal, power, prime_ideal

from strategies import ideals, squarefree_ideals

C3 = edge_ideal(gr.cycle(3))
COVERS = ((1, 2), (1, 3), (2, 3))


def comp(*pairs):
    return IrreducibleComponent(tuple(pairs))


def test_decomposition_examples():
    assert irreducible_decomposition(make_ideal(2, [(1, 1)])) == [comp((1, 1)), comp((2, 1))]
    assert sorted(irreducible_decomposition(C3)) == sorted(
        comp((i, 1), (j, 1)) for i, j in COVERS)
    got = irreducible_decomposition(make_ideal(2, [(2, 0), (1, 1)]))
    assert sorted(got) == sorted([comp((1, 1)), comp((1, 2), (2, 1))])


def test_zero_ideal_rejected():
    with pytest.raises(DecompositionError):
        irreducible_decomposition(make_ideal(2, []))


def test_associated_prime_examples():
    assert associated_primes(C3) == COVERS
    assert associated_primes(closure_power(C3, 2)) == COVERS + ((1, 2, 3),)
    assert associated_primes(make_ideal(1, [(1,)])) == ((1,),)


def test_maximal_ideal_examples():
    assert maximal_in_ass(closure_power(C3, 2))
    assert not maximal_in_ass(closure_power(C3, 1))
    for g in (gr.path(3), gr.cycle(4)):
        I = edge_ideal(g)
        assert not any(maximal_in_ass(power(I, n)) for n in range(1, 5))


def test_localization_oracle_examples():
    assert ass_via_localization(C3, 2) == associated_primes(closure_power(C3, 2))
    K2 = edge_ideal(gr.path(2))
    for n in range(1, 4):
        assert ass_via_localization(K2, n) == ((1,), (2,))
    C5 = edge_ideal(gr.cycle(5))
    assert ass_via_localization(C5, 3) == associated_primes(closure_power(C5, 3))


def test_witness_examples():
    sq = closure_power(C3, 2)
    assert witness_search(sq, (1, 2, 3), 3) == (1, 1, 1)
    assert witness_search(C3, (1, 2, 3), 1) is None
    K2 = edge_ideal(gr.path(2))
    assert witness_search(K2, (1,), 1) == (0, 1)
    f = witness_search(sq, (1, 2, 3), 3)
    assert colon(sq, f) == prime_ideal(3, (1, 2, 3))


def test_two_triangles_gain_maximal_ideal_late():
    I = edge_ideal(gr.cycle(3).disjoint_union(gr.cycle(3)))
    seq = [maximal_in_ass(closure_power(I, n)) for n in range(1, 6)]
    assert seq == [False, False, False, False, True]


# --- properties ------------------------------------------------------------------

@given(ideals(max_r=3, max_gens=4))
def test_decomposition_reconstructs_ideal(I):
    comps = irreducible_decomposition(I)
    assert intersection_of(comps, I.ambient) == I
    # irredundant
    for c in comps:
        rest = [d for d in comps if d != c]
        if rest:
            assert intersection_of(rest, I.ambient) != I


@given(ideals(max_r=3, max_gens=4))
def test_two_decomposition_methods_agree(I):
    assert sorted(irreducible_decomposition(I)) == sorted(irreducible_decomposition_splitting(I))


@given(ideals(max_r=3, max_gens=4))
def test_associated_primes_pass_the_socle_test(I):
    ass = associated_primes(I)
    r = I.ambient
    for k in range(1, 1 << r):
        p = tuple(i + 1 for i in range(r) if k >> i & 1)
        assert (p in ass) == is_associated(I, p)


@given(squarefree_ideals(max_r=4, max_gens=4))
def test_squarefree_ideals_have_only_minimal_primes(I):
    ass = associated_primes(I)
    assert not any(set(p) < set(q) for p in ass for q in ass)
