"""Shared hypothesis strategies for monomial ideals."""

from hypothesis import strategies as st

from edgestab.monomial import make_ideal


def exponent(r, top=3):
    return st.tuples(*[st.integers(0, top)] * r)


@st.composite
def ideals(draw, min_r=1, max_r=3, max_gens=4, top=3, nonunit=True):
    r = draw(st.integers(min_r, max_r))
    gens = draw(st.lists(exponent(r, top), min_size=1, max_size=max_gens))
    if nonunit:
        gens = [g for g in gens if any(g)] or [tuple([1] + [0] * (r - 1))]
    return make_ideal(r, gens)


@st.composite
def squarefree_ideals(draw, min_r=2, max_r=5, max_gens=5):
    r = draw(st.integers(min_r, max_r))
    gens = draw(st.lists(st.tuples(*[st.integers(0, 1)] * r), min_size=1, max_size=max_gens))
    gens = [g for g in gens if any(g)] or [tuple([1] + [0] * (r - 1))]
    return make_ideal(r, gens)


@st.composite
def ideal_pairs(draw, max_r=3, max_gens=3, top=3):
    r = draw(st.integers(1, max_r))
    gs = st.lists(exponent(r, top), min_size=1, max_size=max_gens)
    a = [g for g in draw(gs) if any(g)] or [tuple([1] + [0] * (r - 1))]
    b = [g for g in draw(gs) if any(g)] or [tuple([0] * (r - 1) + [1])]
    return make_ideal(r, a), make_ideal(r, b)
