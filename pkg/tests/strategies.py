"""Hypothesis strategies shared by the property tests."""
from hypothesis import strategies as st

from prelab.order import close_preorder
from prelab.prelation import close_prelation


@st.composite
def preorders(draw, min_size=1, max_size=4):
    n = draw(st.integers(min_size, max_size))
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    gens = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))) if pairs else []
    return close_preorder(n, gens)


@st.composite
def prelations(draw, dom=None, cod=None, max_size=4):
    P = dom if dom is not None else draw(preorders(max_size=max_size))
    Q = cod if cod is not None else draw(preorders(max_size=max_size))
    cells = [(x, y) for x in range(P.size) for y in range(Q.size)]
    gens = draw(st.lists(st.sampled_from(cells), max_size=len(cells)))
    return close_prelation(P, Q, gens)
