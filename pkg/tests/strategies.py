"""Hypothesis strategies for small instances."""

from hypothesis import strategies as st

from ryser.core import BipartiteGraph, TripartiteHypergraph


@st.composite
def hypergraphs(draw, max_class=3, max_edges=7, simple=False):
    sizes = tuple(draw(st.integers(1, max_class)) for _ in range(3))
    triple = st.tuples(*(st.integers(1, n) for n in sizes))
    edges = draw(st.lists(triple, max_size=max_edges, unique=simple))
    return TripartiteHypergraph(sizes, tuple(edges))


@st.composite
def bipartite_graphs(draw, max_side=5, max_edges=9):
    na, nb = draw(st.integers(0, max_side)), draw(st.integers(0, max_side))
    if na == 0 or nb == 0:
        return BipartiteGraph((na, nb), ())
    edge = st.tuples(st.integers(1, na), st.integers(1, nb))
    return BipartiteGraph((na, nb), tuple(draw(st.lists(edge, max_size=max_edges))))
