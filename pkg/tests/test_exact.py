from itertools import combinations

import pytest
from hypothesis import given, settings

from ryser.core import BipartiteGraph, TripartiteHypergraph, Vertex
from ryser.exact import (
    HallViolator,
    MatchingWitness,
    is_cover,
    is_matching,
    max_matching_bipartite,
    min_cover_bipartite,
    nu_hypergraph,
    saturating_matching,
    tau_hypergraph,
)
from ryser.gen import fixture

from oracles import brute_bip_cover, brute_bip_nu, brute_min_covers, brute_nu, brute_tau, hyperedges
from strategies import bipartite_graphs, hypergraphs


@pytest.mark.parametrize(
    "name, nu, tau",
    [("FANO", 1, 2), ("FANO_MINUS", 1, 2), ("MIN_R", 1, 2), ("S8", 3, 4), ("EMPTY", 0, 0), ("MIXED3", 3, 6)],
)
def test_fixture_values(name, nu, tau):
    H = fixture(name).hypergraph
    assert nu_hypergraph(H).size == nu
    assert tau_hypergraph(H).size == tau


def test_two_disjoint_edges():
    H = TripartiteHypergraph((2, 2, 2), ((1, 1, 1), (2, 2, 2)))
    m = nu_hypergraph(H)
    assert m.size == 2 and m.edges == (0, 1)


def test_parallel_copies_count_once():
    H = TripartiteHypergraph((1, 1, 1), ((1, 1, 1),) * 3)
    assert nu_hypergraph(H).size == 1
    assert tau_hypergraph(H).size == 1


@given(hypergraphs())
def test_nu_matches_brute_force(H):
    m = nu_hypergraph(H)
    assert m.size == brute_nu(H)
    assert is_matching(H, m.edges)


@given(hypergraphs())
def test_matching_witness_is_lexicographically_least(H):
    m = nu_hypergraph(H)
    sets = hyperedges(H)
    best = None
    for sub in combinations(range(H.num_edges), m.size):
        if sum(len(sets[i]) for i in sub) == len(frozenset().union(*(sets[i] for i in sub))):
            best = sub
            break
    assert m.edges == (best if best is not None else ())


@given(hypergraphs())
def test_tau_matches_brute_force(H):
    c = tau_hypergraph(H)
    assert c.size == brute_tau(H)
    assert is_cover(H, c.vertices)


@given(hypergraphs(max_class=2, max_edges=6))
def test_cover_witness_is_lexicographically_least(H):
    c = tau_hypergraph(H)
    covers = sorted(tuple(sorted(Vertex(*v) for v in s)) for s in brute_min_covers(H))
    assert c.vertices == (covers[0] if covers else ())


@given(hypergraphs())
def test_tau_at_most_two_nu(H):
    # the 3-partite case of Ryser's conjecture
    assert tau_hypergraph(H).size <= 2 * nu_hypergraph(H).size


def test_is_matching_rejects_repeats():
    H = fixture("MIN_R").hypergraph
    assert not is_matching(H, (0, 0))
    assert not is_matching(H, (0, 1))


# -- bipartite ---------------------------------------------------------------


def c4():
    return BipartiteGraph((2, 2), ((1, 1), (1, 2), (2, 1), (2, 2)))


def p4():
    # path p - q - r - s with p, r on side A and q, s on side B
    return BipartiteGraph((2, 2), ((1, 1), (2, 1), (2, 2)))


def test_c4_matching_and_cover():
    assert max_matching_bipartite(c4()).size == 2
    assert min_cover_bipartite(c4()).size == 2


def test_p4_minimum_cover():
    G = p4()
    c = min_cover_bipartite(G)
    assert c.size == 2
    covered = set(c.vertices)
    assert all(("A", a) in covered or ("B", b) in covered for a, b in G.edges)
    # the interior pair {q, r} is one of the minimum covers (not necessarily the one returned)
    brute = [
        set(s)
        for s in combinations([("A", 1), ("A", 2), ("B", 1), ("B", 2)], 2)
        if all(("A", a) in s or ("B", b) in s for a, b in G.edges)
    ]
    assert {("A", 2), ("B", 1)} in brute


@given(bipartite_graphs())
def test_koenig(G):
    m = max_matching_bipartite(G)
    c = min_cover_bipartite(G)
    assert m.size == c.size == brute_bip_nu(G) == brute_bip_cover(G)
    covered = set(c.vertices)
    assert all(("A", a) in covered or ("B", b) in covered for a, b in G.edges)
    assert len({a for a, _ in m.edges}) == len({b for _, b in m.edges}) == m.size
    assert set(m.edges) <= set(G.edges)


@given(bipartite_graphs())
@settings(max_examples=80)
def test_saturation_or_violator(G):
    for side in ("A", "B"):
        res = saturating_matching(G, side)
        n = G.sizes[0] if side == "A" else G.sizes[1]
        if isinstance(res, MatchingWitness):
            assert res.size == n
            assert set(res.edges) <= set(G.edges)
            assert brute_bip_nu(G) == n
        else:
            assert isinstance(res, HallViolator)
            adj = G.adjacency(side)
            N = set().union(*(set(adj[u]) for u in res.U))
            assert set(res.neighborhood) == N
            assert len(N) < len(res.U)
            assert res.deficiency >= 1


def test_unmatch_auxiliary_violator_size_two():
    # both R blocks see only the single W vertex of class 1
    G = BipartiteGraph((2, 1), ((1, 1), (2, 1)))
    res = saturating_matching(G, "A")
    assert isinstance(res, HallViolator) and res.U == (1, 2) and res.neighborhood == (1,)


def test_bad_side():
    with pytest.raises(ValueError):
        saturating_matching(c4(), "C")
