"""Brute-force oracles, written independently of the library algorithms.

Everything here enumerates subsets directly; it is only meant for the tiny
instances used in tests.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product
from math import gcd

import networkx as nx
import numpy as np


def hyperedges(H):
    """Edge occurrences as frozensets of (class, pos) pairs."""
    return [frozenset((c + 1, e[c]) for c in range(3)) for e in H.edges]


def brute_nu(H) -> int:
    es = hyperedges(H)
    for k in range(len(es), 0, -1):
        for sub in combinations(es, k):
            if sum(len(e) for e in sub) == len(frozenset().union(*sub)):
                return k
    return 0


def brute_tau(H) -> int:
    es = hyperedges(H)
    verts = sorted(frozenset().union(*es)) if es else []
    for k in range(len(verts) + 1):
        for sub in combinations(verts, k):
            s = set(sub)
            if all(e & s for e in es):
                return k
    raise AssertionError("unreachable")


def brute_min_covers(H) -> list[set]:
    """All minimum vertex covers, as sets of (class, pos)."""
    es = hyperedges(H)
    t = brute_tau(H)
    verts = sorted(frozenset().union(*es)) if es else []
    return [set(s) for s in combinations(verts, t) if all(e & set(s) for e in es)]


def brute_bip_nu(G) -> int:
    es = list(G.edges)
    for k in range(min(G.sizes) if es else 0, 0, -1):
        for sub in combinations(es, k):
            if len({a for a, _ in sub}) == k and len({b for _, b in sub}) == k:
                return k
    return 0


def brute_bip_cover(G) -> int:
    verts = [("A", a) for a in range(1, G.sizes[0] + 1)] + [("B", b) for b in range(1, G.sizes[1] + 1)]
    for k in range(len(verts) + 1):
        for sub in combinations(verts, k):
            s = set(sub)
            if all(("A", a) in s or ("B", b) in s for a, b in G.edges):
                return k
    raise AssertionError("unreachable")


def neighbors(G, X, side="B"):
    if side == "B":
        return {a for a, b in G.edges if b in X}
    return {b for a, b in G.edges if a in X}


def brute_min_equineighbored(G, side="B"):
    n = G.sizes[1] if side == "B" else G.sizes[0]
    eq = [set(X) for k in range(1, n + 1) for X in combinations(range(1, n + 1), k)
          if len(neighbors(G, set(X), side)) == k]
    return sorted((tuple(sorted(X)) for X in eq if not any(Y < X for Y in eq)), key=lambda t: (len(t), t))


def brute_maximal_essential(G) -> set[int]:
    """Union of N(U) over A-side sets U with |N(U)| = |U| (B-side positions)."""
    out = set()
    for k in range(1, G.sizes[0] + 1):
        for U in combinations(range(1, G.sizes[0] + 1), k):
            N = neighbors(G, set(U), "A")
            if len(N) == k:
                out |= N
    return out


# ---------------------------------------------------------------------------
# topology
# ---------------------------------------------------------------------------


def independent_sets(n, edges, max_size):
    adj = {frozenset(e) for e in edges}
    out = []
    for k in range(1, max_size + 1):
        level = [s for s in combinations(range(n), k) if not any(frozenset(p) in adj for p in combinations(s, 2))]
        if not level:
            break
        out.append(level)
    return out


def line_pairs(sets):
    return [(i, j) for i, j in combinations(range(len(sets)), 2) if sets[i] & sets[j]]


def rational_reduced_betti(n, edges, top):
    """Reduced Betti numbers over Q in degrees 0..top of the independence complex.

    Faces up to dimension ``top + 1`` are enumerated; ranks come from numpy.
    """
    faces = independent_sets(n, edges, top + 2)

    def boundary_rank(d):
        if d == 0:
            return 1 if faces and faces[0] else 0
        if d >= len(faces) or d - 1 >= len(faces):
            return 0
        idx = {f: i for i, f in enumerate(faces[d - 1])}
        M = np.zeros((len(faces[d - 1]), len(faces[d])))
        for j, f in enumerate(faces[d]):
            for k in range(len(f)):
                M[idx[f[:k] + f[k + 1:]], j] = (-1) ** k
        return int(np.linalg.matrix_rank(M))

    betti = []
    for d in range(top + 1):
        nd = len(faces[d]) if d < len(faces) else 0
        betti.append(nd - boundary_rank(d) - boundary_rank(d + 1))
    return betti


def complement_components(n, edges):
    g = nx.empty_graph(n)
    g.add_edges_from(edges)
    g = nx.complement(g)
    return nx.number_connected_components(g)


# ---------------------------------------------------------------------------
# integer matrices
# ---------------------------------------------------------------------------


def det(M):
    M = [[Fraction(x) for x in row] for row in M]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return int(d)


def invariant_factors(M):
    """Invariant factors via determinantal divisors (gcd of k x k minors)."""
    rows, cols = len(M), len(M[0]) if M else 0
    ds = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, det([[M[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        ds.append(g)
    return [ds[k] // ds[k - 1] for k in range(1, len(ds))]


# ---------------------------------------------------------------------------
# isomorphism classes
# ---------------------------------------------------------------------------


def canonical_edges(sizes, edges):
    """Least sorted edge tuple over class-preserving relabelings."""
    best = None
    for p in product(*(permutations(range(1, n + 1)) for n in sizes)):
        img = tuple(sorted(tuple(p[c][e[c] - 1] for c in range(3)) for e in edges))
        if best is None or img < best:
            best = img
    return best


def brute_isoclasses(sizes, max_edges):
    triples = list(product(*(range(1, n + 1) for n in sizes)))
    seen = set()
    for k in range(max_edges + 1):
        for sub in combinations(triples, k):
            seen.add(canonical_edges(sizes, sub))
    return seen
