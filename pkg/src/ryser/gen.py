"""Fixtures, generators and exhaustive enumeration of small instances.

* :func:`fixture` returns the named hand-made instances (with their
  partitions where one is meaningful).
* :class:`Blueprint` / :func:`from_blueprint` build home-base hypergraphs
  block by block; :func:`random_home_base` samples blueprints.
* :func:`from_cp_decomposition` turns a bipartite graph with a
  CP-decomposition into a home-base hypergraph having it as a link.
* :func:`enumerate_small` lists simple instances up to isomorphism.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterator, NamedTuple

import numpy as np

from .core import BipartiteGraph, TripartiteHypergraph, Vertex
from .homebase import FRPartition, check_fr_partition, verify_home_base
from .linkstruct import CPDecomposition, Piece, verify_cp_decomposition

__all__ = [
    "Fixture",
    "FIXTURES",
    "fixture",
    "RSpec",
    "Blueprint",
    "SizeParams",
    "from_blueprint",
    "from_cp_decomposition",
    "enumerate_small",
    "random_home_base",
    "random_fr_partition",
    "random_cp_graph",
    "random_hypergraph",
    "random_bipartite",
]


class Fixture(NamedTuple):
    hypergraph: TripartiteHypergraph
    partition: FRPartition | None


def _blocks(*rows):
    """One block per row index: the vertex at that position in every class."""
    return [frozenset(Vertex(c, p) for c in (1, 2, 3)) for p in rows]


def _fano():
    # a=1:1, x=1:2, b=2:1, y=2:2, c=3:1, z=3:2 ; edges abc, ayz, xbz, xyc
    H = TripartiteHypergraph((2, 2, 2), ((1, 1, 1), (1, 2, 2), (2, 1, 2), (2, 2, 1)))
    return Fixture(H, FRPartition([H.vertices()], [], []))


def _fano_minus():
    H = TripartiteHypergraph((2, 2, 2), ((1, 2, 2), (2, 1, 2), (2, 2, 1)))
    return Fixture(H, FRPartition([], _blocks(2), _blocks(1)[0]))


def _min_r():
    # r_i = i:1, w_i = i:2 ; edges w1r2r3, r1w2r3, r1r2w3
    H = TripartiteHypergraph((2, 2, 2), ((2, 1, 1), (1, 2, 1), (1, 1, 2)))
    return Fixture(H, FRPartition([], _blocks(1), _blocks(2)[0]))


def _unmatch():
    # two R blocks (positions 1 and 3) sharing the W vertices at position 2
    H = TripartiteHypergraph(
        (3, 3, 3), ((2, 1, 1), (1, 2, 1), (1, 1, 2), (2, 3, 3), (3, 2, 3), (3, 3, 2))
    )
    return Fixture(H, FRPartition([], _blocks(1, 3), _blocks(2)[0]))


def _s8():
    H = TripartiteHypergraph(
        (4, 4, 4),
        (
            (1, 2, 3), (2, 3, 1), (3, 1, 2),
            (2, 4, 3), (3, 2, 4), (4, 3, 2),
            (2, 2, 2), (3, 3, 3),
        ),
    )
    return Fixture(H, None)


def _empty():
    H = TripartiteHypergraph((0, 0, 0), ())
    return Fixture(H, FRPartition([], [], []))


def _mixed3():
    # rows 0..6 of the drawing become positions 1..7 in every class;
    # the Fano block sits on rows 5-6, R blocks on rows 1 and 3, W on rows 0, 2, 4
    rows = [
        (6, 6, 6), (6, 5, 5), (5, 6, 5), (5, 5, 6),
        (4, 3, 3), (3, 4, 3), (3, 3, 4),
        (2, 1, 1), (1, 2, 1), (1, 1, 2),
        (0, 1, 1), (1, 0, 1), (1, 1, 0),
        (2, 3, 3), (3, 3, 3), (3, 5, 3), (5, 3, 3),
    ]
    H = TripartiteHypergraph((7, 7, 7), tuple(tuple(r + 1 for r in e) for e in rows))
    F = frozenset(Vertex(c, p) for c in (1, 2, 3) for p in (6, 7))
    W = frozenset(Vertex(c, p) for c in (1, 2, 3) for p in (1, 3, 5))
    return Fixture(H, FRPartition([F], _blocks(2, 4), W))


FIXTURES = {
    "FANO": _fano,
    "FANO_MINUS": _fano_minus,
    "MIN_R": _min_r,
    "UNMATCH": _unmatch,
    "S8": _s8,
    "EMPTY": _empty,
    "MIXED3": _mixed3,
}


def fixture(name: str) -> Fixture:
    """A named instance.

    Raises:
        KeyError: for an unknown name.
    """
    try:
        return FIXTURES[name.upper()]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None


# ---------------------------------------------------------------------------
# blueprints
# ---------------------------------------------------------------------------

TOKEN = re.compile(r"^(?:F(\d+)\.([12])|R(\d+)|W(\d+))$")


@dataclass(frozen=True)
class RSpec:
    """One R block.

    Attributes:
        attach: for each class, 1-based indices into that class's W pool; each
            index ``w`` adds the edge made of ``w`` and the block's two
            vertices outside that class.
        extra: additional edges given as one token per class: ``R<k>`` (the
            vertex of R block ``k``), ``W<k>`` (W pool vertex ``k``) or
            ``F<k>.<s>`` (vertex ``s`` in {1, 2} of Fano block ``k``).
    """

    attach: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    extra: tuple[tuple[str, str, str], ...] = ()


@dataclass(frozen=True)
class Blueprint:
    """Block-by-block description of a home-base hypergraph.

    ``fano`` lists, per Fano block, the multiplicities of its four edges in
    the order ``abc, ayz, xbz, xyc``.  ``isolated_w`` adds W vertices with no
    attachments.
    """

    fano: tuple[tuple[int, int, int, int], ...] = ()
    r_blocks: tuple[RSpec, ...] = ()
    isolated_w: tuple[int, int, int] = (0, 0, 0)

    def w_pool(self) -> list[int]:
        pool = [0, 0, 0]
        for spec in self.r_blocks:
            for c in range(3):
                pool[c] = max([pool[c], *spec.attach[c]])
            for toks in spec.extra:
                for c, tok in enumerate(toks):
                    m = TOKEN.match(tok)
                    if m and m.group(4):
                        pool[c] = max(pool[c], int(m.group(4)))
        return [pool[c] + self.isolated_w[c] for c in range(3)]


def _check_blueprint(b: Blueprint) -> None:
    for k, mult in enumerate(b.fano, 1):
        if len(mult) != 4 or any(m < 1 for m in mult):
            raise ValueError(f"Fano block {k}: need four positive multiplicities, got {mult}")
    for k, spec in enumerate(b.r_blocks, 1):
        if len(spec.attach) != 3:
            raise ValueError(f"R block {k}: need attachments for three classes")
        for c, ws in enumerate(spec.attach, 1):
            if not ws:
                raise ValueError(f"R block {k}: no W attachment in class {c}")
            if any(w < 1 for w in ws):
                raise ValueError(f"R block {k}: W indices are 1-based")
        for toks in spec.extra:
            if len(toks) != 3:
                raise ValueError(f"R block {k}: extra edge {toks} needs one token per class")
            for tok in toks:
                m = TOKEN.match(tok)
                if not m:
                    raise ValueError(f"R block {k}: bad token {tok!r}")
                if m.group(1) and not 1 <= int(m.group(1)) <= len(b.fano):
                    raise ValueError(f"R block {k}: {tok} names a missing Fano block")
                if m.group(3) and not 1 <= int(m.group(3)) <= len(b.r_blocks):
                    raise ValueError(f"R block {k}: {tok} names a missing R block")
    if len(b.isolated_w) != 3 or any(n < 0 for n in b.isolated_w):
        raise ValueError("isolated_w needs three non-negative counts")


def from_blueprint(b: Blueprint) -> tuple[TripartiteHypergraph, FRPartition]:
    """Build the hypergraph and its home-base partition.

    Per class, positions are laid out as Fano vertices (two per block), then
    R vertices, then the W pool.

    Raises:
        ValueError: malformed blueprint.
        RuntimeError: the result fails home-base verification.
    """
    _check_blueprint(b)
    nf, nr = len(b.fano), len(b.r_blocks)
    pool = b.w_pool()
    sizes = tuple(2 * nf + nr + pool[c] for c in range(3))

    def fpos(k, s):  # k, s 1-based
        return 2 * (k - 1) + s

    def rpos(k):
        return 2 * nf + k

    def wpos(k):
        return 2 * nf + nr + k

    def resolve(tok: str) -> int:
        m = TOKEN.match(tok)
        if m.group(1):
            return fpos(int(m.group(1)), int(m.group(2)))
        if m.group(3):
            return rpos(int(m.group(3)))
        return wpos(int(m.group(4)))

    edges = []
    for k, mult in enumerate(b.fano, 1):
        a, x = fpos(k, 1), fpos(k, 2)
        for triple, m in zip(((a, a, a), (a, x, x), (x, a, x), (x, x, a)), mult):
            edges += [triple] * m
    for k, spec in enumerate(b.r_blocks, 1):
        r = rpos(k)
        for c in range(3):
            for w in spec.attach[c]:
                e = [r, r, r]
                e[c] = wpos(w)
                edges.append(tuple(e))
        edges += [tuple(resolve(t) for t in toks) for toks in spec.extra]
    H = TripartiteHypergraph(sizes, tuple(edges))
    F = [frozenset(Vertex(c, fpos(k, s)) for c in (1, 2, 3) for s in (1, 2)) for k in range(1, nf + 1)]
    R = [frozenset(Vertex(c, rpos(k)) for c in (1, 2, 3)) for k in range(1, nr + 1)]
    W = [Vertex(c, wpos(k)) for c in (1, 2, 3) for k in range(1, pool[c - 1] + 1)]
    P = FRPartition(F, R, W)
    if not verify_home_base(H, P):
        raise RuntimeError("blueprint produced an instance that is not home-base")
    return H, P


# ---------------------------------------------------------------------------
# CP-decompositions to hypergraphs
# ---------------------------------------------------------------------------


def from_cp_decomposition(G: BipartiteGraph, D: CPDecomposition) -> tuple[TripartiteHypergraph, FRPartition]:
    """Home-base hypergraph whose link over class 3 is ``G``.

    Side A of ``G`` becomes class 1, side B class 2; each piece gets two
    fresh class-3 vertices ``e, f`` (in piece order).  A C4 ``a b c d``
    yields the Fano block with edges ``abe, adf, cbf, cde``; a P4
    ``a - b - c - d`` yields the edges ``abe, cbf, cde`` and the R block
    ``{b, c, e}``.  Every other edge of ``G`` is either a parallel copy of a
    C4 edge (copied with the same class-3 vertex) or touches a P4 interior
    and receives that piece's ``e``.

    Raises:
        ValueError: if ``D`` is not a CP-decomposition of ``G``.
    """
    if not verify_cp_decomposition(G, D):
        raise ValueError("not a CP-decomposition of the given graph")
    third: dict[tuple[int, int], int] = {}  # C4 edge -> its class-3 vertex
    p4_owner_a: dict[int, int] = {}  # A-side interior -> e
    p4_owner_b: dict[int, int] = {}  # B-side interior -> e
    F, R = [], []
    for k, piece in enumerate(D.pieces):
        e, f = 2 * k + 1, 2 * k + 2
        a, b, c, d = piece.verts
        if piece.kind == "C":
            third.update({(a, b): e, (a, d): f, (c, b): f, (c, d): e})
            F.append(frozenset({Vertex(1, a), Vertex(1, c), Vertex(2, b), Vertex(2, d), Vertex(3, e), Vertex(3, f)}))
        else:
            p4_owner_a[c] = e
            p4_owner_b[b] = e
            R.append(frozenset({Vertex(1, c), Vertex(2, b), Vertex(3, e)}))
    # the middle P4 edge cb is the one edge sent to f (once); every other edge
    # through an interior goes to e, which keeps it at home in the R block
    to_f = {(p.verts[2], p.verts[1]): 2 * k + 2 for k, p in enumerate(D.pieces) if p.kind == "P"}
    edges = []
    for x, y in G.edges:
        if (x, y) in third:
            z = third[(x, y)]
        elif (x, y) in to_f:
            z = to_f.pop((x, y))
        elif x in p4_owner_a:
            z = p4_owner_a[x]
        else:
            z = p4_owner_b[y]
        edges.append((x, y, z))
    H = TripartiteHypergraph((G.sizes[0], G.sizes[1], 2 * len(D.pieces)), tuple(edges))
    used = set().union(*F, *R)
    W = [v for v in H.vertices() if v not in used]
    P = FRPartition(F, R, W)
    return H, P


# ---------------------------------------------------------------------------
# exhaustive enumeration
# ---------------------------------------------------------------------------


def _perm_table(sizes: tuple[int, int, int]) -> np.ndarray:
    """``table[g, t]`` = index of triple ``t`` after class-preserving permutation ``g``."""
    n1, n2, n3 = sizes
    triples = list(product(range(n1), range(n2), range(n3)))
    rows = []
    for p1 in permutations(range(n1)):
        for p2 in permutations(range(n2)):
            for p3 in permutations(range(n3)):
                rows.append([(p1[a] * n2 + p2[b]) * n3 + p3[c] for a, b, c in triples])
    return np.array(rows, dtype=np.int64)


def _canonical(masks: np.ndarray, table: np.ndarray, chunk: int = 4096) -> np.ndarray:
    """Least image of each edge bitmask under the permutation group."""
    m = table.shape[1]
    out = np.empty(len(masks), dtype=np.int64)
    bits_idx = np.arange(m, dtype=np.int64)
    for s in range(0, len(masks), chunk):
        block = masks[s:s + chunk]
        bits = (block[:, None] >> bits_idx) & 1  # (N, m)
        weights = np.left_shift(np.int64(1), table)  # (G, m): weight of bit t after g
        images = bits @ weights.T  # (N, G)
        out[s:s + chunk] = images.min(axis=1)
    return out


def enumerate_small(
    n1: int, n2: int, n3: int, max_edges: int, max_class: int = 3, max_edge_bound: int = 9
) -> Iterator[TripartiteHypergraph]:
    """All simple 3-partite 3-graphs with class sizes ``(n1, n2, n3)`` and at
    most ``max_edges`` edges, one per isomorphism class (class-preserving
    relabelings), ordered by edge count then canonical code.

    Raises:
        ValueError: if the bounds exceed ``max_class`` / ``max_edge_bound``.
    """
    sizes = (n1, n2, n3)
    if any(n < 0 for n in sizes) or max_edges < 0:
        raise ValueError("sizes and max_edges must be non-negative")
    if any(n > max_class for n in sizes):
        raise ValueError(f"class sizes above {max_class} are refused (enumeration would explode)")
    if max_edges > max_edge_bound:
        raise ValueError(f"max_edges above {max_edge_bound} is refused (enumeration would explode)")
    m = n1 * n2 * n3
    triples = list(product(range(1, n1 + 1), range(1, n2 + 1), range(1, n3 + 1)))

    def build(mask: int) -> TripartiteHypergraph:
        return TripartiteHypergraph(sizes, tuple(triples[t] for t in range(m) if (mask >> t) & 1))

    yield build(0)
    if m == 0:
        return
    table = _perm_table(sizes)
    level = np.array([0], dtype=np.int64)
    for _ in range(min(max_edges, m)):
        grown = (level[:, None] | (np.int64(1) << np.arange(m, dtype=np.int64))[None, :]).ravel()
        grown = grown[grown != np.repeat(level, m)]
        level = np.unique(_canonical(np.unique(grown), table))
        for mask in level:
            yield build(int(mask))


# ---------------------------------------------------------------------------
# random generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SizeParams:
    """Knobs for :func:`random_home_base`.

    Attributes:
        p_fano: probability that a block is a Fano block.
        max_mult: largest multiplicity of a Fano edge.
        extra_attach: maximum extra W attachments per R block.
        extra_edges: maximum extra R-edges per R block.
        isolated: maximum isolated W vertices per class.
        shuffle: relabel positions randomly within each class.
    """

    p_fano: float = 0.4
    max_mult: int = 2
    extra_attach: int = 2
    extra_edges: int = 2
    isolated: int = 1
    shuffle: bool = True


def _relabel(H: TripartiteHypergraph, P: FRPartition, rng: np.random.Generator):
    perms = [rng.permutation(n) + 1 for n in H.sizes]
    vmap = {v: Vertex(v.cls, int(perms[v.cls - 1][v.pos - 1])) for v in H.vertices()}
    edges = tuple(tuple(int(perms[c][e[c] - 1]) for c in range(3)) for e in H.edges)
    return TripartiteHypergraph(H.sizes, edges), P.remap(vmap)


def random_home_base(
    seed: int, k: int, size_params: SizeParams | None = None
) -> tuple[TripartiteHypergraph, FRPartition]:
    """A seeded random home-base hypergraph with matching number ``k``.

    Each R block first gets a private W vertex in every class (which keeps
    every ``B_i`` saturable), then random extra attachments to the shared W
    pool and random extra edges through two of its vertices.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    sp = size_params or SizeParams()
    rng = np.random.default_rng(seed)
    nf = int(rng.binomial(k, sp.p_fano))
    nr = k - nf
    fano = tuple(tuple(int(x) for x in rng.integers(1, sp.max_mult + 1, size=4)) for _ in range(nf))
    iso = tuple(int(x) for x in rng.integers(0, sp.isolated + 1, size=3))
    specs = []
    for r in range(1, nr + 1):
        attach = []
        for c in range(3):
            ws = {r}
            for _ in range(int(rng.integers(0, sp.extra_attach + 1))):
                ws.add(int(rng.integers(1, nr + 1)))
            attach.append(tuple(sorted(ws)))
        extra = []
        for _ in range(int(rng.integers(0, sp.extra_edges + 1))):
            c = int(rng.integers(0, 3))  # the class where the edge leaves the block
            toks = [f"R{r}"] * 3
            choices = [f"R{q}" for q in range(1, nr + 1) if q != r]
            choices += [f"F{q}.{s}" for q in range(1, nf + 1) for s in (1, 2)]
            choices += [f"W{q}" for q in range(1, nr + 1)]
            choices.append(f"R{r}")
            toks[c] = choices[int(rng.integers(0, len(choices)))]
            extra.append(tuple(toks))
        specs.append(RSpec(tuple(attach), tuple(extra)))
    H, P = from_blueprint(Blueprint(fano, tuple(specs), iso))
    if sp.shuffle and H.sizes != (0, 0, 0):
        H, P = _relabel(H, P, rng)
    return H, P


def random_fr_partition(
    seed: int, k: int, extra: int = 2, tries: int = 50, size_params: SizeParams | None = None
) -> tuple[TripartiteHypergraph, FRPartition]:
    """A matchable FR-partition that need not have the edge-home property.

    Starts from :func:`random_home_base` and adds up to ``extra`` random
    edges, mostly among non-Fano vertices, keeping a batch only if the
    partition is still an FR-partition (matchability survives adding edges).  Falls back to the home-base
    instance if no batch is accepted within ``tries`` attempts.
    """
    H, P = random_home_base(seed, k, size_params)
    rng = np.random.default_rng([seed, 7])
    if H.sizes == (0, 0, 0) or extra <= 0:
        return H, P
    # vertices outside Fano blocks are where homeless edges can keep nu fixed
    pool = [sorted(v.pos for v in H.vertices(c) if v not in P.fano_vertices()) for c in (1, 2, 3)]
    for _ in range(tries):
        n = int(rng.integers(1, extra + 1))
        new = []
        for _ in range(n):
            if all(pool) and rng.random() < 0.7:
                new.append(tuple(int(rng.choice(pool[c])) for c in range(3)))
            else:
                new.append(tuple(int(rng.integers(1, H.sizes[c] + 1)) for c in range(3)))
        H2 = H.with_edges(new)
        if check_fr_partition(H2, P).ok:
            return H2, P
    return H, P


def random_cp_graph(
    seed: int, n_c4: int, n_p4: int, extra: int = 3, free: tuple[int, int] = (1, 1)
) -> tuple[BipartiteGraph, CPDecomposition]:
    """A bipartite graph built from disjoint C4/P4 pieces plus admissible extras.

    Extras are parallel copies of C4 edges or edges through a P4 interior
    vertex (to any vertex of the other side).  Vertex positions are shuffled.
    """
    rng = np.random.default_rng(seed)
    npieces = n_c4 + n_p4
    na, nb = 2 * npieces + free[0], 2 * npieces + free[1]
    pa, pb = rng.permutation(na) + 1, rng.permutation(nb) + 1
    pieces, edges = [], []
    for k in range(npieces):
        a1, a2 = int(pa[2 * k]), int(pa[2 * k + 1])
        b1, b2 = int(pb[2 * k]), int(pb[2 * k + 1])
        if k < n_c4:
            p = Piece.c4(a1, b1, a2, b2)
        else:
            p = Piece.p4(a1, b1, a2, b2)
        pieces.append(p)
        edges += sorted(p.pairs())
    for _ in range(int(rng.integers(0, extra + 1))):
        p = pieces[int(rng.integers(0, npieces))] if npieces else None
        if p is None:
            break
        if p.kind == "C":
            pairs = sorted(p.pairs())
            edges.append(pairs[int(rng.integers(0, 4))])
        else:
            ia, ib = p.interior()
            if rng.integers(0, 2):
                edges.append((ia, int(rng.integers(1, nb + 1))))
            else:
                edges.append((int(rng.integers(1, na + 1)), ib))
    return BipartiteGraph((na, nb), tuple(edges)), CPDecomposition(tuple(pieces))


def random_hypergraph(seed: int, sizes=(3, 3, 3), n_edges: int = 6) -> TripartiteHypergraph:
    """Uniformly random edges (with repetition) on fixed class sizes."""
    rng = np.random.default_rng(seed)
    edges = [tuple(int(rng.integers(1, s + 1)) for s in sizes) for _ in range(n_edges)]
    return TripartiteHypergraph(tuple(sizes), tuple(edges))


def random_bipartite(seed: int, na: int, nb: int, n_edges: int) -> BipartiteGraph:
    """Random bipartite multigraph (edges drawn with repetition)."""
    rng = np.random.default_rng(seed)
    edges = [(int(rng.integers(1, na + 1)), int(rng.integers(1, nb + 1))) for _ in range(n_edges)]
    return BipartiteGraph((na, nb), tuple(edges))
