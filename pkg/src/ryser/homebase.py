"""FR-partitions and home-base hypergraphs.

A partition ``(F, R, W)`` splits the vertices into 6-vertex Fano blocks,
3-vertex blocks with one vertex per class, and the remainder ``W``.  This
module verifies the defining conditions, searches for home-base partitions,
computes essential/superfluous vertices of the auxiliary graphs ``B_i`` and
builds the heavy covers and the matchings that avoid a prescribed triple.

Essential vertices are found through Hall's theorem: ``w`` lies in the
maximal essential set of ``B`` exactly when ``B - w`` has no matching
saturating the R side.  (If ``w ∈ N(U)`` with ``|N(U)| = |U|`` then
``U`` loses a neighbour; conversely a violator ``U`` of ``B - w`` has
``|N_B(U)| = |U|`` and ``w ∈ N_B(U)``.)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .core import BipartiteGraph, TripartiteHypergraph, Vertex, induced
from .exact import (
    CoverWitness,
    HallViolator,
    MatchingWitness,
    is_cover,
    nu_hypergraph,
    saturating_matching,
)

__all__ = [
    "FRPartition",
    "FRReport",
    "Verdict",
    "EssentialReport",
    "MonsterConditionError",
    "is_truncated_multi_fano",
    "aux_bipartite",
    "check_fr_partition",
    "is_matchable",
    "has_edge_home",
    "is_proper",
    "verify_home_base",
    "recognize_home_base",
    "iter_home_base_partitions",
    "maximal_essential_set",
    "essential_vertices",
    "superfluous_vertices",
    "heavy_cover",
    "monster_matching",
]


def _block(vs: Iterable) -> frozenset[Vertex]:
    return frozenset(Vertex(*v) for v in vs)


def _key(block: Iterable[Vertex]) -> tuple:
    return tuple(sorted(block))


@dataclass(frozen=True)
class FRPartition:
    """Candidate ``(F, R, W)`` partition.  Blocks are kept in canonical order."""

    F: tuple[frozenset[Vertex], ...] = ()
    R: tuple[frozenset[Vertex], ...] = ()
    W: frozenset[Vertex] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "F", tuple(sorted((_block(b) for b in self.F), key=_key)))
        object.__setattr__(self, "R", tuple(sorted((_block(b) for b in self.R), key=_key)))
        object.__setattr__(self, "W", _block(self.W))

    @classmethod
    def trivial(cls, H: TripartiteHypergraph) -> "FRPartition":
        return cls((), (), H.vertices())

    @property
    def size(self) -> int:
        return len(self.F) + len(self.R)

    def fano_vertices(self) -> frozenset[Vertex]:
        return frozenset().union(*self.F)

    def r_vertices(self) -> frozenset[Vertex]:
        return frozenset().union(*self.R)

    def block_of(self, v: Vertex):
        for b in self.F + self.R:
            if v in b:
                return b
        return None

    def remap(self, index_map: dict[Vertex, Vertex]) -> "FRPartition":
        """Translate through a vertex map, dropping vertices absent from it."""

        def tr(b):
            return [index_map[v] for v in b if v in index_map]

        return FRPartition(
            [tr(b) for b in self.F], [tr(b) for b in self.R], tr(self.W)
        )


def r_vertex(R: frozenset[Vertex], cls: int) -> Vertex:
    """The vertex of an R block lying in class ``cls``."""
    for v in R:
        if v.cls == cls:
            return v
    raise ValueError(f"R block {sorted(R)} has no vertex in class {cls}")


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome carrying a witness (offending edge, violators, ...)."""

    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------------
# truncated Fano planes
# ---------------------------------------------------------------------------


def _two_per_class(F) -> bool:
    return len(F) == 6 and all(sum(1 for v in F if v.cls == c) == 2 for c in (1, 2, 3))


def _is_fano_triples(triples: list[tuple[Vertex, ...]]) -> bool:
    if len(triples) != 4:
        return False
    sets = [set(t) for t in triples]
    return all(len(a & b) == 1 for a, b in combinations(sets, 2))


def is_truncated_multi_fano(H: TripartiteHypergraph, F: Iterable[Vertex]) -> bool:
    """Do the edges induced on the 6-set ``F`` form a truncated multi-Fano plane?

    Raises:
        ValueError: if ``F`` does not have exactly two vertices in each class.
    """
    F = _block(F)
    if not _two_per_class(F):
        raise ValueError(f"{sorted(map(str, F))} does not have two vertices per class")
    triples = sorted({H.edge_vertices(i) for i in induced(H, F)})
    # four distinct triples on 2+2+2 vertices meeting pairwise in one vertex
    # are one of the two parity classes of the cube, i.e. a Fano plane
    return _is_fano_triples(triples)


def fano_candidates(H: TripartiteHypergraph) -> list[frozenset[Vertex]]:
    """All 6-sets inducing a truncated multi-Fano plane, in canonical order."""
    triples = set(H.underlying())
    found = set()
    for a, b, c in triples:
        for a2, y, z in triples:
            if a2 != a or y == b or z == c:
                continue
            for x in range(1, H.sizes[0] + 1):
                if x != a and (x, b, z) in triples and (x, y, c) in triples:
                    F = _block([(1, a), (1, x), (2, b), (2, y), (3, c), (3, z)])
                    found.add(F)
    return sorted((F for F in found if is_truncated_multi_fano(H, F)), key=_key)


def r_candidates(H: TripartiteHypergraph) -> list[frozenset[Vertex]]:
    """Triples that could serve as R blocks: each pair of them lies in an edge
    whose third vertex is outside the triple."""
    shadow: list[dict[tuple[int, int], set[int]]] = [{}, {}, {}]
    for e in H.underlying():
        for c in range(3):
            pair = tuple(e[k] for k in range(3) if k != c)
            shadow[c].setdefault(pair, set()).add(e[c])
    out = []
    for (r2, r3), thirds in shadow[0].items():
        for r1 in range(1, H.sizes[0] + 1):
            if not thirds - {r1}:
                continue
            if not shadow[1].get((r1, r3), set()) - {r2}:
                continue
            if not shadow[2].get((r1, r2), set()) - {r3}:
                continue
            out.append(_block([(1, r1), (2, r2), (3, r3)]))
    return sorted(out, key=_key)


# ---------------------------------------------------------------------------
# auxiliary graphs and the FR conditions
# ---------------------------------------------------------------------------


def _aux_adjacency(
    H: TripartiteHypergraph, R_blocks, W, i: int, usable: Iterable[int] | None = None
) -> dict[int, list[Vertex]]:
    """For each R index, the sorted W ∩ V_i vertices joined to it in ``B_i``."""
    W = set(W)
    idxs = range(H.num_edges) if usable is None else usable
    adj: dict[int, set[Vertex]] = {k: set() for k in range(len(R_blocks))}
    for idx in idxs:
        vs = H.edge_vertices(idx)
        w = vs[i - 1]
        if w not in W:
            continue
        rest = {v for v in vs if v.cls != i}
        for k, R in enumerate(R_blocks):
            if rest <= R:
                adj[k].add(w)
    return {k: sorted(v) for k, v in adj.items()}


def aux_bipartite(H: TripartiteHypergraph, P: FRPartition, i: int) -> BipartiteGraph:
    """The simple bipartite graph ``B_i`` between R blocks (side A) and ``W ∩ V_i``."""
    if i not in (1, 2, 3):
        raise ValueError(f"invalid class index {i}")
    rep = check_fr_partition(H, P, with_size=False)
    if not (rep.partition and rep.r_shape):
        raise ValueError(f"malformed partition: {rep.describe()}")
    w_side = sorted(v for v in P.W if v.cls == i)
    pos = {w: k + 1 for k, w in enumerate(w_side)}
    adj = _aux_adjacency(H, P.R, P.W, i)
    edges = [(k + 1, pos[w]) for k, ws in adj.items() for w in ws]
    return BipartiteGraph((len(P.R), len(w_side)), tuple(edges), tuple(P.R), tuple(w_side))


@dataclass(frozen=True)
class FRReport:
    """Per-condition outcome of the four FR-partition conditions."""

    partition: bool
    fano: bool
    r_shape: bool
    size: bool
    nu: int | None = None
    problems: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return self.partition and self.fano and self.r_shape and self.size

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        flags = " ".join(
            f"({k}){'pass' if v else 'FAIL'}"
            for k, v in enumerate((self.partition, self.fano, self.r_shape, self.size), 1)
        )
        return flags + ("" if not self.problems else " - " + "; ".join(self.problems))


def check_fr_partition(H: TripartiteHypergraph, P: FRPartition, with_size: bool = True) -> FRReport:
    """Evaluate the four FR-partition conditions; failures are reported, not raised."""
    problems = []
    blocks = list(P.F) + list(P.R) + [P.W]
    allv = set(H.vertices())
    seen: set[Vertex] = set()
    partition = True
    for b in blocks:
        if seen & b:
            partition = False
            problems.append(f"overlap at {sorted(map(str, seen & b))}")
        seen |= b
    if seen != allv:
        partition = False
        missing, extra = allv - seen, seen - allv
        if missing:
            problems.append(f"unassigned {sorted(map(str, missing))}")
        if extra:
            problems.append(f"unknown {sorted(map(str, extra))}")
    fano = True
    for F in P.F:
        if not _two_per_class(F) or not is_truncated_multi_fano(H, F):
            fano = False
            problems.append(f"F block {sorted(map(str, F))} is not a truncated multi-Fano plane")
    r_shape = all(len(R) == 3 and {v.cls for v in R} == {1, 2, 3} for R in P.R)
    if not r_shape:
        problems.append("an R block does not have one vertex per class")
    nu = None
    size = True
    if with_size:
        nu = nu_hypergraph(H).size
        size = P.size == nu
        if not size:
            problems.append(f"|F|+|R| = {P.size} but nu = {nu}")
    return FRReport(partition, fano, r_shape, size, nu, tuple(problems))


def is_matchable(H: TripartiteHypergraph, P: FRPartition) -> Verdict:
    """Each ``B_i`` saturates the R side.  The witness maps failing classes to
    their Hall violators (as R-block tuples)."""
    violators = {}
    for i in (1, 2, 3):
        B = aux_bipartite(H, P, i)
        res = saturating_matching(B, "A")
        if isinstance(res, HallViolator):
            violators[i] = res
    return Verdict(not violators, violators or None)


def _is_home(vs: tuple[Vertex, ...], P: FRPartition) -> bool:
    s = set(vs)
    return any(s <= F for F in P.F) or any(len(s & R) >= 2 for R in P.R)


def has_edge_home(H: TripartiteHypergraph, P: FRPartition) -> Verdict:
    """Every edge lies in an F block or holds two vertices of one R block.
    The witness is the first offending edge occurrence."""
    for idx in range(H.num_edges):
        if not _is_home(H.edge_vertices(idx), P):
            return Verdict(False, idx)
    return Verdict(True)


def is_proper(H: TripartiteHypergraph, P: FRPartition) -> Verdict:
    """No R block together with an all-W edge induces a truncated Fano plane.
    The witness is ``(R, edge occurrence)`` of the first violation."""
    for idx in range(H.num_edges):
        vs = H.edge_vertices(idx)
        if not all(v in P.W for v in vs):
            continue
        for R in P.R:
            if is_truncated_multi_fano(H, R | set(vs)):
                return Verdict(False, (R, idx))
    return Verdict(True)


def verify_home_base(H: TripartiteHypergraph, P: FRPartition) -> bool:
    rep = check_fr_partition(H, P)
    return rep.ok and bool(is_matchable(H, P)) and bool(has_edge_home(H, P))


# ---------------------------------------------------------------------------
# recognition
# ---------------------------------------------------------------------------


def _saturable(H, R_blocks, W) -> bool:
    for i in (1, 2, 3):
        adj = _aux_adjacency(H, R_blocks, W, i)
        w_side = sorted({w for ws in adj.values() for w in ws})
        pos = {w: k + 1 for k, w in enumerate(w_side)}
        B = BipartiteGraph(
            (len(R_blocks), len(w_side)), tuple((k + 1, pos[w]) for k, ws in adj.items() for w in ws)
        )
        if isinstance(saturating_matching(B, "A"), HallViolator):
            return False
    return True


def iter_home_base_partitions(
    H: TripartiteHypergraph, nu: int | None = None
) -> Iterator[FRPartition]:
    """Enumerate home-base partitions in canonical search order.

    Every edge has at most one home block, and every block of a home-base
    partition is the home of some edge, so branching on the home of the
    first unhomed edge is exhaustive.  Branches whose partial ``B_i`` already
    has a Hall violator are cut (shrinking ``W`` only removes edges of ``B_i``).
    """
    if nu is None:
        nu = nu_hypergraph(H).size
    triples = [tuple(Vertex(c + 1, e[c]) for c in range(3)) for e in H.underlying()]
    fanos = fano_candidates(H)
    rs = r_candidates(H)
    homes: list[list[tuple[str, frozenset[Vertex]]]] = []
    for t in triples:
        s = set(t)
        cands = [("F", F) for F in fanos if s <= F]
        cands += [("R", R) for R in rs if len(s & R) >= 2]
        homes.append(cands)
    allv = frozenset(H.vertices())

    def homed(t, Fs, Rs) -> bool:
        s = set(t)
        return any(s <= F for F in Fs) or any(len(s & R) >= 2 for R in Rs)

    def search(Fs, Rs, used) -> Iterator[FRPartition]:
        first = next((k for k, t in enumerate(triples) if not homed(t, Fs, Rs)), None)
        if first is None:
            if len(Fs) + len(Rs) == nu and _saturable(H, Rs, allv - used):
                yield FRPartition(Fs, Rs, allv - used)
            return
        if len(Fs) + len(Rs) >= nu:
            return
        for kind, block in homes[first]:
            if used & block:
                continue
            nF = Fs + [block] if kind == "F" else Fs
            nR = Rs + [block] if kind == "R" else Rs
            nused = used | block
            if kind == "R" and not _saturable(H, nR, allv - nused):
                continue
            yield from search(nF, nR, nused)

    yield from search([], [], frozenset())


def recognize_home_base(H: TripartiteHypergraph) -> FRPartition | None:
    """First home-base partition in canonical order, or ``None`` if there is none."""
    return next(iter_home_base_partitions(H), None)


# ---------------------------------------------------------------------------
# essential and superfluous vertices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EssentialReport:
    """Maximal essential set of a bipartite graph saturating its A side.

    Positions refer to the graph the report was computed for: ``maximal_essential``
    and ``superfluous`` are B-side positions, ``tight_family`` A-side positions.
    """

    maximal_essential: tuple[int, ...]
    tight_family: tuple[int, ...]
    superfluous: tuple[int, ...]


def _saturates(B: BipartiteGraph) -> bool:
    return not isinstance(saturating_matching(B, "A"), HallViolator)


def maximal_essential_set(B: BipartiteGraph) -> EssentialReport:
    """Unique maximal essential subset of the B side, with its tight family.

    Raises:
        ValueError: if ``B`` has no matching saturating its A side.
    """
    if not _saturates(B):
        raise ValueError("graph has no matching saturating the A side")
    C = tuple(w for w in range(1, B.sizes[1] + 1) if not _saturates(B.remove_vertex(w, "B")))
    adj = B.adjacency("A")
    cset = set(C)
    U = tuple(a for a in range(1, B.sizes[0] + 1) if set(adj[a]) <= cset)
    sup = tuple(w for w in range(1, B.sizes[1] + 1) if w not in cset)
    return EssentialReport(C, U, sup)


def essential_vertices(H: TripartiteHypergraph, P: FRPartition, i: int) -> dict[Vertex, frozenset[Vertex]]:
    """W ∩ V_i vertices that are the only ``B_i`` neighbour of some R block,
    mapped to that block."""
    adj = _aux_adjacency(H, P.R, P.W, i)
    return {ws[0]: P.R[k] for k, ws in adj.items() if len(ws) == 1}


def superfluous_vertices(H: TripartiteHypergraph, P: FRPartition, i: int) -> list[Vertex]:
    """W ∩ V_i vertices outside the maximal essential set of ``B_i``."""
    B = aux_bipartite(H, P, i)
    rep = maximal_essential_set(B)
    return [B.b_labels[w - 1] for w in rep.superfluous]


def heavy_cover(H: TripartiteHypergraph, P: FRPartition, i: int, j: int) -> CoverWitness:
    """The ``i``-heavy ``(i, j)``-cover of a home-base hypergraph.

    Raises:
        ValueError: if ``P`` is not a home-base partition or ``i == j``.
    """
    if i == j or i not in (1, 2, 3) or j not in (1, 2, 3):
        raise ValueError(f"need distinct class indices, got ({i}, {j})")
    if not verify_home_base(H, P):
        raise ValueError("partition is not a home-base partition")
    B = aux_bipartite(H, P, i)
    rep = maximal_essential_set(B)
    C = {B.b_labels[w - 1] for w in rep.maximal_essential}
    U = {B.a_labels[a - 1] for a in rep.tight_family}
    cover = set(C)
    cover |= {v for v in P.fano_vertices() | P.r_vertices() if v.cls == i}
    cover |= {r_vertex(R, j) for R in P.R if R not in U}
    verts = tuple(sorted(cover))
    return CoverWitness(len(verts), verts)


# ---------------------------------------------------------------------------
# matchings avoiding a triple
# ---------------------------------------------------------------------------


class MonsterConditionError(ValueError):
    """A precondition of ``monster_matching`` does not hold."""

    def __init__(self, condition: str, message: str):
        super().__init__(f"condition {condition}: {message}")
        self.condition = condition


def monster_matching(
    H: TripartiteHypergraph,
    P: FRPartition,
    T: Iterable[Vertex],
    S: Iterable[Vertex] = (),
) -> MatchingWitness:
    """A matching of size ``|F| + |R|`` avoiding ``T ∪ S``.

    ``T`` holds one vertex per class; ``S`` holds superfluous W-vertices, at
    most one per class.  The matching uses one F-edge per Fano block and one
    R-edge per R block.  The R-edges start from a saturating matching of one
    auxiliary graph and are patched, case by case, so that they avoid ``T``.

    Raises:
        MonsterConditionError: ``condition == "1"`` if some F block has all its
            edges meeting ``T``; ``"2"`` if some R block does; ``"S"`` if ``S``
            is not a set of superfluous vertices; ``"P"`` if ``P`` is not a
            matchable FR-partition; ``"T"`` if ``T`` is malformed.
    """
    T = sorted(H.check_vertex(v) for v in T)
    if [v.cls for v in T] != [1, 2, 3]:
        raise MonsterConditionError("T", "need exactly one vertex per class")
    S = sorted({H.check_vertex(v) for v in S})
    if len({v.cls for v in S}) != len(S):
        raise MonsterConditionError("S", "at most one vertex per class")
    if not check_fr_partition(H, P) or not is_matchable(H, P):
        raise MonsterConditionError("P", "partition is not a matchable FR-partition")
    for s in S:
        if s not in P.W or s not in superfluous_vertices(H, P, s.cls):
            raise MonsterConditionError("S", f"{s} is not superfluous")

    t = {v.cls: v for v in T}
    tset = set(T)
    gone = set(S) - tset
    usable = [idx for idx in range(H.num_edges) if not gone.intersection(H.edge_vertices(idx))]
    W = P.W - gone
    Rs = list(P.R)
    rvs = P.r_vertices()

    def vs(idx):
        return H.edge_vertices(idx)

    def avoids(idx, bad):
        return not set(vs(idx)) & bad

    f_edges = {F: [idx for idx in usable if set(vs(idx)) <= F] for F in P.F}
    r_edges = {R: [idx for idx in usable if len(set(vs(idx)) & R) >= 2] for R in Rs}
    for F, es in f_edges.items():
        if not any(avoids(idx, tset) for idx in es):
            raise MonsterConditionError("1", f"every edge of F block {sorted(map(str, F))} meets T")
    for R, es in r_edges.items():
        if not any(avoids(idx, tset) for idx in es):
            raise MonsterConditionError("2", f"every edge of R block {sorted(map(str, R))} meets T")

    def w_edges(R, c):
        """R-edges whose class-c vertex is in W."""
        return [idx for idx in r_edges[R] if vs(idx)[c - 1] in W and {v for v in vs(idx) if v.cls != c} <= R]

    def from_matching(c) -> dict:
        adj = _aux_adjacency(H, Rs, W, c, usable)
        w_side = sorted({w for ws in adj.values() for w in ws})
        pos = {w: k + 1 for k, w in enumerate(w_side)}
        B = BipartiteGraph((len(Rs), len(w_side)), tuple((k + 1, pos[w]) for k, ws in adj.items() for w in ws))
        res = saturating_matching(B, "A")
        if isinstance(res, HallViolator):  # pragma: no cover - matchability survives S by Obs. on superfluous vertices
            raise MonsterConditionError("P", f"B_{c} lost its saturating matching")
        out = {}
        for a, b in res.edges:
            R, w = Rs[a - 1], w_side[b - 1]
            out[R] = next(idx for idx in w_edges(R, c) if vs(idx)[c - 1] == w)
        return out

    def replace(R, c, bad):
        for idx in w_edges(R, c):
            if avoids(idx, bad):
                return idx
        raise RuntimeError(f"no replacement R-edge with a W-vertex in class {c}")  # pragma: no cover

    def essential_for(c) -> dict[Vertex, frozenset[Vertex]]:
        adj = _aux_adjacency(H, Rs, W, c, usable)
        return {ws[0]: Rs[k] for k, ws in adj.items() if len(ws) == 1}

    fano_choice = {F: next(idx for idx in es if avoids(idx, tset)) for F, es in f_edges.items()}
    ess = {c: essential_for(c) for c in (1, 2, 3)}
    ess_of = {c: ess[c].get(t[c]) for c in (1, 2, 3)}

    in_r = [c for c in (1, 2, 3) if t[c] in rvs]
    if in_r:
        # some vertex of T is an R-vertex: start from B_p, patch classes p+1, p+2
        p = in_r[0]
        chosen = from_matching(p)
        for c in (p % 3 + 1, (p + 1) % 3 + 1):
            for R in Rs:
                if t[c] in vs(chosen[R]):
                    chosen[R] = replace(R, c, tset)
        case = 1
    elif not any(ess_of.values()):
        chosen = from_matching(1)
        for R in Rs:
            if t[1] in vs(chosen[R]):
                chosen[R] = replace(R, 2, {t[2]})
        case = 2
    else:
        p = next(c for c in (1, 2, 3) if ess_of[c] is not None)
        R0 = ess_of[p]
        others = [c for c in (1, 2, 3) if c != p and ess_of[c] != R0]
        if others:
            q = others[0]
            chosen = from_matching(p)
            chosen[R0] = replace(R0, q, {t[q]})
            case = 3
        else:
            # all of T essential for R0: use an R0-edge avoiding T directly
            e = next(idx for idx in r_edges[R0] if avoids(idx, tset))
            ev = vs(e)
            p = next((c for c in (1, 2, 3) if ev[c - 1] not in R0), 1)
            chosen = from_matching(p)
            chosen[R0] = e
            for F in P.F:
                if set(vs(fano_choice[F])) & set(ev):
                    fano_choice[F] = next(idx for idx in f_edges[F] if avoids(idx, set(ev) | tset))
            case = 4

    edges = sorted(list(fano_choice.values()) + [chosen[R] for R in Rs])
    used: set[Vertex] = set()
    for idx in edges:
        if used & set(vs(idx)) or (set(vs(idx)) & (tset | set(S))):
            raise RuntimeError(f"case {case} produced an invalid matching")  # pragma: no cover
        used |= set(vs(idx))
    return MatchingWitness(len(edges), tuple(edges))
