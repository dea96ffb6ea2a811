"""Structure of bipartite link graphs.

Covers equineighbored, decent and good vertex sets, CP-decompositions
(vertex-disjoint C4/P4 pieces covering every edge), the extension of a
2-element minimal equineighbored set to a truncated Fano plane, and the
verification of cromulent triples.

Goodness compares connectivities of independence complexes; it is decided
with the homological proxy from :mod:`ryser.topo`, so verdicts of
:func:`is_good` are proxy-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple

from .core import BipartiteGraph, TripartiteHypergraph, Vertex, delete_vertices, link_graph
from .exact import max_matching_bipartite, nu_hypergraph
from .homebase import FRPartition, is_truncated_multi_fano, iter_home_base_partitions
from .topo import hom_connectivity_of_line

__all__ = [
    "Piece",
    "CPDecomposition",
    "CromulentCandidate",
    "PreconditionError",
    "minimal_equineighbored_sets",
    "is_decent",
    "is_good",
    "good_sets",
    "verify_cp_decomposition",
    "find_cp_decomposition",
    "fano_from_equineighbored",
    "check_cromulent",
]

MAX_SIDE = 20


def _nu(G: BipartiteGraph) -> int:
    return max_matching_bipartite(G).size


def _side_adjacency(G: BipartiteGraph, side: str) -> dict[int, set[int]]:
    return {v: set(n) for v, n in G.adjacency(side).items()}


def minimal_equineighbored_sets(G: BipartiteGraph, side: str = "B") -> list[tuple[int, ...]]:
    """Inclusion-minimal nonempty ``X`` on ``side`` with ``|N(X)| = |X|``.

    Sets are returned as sorted position tuples ordered by size, then
    lexicographically.
    """
    adj = _side_adjacency(G, side)
    verts = sorted(adj)
    if len(verts) > MAX_SIDE:
        raise ValueError(f"side has {len(verts)} vertices; subset enumeration capped at {MAX_SIDE}")
    found: list[frozenset[int]] = []
    for size in range(1, len(verts) + 1):
        for X in combinations(verts, size):
            xs = frozenset(X)
            if any(f <= xs for f in found):
                continue
            if len(set().union(*(adj[x] for x in X))) == size:
                found.append(xs)
    return [tuple(sorted(f)) for f in found]


def _forced_nu(G: BipartiteGraph, a: int, b: int) -> int:
    """Size of a largest matching forced to contain the pair ``ab``."""
    rest = BipartiteGraph(G.sizes, tuple(e for e in G.edges if e[0] != a and e[1] != b))
    return 1 + _nu(rest)


def is_decent(G: BipartiteGraph, X: Iterable[int]) -> bool:
    """Decency of a B-side set ``X``.

    Checks ``|N(X)| <= |X|``, ``nu(G) = |N(X)| + |B \\ X|`` and that every
    edge leaving ``X`` lies in some maximum matching.
    """
    X = sorted(set(X))
    if not X:
        raise ValueError("X must be nonempty")
    adj = _side_adjacency(G, "B")
    N = set().union(*(adj[x] for x in X))
    if len(N) > len(X):
        return False
    nu = _nu(G)
    if nu != len(N) + G.sizes[1] - len(X):
        return False
    return all(_forced_nu(G, y, x) == nu for x in X for y in adj[x])


def _removal(G: BipartiteGraph, X: set[int], y: int) -> list[tuple[int, int]]:
    return sorted({(y, z) for (a, z) in G.edges if a == y and z not in X})


def is_good(G: BipartiteGraph, X: Iterable[int], cap: int | None = None) -> bool:
    """Goodness of a B-side set ``X`` (proxy-based verdict).

    ``X`` must be decent, and for every ``y ∈ N(X)`` deleting the edges from
    ``y`` to ``B \\ X`` must strictly raise the homological connectivity of the
    independence complex of the line graph.  A strict rise is only claimed
    when the baseline value is exact (not a cap-limited lower bound).
    """
    X = set(X)
    if not is_decent(G, X):
        return False
    adj = _side_adjacency(G, "B")
    N = sorted(set().union(*(adj[x] for x in X)))
    drops = {y: _removal(G, X, y) for y in N}
    if any(not d for d in drops.values()):
        return False
    if cap is None:
        cap = _nu(G) // 2 + 1
    base = hom_connectivity_of_line(G, cap)
    if base.lower_bound:
        return False
    for y in N:
        after = hom_connectivity_of_line(G.remove_edges(drops[y]), cap)
        if not after.hom_conn > base.hom_conn:
            return False
    return True


def good_sets(G: BipartiteGraph, side: str = "B", cap: int | None = None) -> Iterator[tuple[int, ...]]:
    """All good sets on ``side`` in canonical order (exhaustive)."""
    work = G if side == "B" else G.transpose()
    verts = list(range(1, work.sizes[1] + 1))
    if len(verts) > MAX_SIDE:
        raise ValueError(f"side has {len(verts)} vertices; subset enumeration capped at {MAX_SIDE}")
    for size in range(1, len(verts) + 1):
        for X in combinations(verts, size):
            if is_good(work, X, cap):
                yield X


# ---------------------------------------------------------------------------
# CP-decompositions
# ---------------------------------------------------------------------------


class Piece(NamedTuple):
    """A C4 ``(a1, b1, a2, b2)`` with ``a1 < a2``, ``b1 < b2``, or a P4 path
    ``a - b - c - d`` stored as ``(a, b, c, d)`` with ``a, c`` on side A and
    ``b, d`` on side B (its interior vertices are ``b`` and ``c``)."""

    kind: str
    verts: tuple[int, int, int, int]

    def a_side(self) -> set[int]:
        return {self.verts[0], self.verts[2]}

    def b_side(self) -> set[int]:
        return {self.verts[1], self.verts[3]}

    def pairs(self) -> set[tuple[int, int]]:
        v = self.verts
        if self.kind == "C":
            return {(v[0], v[1]), (v[0], v[3]), (v[2], v[1]), (v[2], v[3])}
        return {(v[0], v[1]), (v[2], v[1]), (v[2], v[3])}

    def interior(self) -> tuple[int, int]:
        """``(A-side interior, B-side interior)`` of a P4."""
        return (self.verts[2], self.verts[1])

    @classmethod
    def c4(cls, a1, b1, a2, b2) -> "Piece":
        a1, a2 = sorted((a1, a2))
        b1, b2 = sorted((b1, b2))
        return cls("C", (a1, b1, a2, b2))

    @classmethod
    def p4(cls, a, b, c, d) -> "Piece":
        return cls("P", (a, b, c, d))


@dataclass(frozen=True)
class CPDecomposition:
    pieces: tuple[Piece, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(sorted(Piece(*p) for p in self.pieces)))


def verify_cp_decomposition(G: BipartiteGraph, D: CPDecomposition) -> bool:
    """Pieces are disjoint subgraphs of ``G``, there are ``nu(G)/2`` of them,
    and every edge is a C4 edge or touches a P4 interior."""
    present = set(G.edges)
    used_a: set[int] = set()
    used_b: set[int] = set()
    for p in D.pieces:
        if p.kind not in ("C", "P"):
            return False
        a, b = p.a_side(), p.b_side()
        if len(a) != 2 or len(b) != 2 or a & used_a or b & used_b:
            return False
        if not all(1 <= x <= G.sizes[0] for x in a) or not all(1 <= x <= G.sizes[1] for x in b):
            return False
        if not p.pairs() <= present:
            return False
        used_a |= a
        used_b |= b
    nu = _nu(G)
    if nu % 2 or len(D.pieces) != nu // 2:
        return False
    return all(_covered(e, D.pieces) for e in present)


def _covered(e: tuple[int, int], pieces: Iterable[Piece]) -> bool:
    a, b = e
    for p in pieces:
        if p.kind == "C" and a in p.a_side() and b in p.b_side():
            return True
        if p.kind == "P" and (a == p.verts[2] or b == p.verts[1]):
            return True
    return False


def _candidate_pieces(G: BipartiteGraph) -> list[Piece]:
    present = set(G.edges)
    adj_a = _side_adjacency(G, "A")
    out = set()
    for a1, a2 in combinations(sorted(adj_a), 2):
        common = sorted(adj_a[a1] & adj_a[a2])
        for b1, b2 in combinations(common, 2):
            out.add(Piece.c4(a1, b1, a2, b2))
    for (c, b) in present:
        for a in adj_a:
            if a == c or (a, b) not in present:
                continue
            for d in adj_a[c]:
                if d != b:
                    out.add(Piece.p4(a, b, c, d))
    return sorted(out)


def find_cp_decomposition(G: BipartiteGraph) -> CPDecomposition | None:
    """First CP-decomposition in canonical search order, or ``None``.

    Each piece covers its own edges and nothing else can, so branching on
    the pieces able to cover the first uncovered edge is exhaustive.
    """
    nu = _nu(G)
    if nu % 2:
        return None
    target = nu // 2
    edges = sorted(set(G.edges))
    cands = _candidate_pieces(G)
    options = {e: [p for p in cands if _covered(e, [p])] for e in edges}

    def search(chosen: list[Piece], ua: set[int], ub: set[int]):
        first = next((e for e in edges if not _covered(e, chosen)), None)
        if first is None:
            return list(chosen) if len(chosen) == target else None
        if len(chosen) >= target:
            return None
        for p in options[first]:
            if p.a_side() & ua or p.b_side() & ub:
                continue
            chosen.append(p)
            got = search(chosen, ua | p.a_side(), ub | p.b_side())
            if got is not None:
                return got
            chosen.pop()
        return None

    found = search([], set(), set())
    return None if found is None else CPDecomposition(tuple(found))


# ---------------------------------------------------------------------------
# Fano extension and cromulent triples
# ---------------------------------------------------------------------------


class PreconditionError(ValueError):
    """One or more preconditions failed; ``failures`` lists them all."""

    def __init__(self, failures: list[str]):
        super().__init__("; ".join(failures))
        self.failures = failures


def _link_side(i: int, cls: int) -> str:
    j, k = (c for c in (1, 2, 3) if c != i)
    if cls == j:
        return "A"
    if cls == k:
        return "B"
    raise ValueError(f"class {cls} is not a side of the link over class {i}")


def _neighbors_in_link(H: TripartiteHypergraph, i: int, X: set[Vertex]) -> set[Vertex]:
    """Neighbourhood of ``X`` in ``link(H, V_i)``, as hypergraph vertices."""
    (cls,) = {v.cls for v in X}
    other = next(c for c in (1, 2, 3) if c not in (i, cls))
    xs = {v.pos for v in X}
    return {Vertex(other, e[other - 1]) for e in H.edges if e[cls - 1] in xs}


def fano_from_equineighbored(H: TripartiteHypergraph, i: int, X: Iterable[Vertex]) -> frozenset[Vertex]:
    """The truncated Fano plane spanned by the edges meeting ``X``.

    Raises:
        PreconditionError: listing every failed precondition.
    """
    X = {H.check_vertex(v) for v in X}
    failures = []
    classes = {v.cls for v in X}
    if len(classes) != 1 or i in classes:
        raise PreconditionError([f"X must lie in a single class other than {i}"])
    (cls,) = classes
    for c in (1, 2, 3):
        L = link_graph(H, c)
        if not (L.sizes[0] == L.sizes[1] == _nu(L)):
            failures.append(f"link over class {c} has no perfect matching")
    if len(X) != 2:
        failures.append(f"|X| = {len(X)}, expected 2")
    side = _link_side(i, cls)
    mins = minimal_equineighbored_sets(link_graph(H, i), side)
    if tuple(sorted(v.pos for v in X)) not in mins:
        failures.append("X is not a minimal equineighbored set of the link")
    meeting = [H.edge_vertices(k) for k in range(H.num_edges) if X & set(H.edge_vertices(k))]
    if any(not set(e) & set(f) for e, f in combinations(meeting, 2)):
        failures.append("two disjoint hyperedges meet X")
    if failures:
        raise PreconditionError(failures)
    span = frozenset(v for e in meeting for v in e)
    if len(span) != 6 or not is_truncated_multi_fano(H, span):
        raise PreconditionError(["edges meeting X do not span a truncated multi-Fano plane"])
    return span


VERDICTS = ("not-cromulent", "cromulent", "perfectly-cromulent")


@dataclass(frozen=True)
class CromulentCandidate:
    """Outcome of checking a triple ``(Y1, Y2, X)``.

    ``conditions`` maps ``"1"``..``"5"`` and ``"5*"`` to booleans (``None``
    when not evaluated because an earlier prerequisite failed).
    """

    Y1: frozenset[Vertex]
    Y2: frozenset[Vertex]
    X: frozenset[Vertex]
    verdict: str
    failed_condition: str | None
    conditions: dict = field(default_factory=dict, compare=False)
    partitions_checked: int = 0


def check_cromulent(
    H: TripartiteHypergraph,
    Y1: Iterable[Vertex],
    Y2: Iterable[Vertex],
    X: Iterable[Vertex],
    max_partitions: int = 8,
) -> CromulentCandidate:
    """Evaluate the cromulent-triple conditions for ``(Y1, Y2, X)``.

    Condition (5) is checked against every home-base partition of the
    remaining hypergraph that the search enumerates, up to ``max_partitions``.

    Raises:
        ValueError: if the sets are empty or not in three distinct classes.
    """
    Y1, Y2, X = (frozenset(H.check_vertex(v) for v in s) for s in (Y1, Y2, X))
    cls = []
    for s in (Y1, Y2, X):
        c = {v.cls for v in s}
        if len(c) != 1:
            raise ValueError("each of Y1, Y2, X must be nonempty and inside one class")
        cls.append(c.pop())
    if len(set(cls)) != 3:
        raise ValueError("Y1, Y2, X must lie in three distinct classes")
    i, j, _ = cls
    cond: dict[str, bool | None] = {k: None for k in ("1", "2", "3", "4", "5", "5*")}
    cond["1"] = len(Y1) == len(Y2) <= len(X)
    cond["2"] = _neighbors_in_link(H, i, set(X)) == set(Y2)
    inside = Y1 | Y2 | X
    sub, _ = delete_vertices(H, [v for v in H.vertices() if v not in inside])
    cond["3"] = nu_hypergraph(sub).size >= len(Y1)
    H0, imap = delete_vertices(H, inside)
    back = {new: old for old, new in imap.items()}
    nu0 = nu_hypergraph(H0).size
    parts: list[FRPartition] = []
    if nu0 == nu_hypergraph(H).size - len(Y1):
        for P in iter_home_base_partitions(H0, nu0):
            parts.append(P)
            if len(parts) >= max_partitions:
                break
    cond["4"] = bool(parts)
    N_j = _neighbors_in_link(H, j, set(X))
    cond["5*"] = N_j == set(Y1)
    if parts:
        ok5 = True
        for P in parts:
            allowed = set(Y1) | {back[v] for v in P.fano_vertices() | P.r_vertices()}
            if not N_j <= allowed:
                ok5 = False
                break
        cond["5"] = ok5
    order = ("1", "2", "3", "4", "5")
    failed = next((k for k in order if not cond[k]), None)
    if failed is None:
        verdict = "perfectly-cromulent" if cond["5*"] else "cromulent"
    elif failed == "5" and cond["5*"]:  # pragma: no cover - (5*) implies (5)
        verdict = "perfectly-cromulent"
    else:
        verdict = "not-cromulent"
    return CromulentCandidate(Y1, Y2, X, verdict, failed, cond, len(parts))
