"""Data model for 3-partite 3-uniform multi-hypergraphs and bipartite multigraphs.

Vertices are addressed positionally: ``Vertex(cls, pos)`` with ``cls`` in
``{1, 2, 3}`` and ``pos`` 1-based within its class.  Edges are stored as
sorted tuples of position triples, so the tuple index of an edge is its
canonical *occurrence* index.  Parallel edges are repeated entries.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, NamedTuple, Sequence

__all__ = [
    "Vertex",
    "TripartiteHypergraph",
    "BipartiteGraph",
    "SimpleGraph",
    "link_graph",
    "delete_vertices",
    "line_graph",
    "induced",
]

Triple = tuple[int, int, int]


class Vertex(NamedTuple):
    """A vertex reference; ordering is lexicographic on (cls, pos)."""

    cls: int
    pos: int

    def __str__(self) -> str:
        return f"{self.cls}:{self.pos}"


@dataclass(frozen=True)
class TripartiteHypergraph:
    """A 3-partite 3-graph with edge multiplicities.

    Args:
        sizes: number of vertices in each of the three classes.
        edges: iterable of position triples ``(p1, p2, p3)``; repeats encode
            multiplicity.  They are sorted on construction.
        labels: optional display names keyed by ``Vertex``.
    """

    sizes: tuple[int, int, int]
    edges: tuple[Triple, ...] = ()
    labels: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if len(sizes) != 3 or any(s < 0 for s in sizes):
            raise ValueError(f"class sizes must be three non-negative integers, got {self.sizes!r}")
        edges = []
        for e in self.edges:
            e = tuple(int(p) for p in e)
            if len(e) != 3:
                raise ValueError(f"edge {e!r} must have one vertex per class")
            for c, p in enumerate(e):
                if not 1 <= p <= sizes[c]:
                    raise ValueError(f"edge {e!r}: position {p} out of range in class {c + 1}")
            edges.append(e)
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    # -- basic accessors ---------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertices(self, cls: int | None = None) -> list[Vertex]:
        classes = (1, 2, 3) if cls is None else (cls,)
        return [Vertex(c, p) for c in classes for p in range(1, self.sizes[c - 1] + 1)]

    def edge_vertices(self, index: int) -> tuple[Vertex, Vertex, Vertex]:
        e = self.edges[index]
        return (Vertex(1, e[0]), Vertex(2, e[1]), Vertex(3, e[2]))

    def edge_sets(self) -> list[frozenset[Vertex]]:
        return [frozenset(self.edge_vertices(i)) for i in range(len(self.edges))]

    def multiplicity(self, triple: Triple) -> int:
        return self.edges.count(tuple(triple))

    def underlying(self) -> list[Triple]:
        """Distinct edge triples in canonical order."""
        return sorted(set(self.edges))

    def degree(self, v: Vertex) -> int:
        return sum(1 for e in self.edges if e[v.cls - 1] == v.pos)

    def is_simple(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    def check_vertex(self, v: Vertex) -> Vertex:
        v = Vertex(*v)
        if v.cls not in (1, 2, 3):
            raise ValueError(f"invalid class index {v.cls}")
        if not 1 <= v.pos <= self.sizes[v.cls - 1]:
            raise ValueError(f"vertex {v} out of range (class {v.cls} has {self.sizes[v.cls - 1]} vertices)")
        return v

    def label(self, v: Vertex) -> str:
        return self.labels.get(v, str(v))

    def with_edges(self, extra: Iterable[Triple]) -> "TripartiteHypergraph":
        return TripartiteHypergraph(self.sizes, self.edges + tuple(extra), dict(self.labels))


@dataclass(frozen=True)
class BipartiteGraph:
    """A bipartite multigraph on sides ``A`` (positions ``1..na``) and ``B``.

    ``a_labels``/``b_labels`` optionally map positions (0-based tuple index)
    to the objects the positions stand for, e.g. hypergraph vertices of a
    link graph or R blocks of an auxiliary graph.
    """

    sizes: tuple[int, int]
    edges: tuple[tuple[int, int], ...] = ()
    a_labels: tuple[Hashable, ...] | None = field(default=None, compare=False, repr=False)
    b_labels: tuple[Hashable, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if len(sizes) != 2 or any(s < 0 for s in sizes):
            raise ValueError(f"side sizes must be two non-negative integers, got {self.sizes!r}")
        edges = []
        for e in self.edges:
            a, b = (int(x) for x in e)
            if not (1 <= a <= sizes[0] and 1 <= b <= sizes[1]):
                raise ValueError(f"edge {e!r} out of range for sides {sizes}")
            edges.append((a, b))
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def adjacency(self, side: str = "A") -> dict[int, list[int]]:
        """Sorted distinct neighbours of every vertex on ``side``."""
        if side == "A":
            adj = {a: set() for a in range(1, self.sizes[0] + 1)}
            for a, b in self.edges:
                adj[a].add(b)
        elif side == "B":
            adj = {b: set() for b in range(1, self.sizes[1] + 1)}
            for a, b in self.edges:
                adj[b].add(a)
        else:
            raise ValueError(f"side must be 'A' or 'B', got {side!r}")
        return {v: sorted(n) for v, n in adj.items()}

    def neighborhood(self, xs: Iterable[int], side: str = "A") -> set[int]:
        adj = self.adjacency(side)
        out: set[int] = set()
        for x in xs:
            out.update(adj[x])
        return out

    def transpose(self) -> "BipartiteGraph":
        return BipartiteGraph(
            (self.sizes[1], self.sizes[0]),
            tuple((b, a) for a, b in self.edges),
            self.b_labels,
            self.a_labels,
        )

    def remove_edges(self, drop: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        """Remove every occurrence of the given underlying pairs."""
        drop = set(drop)
        return BipartiteGraph(
            self.sizes, tuple(e for e in self.edges if e not in drop), self.a_labels, self.b_labels
        )

    def remove_vertex(self, v: int, side: str = "B") -> "BipartiteGraph":
        """Delete one vertex, re-indexing its side."""
        k = 0 if side == "A" else 1

        def shift(p):
            return p - 1 if p > v else p

        edges = []
        for e in self.edges:
            if e[k] == v:
                continue
            e = list(e)
            e[k] = shift(e[k])
            edges.append(tuple(e))
        sizes = list(self.sizes)
        sizes[k] -= 1
        labels = [self.a_labels, self.b_labels]
        if labels[k] is not None:
            labels[k] = tuple(x for i, x in enumerate(labels[k]) if i != v - 1)
        return BipartiteGraph(tuple(sizes), tuple(edges), labels[0], labels[1])

    def edge_multiset(self) -> Counter:
        return Counter(self.edges)


@dataclass(frozen=True)
class SimpleGraph:
    """Simple graph on vertices ``0..n-1``."""

    n: int
    adjacency: frozenset[frozenset[int]] = frozenset()

    def __post_init__(self):
        for pair in self.adjacency:
            if len(pair) != 2:
                raise ValueError("loops are not allowed")
            if not all(0 <= v < self.n for v in pair):
                raise ValueError(f"edge {sorted(pair)} out of range")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "SimpleGraph":
        return cls(n, frozenset(frozenset(p) for p in pairs))

    def neighbors(self, v: int) -> set[int]:
        return {u for pair in self.adjacency if v in pair for u in pair if u != v}

    def adjacent(self, u: int, v: int) -> bool:
        return frozenset((u, v)) in self.adjacency

    def neighbor_masks(self) -> list[int]:
        masks = [0] * self.n
        for pair in self.adjacency:
            u, v = tuple(pair)
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks


def _other_classes(i: int) -> tuple[int, int]:
    if i not in (1, 2, 3):
        raise ValueError(f"invalid class index {i}")
    j, k = (c for c in (1, 2, 3) if c != i)
    return j, k


def link_graph(H: TripartiteHypergraph, i: int, S: Iterable[int] | None = None) -> BipartiteGraph:
    """Link of ``S ⊆ V_i``: strip the class-``i`` coordinate from every edge whose
    class-``i`` vertex lies in ``S``.

    ``S`` is a collection of positions in class ``i`` (``None`` means all of
    ``V_i``).  The result has side A = ``V_j`` and side B = ``V_k`` with
    ``j < k``; positions are unchanged and multiplicities are kept.
    """
    j, k = _other_classes(i)
    if S is None:
        S = range(1, H.sizes[i - 1] + 1)
    S = set(int(s) for s in S)
    for s in S:
        if not 1 <= s <= H.sizes[i - 1]:
            raise ValueError(f"position {s} out of range in class {i}")
    edges = tuple((e[j - 1], e[k - 1]) for e in H.edges if e[i - 1] in S)
    return BipartiteGraph(
        (H.sizes[j - 1], H.sizes[k - 1]),
        edges,
        tuple(Vertex(j, p) for p in range(1, H.sizes[j - 1] + 1)),
        tuple(Vertex(k, p) for p in range(1, H.sizes[k - 1] + 1)),
    )


def delete_vertices(
    H: TripartiteHypergraph, D: Iterable[Vertex]
) -> tuple[TripartiteHypergraph, dict[Vertex, Vertex]]:
    """Delete ``D`` and every edge meeting it.

    Returns the re-indexed hypergraph and the map from surviving old vertices
    to their new references.
    """
    D = {H.check_vertex(v) for v in D}
    index_map: dict[Vertex, Vertex] = {}
    new_sizes = []
    for c in (1, 2, 3):
        nxt = 0
        for p in range(1, H.sizes[c - 1] + 1):
            if Vertex(c, p) in D:
                continue
            nxt += 1
            index_map[Vertex(c, p)] = Vertex(c, nxt)
        new_sizes.append(nxt)
    edges = []
    for idx in range(H.num_edges):
        vs = H.edge_vertices(idx)
        if any(v in D for v in vs):
            continue
        edges.append(tuple(index_map[v].pos for v in vs))
    labels = {index_map[v]: lab for v, lab in H.labels.items() if v in index_map}
    return TripartiteHypergraph(tuple(new_sizes), tuple(edges), labels), index_map


def induced(H: TripartiteHypergraph, U: Iterable[Vertex]) -> list[int]:
    """Occurrence indices of the edges lying entirely inside ``U``."""
    U = set(U)
    return [i for i in range(H.num_edges) if all(v in U for v in H.edge_vertices(i))]


def line_graph(H: TripartiteHypergraph | BipartiteGraph | Sequence[Iterable[Hashable]]) -> SimpleGraph:
    """Line graph on edge occurrences; two occurrences are adjacent when their
    underlying vertex sets meet (so parallel copies are adjacent)."""
    if isinstance(H, TripartiteHypergraph):
        sets = H.edge_sets()
    elif isinstance(H, BipartiteGraph):
        sets = [frozenset((("A", a), ("B", b))) for a, b in H.edges]
    else:
        sets = [frozenset(e) for e in H]
    pairs = [(u, v) for u, v in combinations(range(len(sets)), 2) if sets[u] & sets[v]]
    return SimpleGraph.from_pairs(len(sets), pairs)
