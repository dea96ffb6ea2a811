"""Exact matching and vertex cover solvers.

Hypergraph instances are small (a few dozen edges), so both numbers are
found by exhaustive search with memoisation and bounds.  Witnesses are
canonical: the lexicographically least optimum, comparing sorted lists of
edge occurrence indices (matchings) or of vertices (covers).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import BipartiteGraph, TripartiteHypergraph, Vertex

__all__ = [
    "MatchingWitness",
    "CoverWitness",
    "HallViolator",
    "nu_hypergraph",
    "tau_hypergraph",
    "max_matching_bipartite",
    "min_cover_bipartite",
    "saturating_matching",
    "is_matching",
    "is_cover",
]


@dataclass(frozen=True)
class MatchingWitness:
    """A matching together with its size.

    For hypergraphs ``edges`` holds occurrence indices into ``H.edges``; for
    bipartite graphs it holds ``(a, b)`` position pairs.
    """

    size: int
    edges: tuple


@dataclass(frozen=True)
class CoverWitness:
    """A vertex cover.  Bipartite covers use ``("A", a)`` / ``("B", b)`` tokens."""

    size: int
    vertices: tuple


@dataclass(frozen=True)
class HallViolator:
    """A set ``U`` on ``side`` whose neighbourhood is smaller than ``U``."""

    side: str
    U: tuple[int, ...]
    neighborhood: tuple[int, ...]

    @property
    def deficiency(self) -> int:
        return len(self.U) - len(self.neighborhood)


# ---------------------------------------------------------------------------
# hypergraph matching number
# ---------------------------------------------------------------------------


class _MatchingSolver:
    """Memoised matching number over bitmasks of representative edges."""

    def __init__(self, H: TripartiteHypergraph):
        self.H = H
        # parallel copies never co-occur in a matching: branch on the first only
        reps = []
        for idx, e in enumerate(H.edges):
            if idx == 0 or H.edges[idx - 1] != e:
                reps.append(idx)
        self.reps = reps
        m = len(reps)
        incidence: dict[tuple[int, int], int] = {}
        for bit, idx in enumerate(reps):
            e = H.edges[idx]
            for c in range(3):
                incidence[(c, e[c])] = incidence.get((c, e[c]), 0) | (1 << bit)
        self.incidence = incidence
        self.conflict = [0] * m
        for bit, idx in enumerate(reps):
            e = H.edges[idx]
            mask = 0
            for c in range(3):
                mask |= incidence[(c, e[c])]
            self.conflict[bit] = mask
        self.cache: dict[int, int] = {0: 0}

    def _bound(self, mask: int) -> int:
        counts = [0, 0, 0]
        for (c, _), inc in self.incidence.items():
            if inc & mask:
                counts[c] += 1
        return min(counts)

    def nu(self, mask: int) -> int:
        hit = self.cache.get(mask)
        if hit is not None:
            return hit
        bound = self._bound(mask)
        # branch on the live vertex of least degree
        best_v, best_deg = None, None
        for key, inc in self.incidence.items():
            d = (inc & mask).bit_count()
            if d and (best_deg is None or d < best_deg):
                best_v, best_deg = key, d
        inc = self.incidence[best_v] & mask
        result = self.nu(mask & ~inc)
        sub = inc
        while sub and result < bound:
            low = sub & -sub
            sub ^= low
            e = low.bit_length() - 1
            result = max(result, 1 + self.nu(mask & ~self.conflict[e]))
        self.cache[mask] = result
        return result

    def canonical(self) -> tuple[int, ...]:
        full = (1 << len(self.reps)) - 1
        target = self.nu(full)
        avail, chosen = full, []
        for bit in range(len(self.reps)):
            if target == 0:
                break
            if not (avail >> bit) & 1:
                continue
            rest = avail & ~self.conflict[bit] & ~((1 << (bit + 1)) - 1)
            if self.nu(rest) == target - 1:
                chosen.append(self.reps[bit])
                avail, target = rest, target - 1
            else:
                avail &= ~(1 << bit)
        return tuple(chosen)


def nu_hypergraph(H: TripartiteHypergraph) -> MatchingWitness:
    """Maximum matching of ``H``; the witness is the lexicographically least one."""
    if H.num_edges == 0:
        return MatchingWitness(0, ())
    edges = _MatchingSolver(H).canonical()
    return MatchingWitness(len(edges), edges)


# ---------------------------------------------------------------------------
# hypergraph vertex cover number
# ---------------------------------------------------------------------------


def _greedy_disjoint(edges: list[tuple[int, ...]]) -> int:
    used: set[int] = set()
    count = 0
    for e in edges:
        if used.isdisjoint(e):
            used.update(e)
            count += 1
    return count


def _cover_exists(edges: list[tuple[int, ...]], k: int, min_id: int) -> bool:
    """Is there a set of at most ``k`` vertex ids, all ``>= min_id``, meeting every edge?"""
    if not edges:
        return True
    if k <= 0 or _greedy_disjoint(edges) > k:
        return False
    for v in edges[0]:
        if v < min_id:
            continue
        if _cover_exists([e for e in edges if v not in e], k - 1, min_id):
            return True
    return False


def tau_hypergraph(H: TripartiteHypergraph) -> CoverWitness:
    """Minimum vertex cover of ``H``; the witness is the lexicographically least one."""
    offsets = (0, H.sizes[0], H.sizes[0] + H.sizes[1])
    ids = [tuple(offsets[c] + e[c] - 1 for c in range(3)) for e in H.underlying()]
    if not ids:
        return CoverWitness(0, ())
    k = _greedy_disjoint(ids)
    while not _cover_exists(ids, k, 0):
        k += 1
    chosen: list[int] = []
    remaining = ids
    min_id = 0
    for _ in range(k):
        candidates = sorted({v for e in remaining for v in e if v >= min_id})
        for v in candidates:
            rest = [e for e in remaining if v not in e]
            if _cover_exists(rest, k - len(chosen) - 1, v + 1):
                chosen.append(v)
                remaining, min_id = rest, v + 1
                break
        else:  # pragma: no cover - unreachable when k is the optimum
            raise RuntimeError("canonical cover reconstruction failed")
        if not remaining:
            break

    def to_vertex(v: int) -> Vertex:
        c = 3 if v >= offsets[2] else (2 if v >= offsets[1] else 1)
        return Vertex(c, v - offsets[c - 1] + 1)

    return CoverWitness(len(chosen), tuple(to_vertex(v) for v in chosen))


def is_matching(H: TripartiteHypergraph, occurrences) -> bool:
    seen: set[Vertex] = set()
    for idx in occurrences:
        vs = H.edge_vertices(idx)
        if seen.intersection(vs):
            return False
        seen.update(vs)
    return len(set(occurrences)) == len(tuple(occurrences))


def is_cover(H: TripartiteHypergraph, vertices) -> bool:
    vs = set(vertices)
    return all(vs.intersection(H.edge_vertices(i)) for i in range(H.num_edges))


# ---------------------------------------------------------------------------
# bipartite graphs
# ---------------------------------------------------------------------------


def _kuhn(G: BipartiteGraph) -> tuple[dict[int, int], dict[int, int]]:
    """Augmenting-path matching; A vertices and neighbours tried in sorted order."""
    adj = G.adjacency("A")
    match_a: dict[int, int] = {}
    match_b: dict[int, int] = {}

    def augment(a: int, seen: set[int]) -> bool:
        for b in adj[a]:
            if b in seen:
                continue
            seen.add(b)
            if b not in match_b or augment(match_b[b], seen):
                match_a[a] = b
                match_b[b] = a
                return True
        return False

    for a in sorted(adj):
        augment(a, set())
    return match_a, match_b


def max_matching_bipartite(G: BipartiteGraph) -> MatchingWitness:
    match_a, _ = _kuhn(G)
    edges = tuple(sorted(match_a.items()))
    return MatchingWitness(len(edges), edges)


def _alternating_reach(G: BipartiteGraph, match_a, match_b, roots) -> tuple[set[int], set[int]]:
    adj = G.adjacency("A")
    za, zb = set(roots), set()
    stack = list(roots)
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if b in zb or match_a.get(a) == b:
                continue
            zb.add(b)
            a2 = match_b.get(b)
            if a2 is not None and a2 not in za:
                za.add(a2)
                stack.append(a2)
    return za, zb


def min_cover_bipartite(G: BipartiteGraph) -> CoverWitness:
    """König cover: ``(A \\ Z) ∪ (B ∩ Z)`` with ``Z`` the vertices reachable by
    alternating paths from unmatched A vertices."""
    match_a, match_b = _kuhn(G)
    free = [a for a in range(1, G.sizes[0] + 1) if a not in match_a]
    za, zb = _alternating_reach(G, match_a, match_b, free)
    cover = [("A", a) for a in range(1, G.sizes[0] + 1) if a not in za and a in match_a]
    cover += [("B", b) for b in sorted(zb)]
    return CoverWitness(len(cover), tuple(cover))


def saturating_matching(G: BipartiteGraph, side: str = "A") -> MatchingWitness | HallViolator:
    """A matching saturating ``side``, or a Hall violator on that side."""
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    work = G if side == "A" else G.transpose()
    match_a, match_b = _kuhn(work)
    free = [a for a in range(1, work.sizes[0] + 1) if a not in match_a]
    if not free:
        pairs = sorted(match_a.items()) if side == "A" else sorted((b, a) for a, b in match_a.items())
        return MatchingWitness(len(pairs), tuple(pairs))
    za, zb = _alternating_reach(work, match_a, match_b, [free[0]])
    return HallViolator(side, tuple(sorted(za)), tuple(sorted(zb)))
