"""Independence complexes and their reduced integral homology.

Topological connectedness of a complex is not computable in general; the
homological connectivity computed here (largest ``k`` with vanishing reduced
integral homology in all degrees ``<= k``) is an upper bound for it, so
every lower bound on ``conn`` is also a lower bound on ``hom_conn``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import BipartiteGraph, SimpleGraph, TripartiteHypergraph, line_graph
from .exact import max_matching_bipartite, nu_hypergraph

__all__ = [
    "SimplicialComplex",
    "HomologyReport",
    "independence_complex",
    "homology",
    "hom_connectivity_of_line",
    "elementary_divisors",
    "default_cap",
]


@dataclass(frozen=True)
class SimplicialComplex:
    """Faces of an independence complex up to dimension ``cap``.

    ``faces[d]`` lists the ``d``-faces as sorted vertex tuples.  ``complete``
    records whether the complex has no face above ``cap``.
    """

    n: int
    cap: int
    faces: tuple[tuple[tuple[int, ...], ...], ...]
    complete: bool

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.faces)

    @property
    def is_empty(self) -> bool:
        return self.n == 0


def independence_complex(G: SimpleGraph, cap: int) -> SimplicialComplex:
    """All independent sets of ``G`` with at most ``cap + 1`` vertices."""
    if cap < 0:
        raise ValueError("cap must be non-negative")
    nbr = G.neighbor_masks()
    faces: list[list[tuple[int, ...]]] = [[] for _ in range(cap + 1)]
    complete = True

    def grow(face: tuple[int, ...], allowed: int):
        nonlocal complete
        d = len(face) - 1
        if d >= 0:
            faces[d].append(face)
        while allowed:
            low = allowed & -allowed
            allowed ^= low
            v = low.bit_length() - 1
            if d + 1 > cap:
                complete = False
                return
            grow(face + (v,), allowed & ~nbr[v])

    grow((), (1 << G.n) - 1)
    return SimplicialComplex(G.n, cap, tuple(tuple(sorted(f)) for f in faces), complete)


# ---------------------------------------------------------------------------
# integer elimination
# ---------------------------------------------------------------------------


def _dense_snf_divisors(M: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a small dense integer matrix."""
    M = [row[:] for row in M]
    out = []
    nr = len(M)
    nc = len(M[0]) if M else 0
    t = 0
    while t < nr and t < nc:
        entries = [(abs(M[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if M[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        M[t], M[i] = M[i], M[t]
        for row in M:
            row[t], row[j] = row[j], row[t]
        while True:
            p = M[t][t]
            done = True
            for i in range(t + 1, nr):
                if M[i][t]:
                    q = M[i][t] // p
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
                    if M[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if M[t][j]:
                    q = M[t][j] // p
                    for row in M:
                        row[j] -= q * row[t]
                    if M[t][j]:
                        done = False
            if done:
                # enforce divisibility of the remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if M[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                M[t] = [a + b for a, b in zip(M[t], M[bad[0]])]
                continue
            entries = [(abs(M[i][t]), i, t) for i in range(t, nr) if M[i][t]]
            entries += [(abs(M[t][j]), t, j) for j in range(t, nc) if M[t][j]]
            _, i, j = min(entries)
            M[t], M[i] = M[i], M[t]
            for row in M:
                row[t], row[j] = row[j], row[t]
        out.append(abs(M[t][t]))
        t += 1
    return sorted(out)


def elementary_divisors(columns: list[dict[int, int]], nrows: int) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix given by columns.

    Unit pivots are eliminated sparsely first (each contributes a factor 1);
    whatever block remains is handed to a dense Smith normal form.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for c, col in enumerate(columns):
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[c] = v
                cols.setdefault(c, set()).add(r)
    ones = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols):
            rs = cols.get(c)
            if not rs:
                cols.pop(c, None)
                continue
            units = [r for r in rs if abs(rows[r][c]) == 1]
            if not units:
                continue
            r = min(units, key=lambda x: (len(rows[x]), x))
            prow = rows.pop(r)
            pv = prow[c]
            for c2 in prow:
                cols[c2].discard(r)
            for r2 in list(cols[c]):
                row2 = rows[r2]
                k = row2[c] * pv  # pv is ±1, so row2[c] / pv == row2[c] * pv
                for c2, v in prow.items():
                    nv = row2.get(c2, 0) - k * v
                    if nv:
                        if c2 not in row2:
                            cols[c2].add(r2)
                        row2[c2] = nv
                    elif c2 in row2:
                        del row2[c2]
                        cols[c2].discard(r2)
            del cols[c]
            ones += 1
            progress = True
    rest_cols = sorted(c for c, rs in cols.items() if rs)
    rest_rows = sorted(r for r, row in rows.items() if row)
    divisors = [1] * ones
    if rest_cols and rest_rows:
        cidx = {c: k for k, c in enumerate(rest_cols)}
        dense = [[0] * len(rest_cols) for _ in rest_rows]
        for i, r in enumerate(rest_rows):
            for c, v in rows[r].items():
                dense[i][cidx[c]] = v
        divisors += _dense_snf_divisors(dense)
    return sorted(divisors)


def _boundary_columns(K: SimplicialComplex, d: int) -> tuple[list[dict[int, int]], int]:
    """Columns of the augmented boundary map from d-faces to (d-1)-faces."""
    if d == 0:
        return [{0: 1} for _ in K.faces[0]], 1
    index = {f: i for i, f in enumerate(K.faces[d - 1])}
    cols = []
    for f in K.faces[d]:
        col = {}
        for k in range(len(f)):
            col[index[f[:k] + f[k + 1:]]] = -1 if k % 2 else 1
        cols.append(col)
    return cols, len(K.faces[d - 1])


@dataclass(frozen=True)
class HomologyReport:
    """Reduced Betti numbers, torsion and homological connectivity.

    ``betti[d]`` and ``torsion[d]`` describe reduced homology in degree ``d``
    for every degree that was computed.  When ``lower_bound`` is set all
    computed degrees vanish and ``hom_conn`` is only known to be at least the
    reported value.
    """

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    hom_conn: int
    lower_bound: bool
    cap: int
    f_vector: tuple[int, ...]
    euler_ok: bool | None = None

    def describe(self) -> str:
        return f">= {self.hom_conn}" if self.lower_bound else str(self.hom_conn)

    def at_least(self, bound: float) -> bool:
        """Is ``hom_conn >= bound`` established?"""
        return self.hom_conn >= bound


def homology(K: SimplicialComplex) -> HomologyReport:
    if K.is_empty:
        return HomologyReport((), (), -2, False, K.cap, K.f_vector, True)
    top = K.cap if K.complete else K.cap - 1
    dims = [len(f) for f in K.faces]
    # ranks[d] = rank of the augmented boundary out of degree d
    ranks, tors = [], []
    for d in range(0, min(top + 1, K.cap) + 1):
        if d < len(K.faces) and K.faces[d]:
            cols, nrows = _boundary_columns(K, d)
            divs = elementary_divisors(cols, nrows)
        else:
            divs = []
        ranks.append(len(divs))
        tors.append(tuple(x for x in divs if x > 1))
    betti, torsion = [], []
    for d in range(top + 1):
        r_out = ranks[d]
        r_in = ranks[d + 1] if d + 1 < len(ranks) else 0
        t_in = tors[d + 1] if d + 1 < len(tors) else ()
        betti.append(dims[d] - r_out - r_in)
        torsion.append(t_in)
    hom_conn, lower = top, True
    for d in range(top + 1):
        if betti[d] or torsion[d]:
            hom_conn, lower = d - 1, False
            break
    euler_ok = None
    if K.complete:
        reduced_chi = -1 + sum((-1) ** d * n for d, n in enumerate(dims))
        euler_ok = reduced_chi == sum((-1) ** d * b for d, b in enumerate(betti))
    return HomologyReport(tuple(betti), tuple(torsion), hom_conn, lower, K.cap, K.f_vector, euler_ok)


def default_cap(X: TripartiteHypergraph | BipartiteGraph) -> int:
    """``nu // 2 + 1`` for the hypergraph or bipartite graph ``X``."""
    if isinstance(X, BipartiteGraph):
        nu = max_matching_bipartite(X).size
    else:
        nu = nu_hypergraph(X).size
    return nu // 2 + 1


def hom_connectivity_of_line(
    X: TripartiteHypergraph | BipartiteGraph, cap: int | None = None
) -> HomologyReport:
    """Homological connectivity of the independence complex of ``L(X)``."""
    if cap is None:
        cap = default_cap(X)
    return homology(independence_complex(line_graph(X), cap))


def components_minus_one(G: SimpleGraph) -> int:
    """Number of connected components of the complement of ``G``, minus one.

    This is reduced ``betti_0`` of the independence complex, computed by
    traversal instead of linear algebra.
    """
    if G.n == 0:
        return -1
    nbr = G.neighbor_masks()
    seen = 0
    comps = 0
    for s in range(G.n):
        if (seen >> s) & 1:
            continue
        comps += 1
        stack = [s]
        seen |= 1 << s
        while stack:
            u = stack.pop()
            free = ~nbr[u] & ((1 << G.n) - 1) & ~seen & ~(1 << u)
            while free:
                low = free & -free
                free ^= low
                v = low.bit_length() - 1
                seen |= low
                stack.append(v)
    return comps - 1

