"""Plain-text document formats.

Every document starts with a header naming its kind and sizes::

    thg n1 n2 n3        3-partite 3-graph; lines "e p1 p2 p3"
    bg na nb            bipartite graph;   lines "e a b"
    frp n1 n2 n3        FR-partition;      lines "F v..", "R v v v", "W v.."
    cpd na nb           CP-decomposition;  lines "C a1 b1 a2 b2", "P a b c d"
    bp nf nr            blueprint;         lines "F m m m m", "R ws ws ws",
                                           "x tok tok tok", "I n1 n2 n3"

Indices are 1-based, vertices in ``frp`` are ``class:index`` tokens, ``#``
starts a comment and repeated ``e`` lines encode multiplicity.  In ``cpd``
a P4 line lists its path ``a - b - c - d`` starting from the side-A end.
In ``bp`` an ``R`` line gives comma-separated W attachments per class and
``x`` lines add extra edges to the preceding ``R`` block.  A line starting
with ``RESULT`` ends the document, so command output can be read back.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .core import BipartiteGraph, TripartiteHypergraph, Vertex
from .gen import TOKEN, Blueprint, RSpec
from .homebase import FRPartition
from .linkstruct import CPDecomposition, Piece

__all__ = ["Document", "ParseError", "parse", "serialize", "parse_vertex", "parse_vertex_list", "KINDS"]

KINDS = {"thg": 3, "bg": 2, "frp": 3, "cpd": 2, "bp": 2}


class ParseError(ValueError):
    """Malformed document; the message starts with the offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Document:
    kind: str
    sizes: tuple[int, ...]
    payload: Any


def parse_vertex(tok: str, sizes=None) -> Vertex:
    """Parse a ``class:index`` token."""
    parts = tok.split(":")
    if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
        raise ValueError(f"bad vertex token {tok!r} (expected class:index)")
    c, p = int(parts[0]), int(parts[1])
    if c not in (1, 2, 3):
        raise ValueError(f"bad class {c} in {tok!r}")
    if sizes is not None and not 1 <= p <= sizes[c - 1]:
        raise ValueError(f"index {p} out of range in class {c}")
    return Vertex(c, p)


def parse_vertex_list(text: str, sizes=None) -> list[Vertex]:
    """Comma- or space-separated ``class:index`` tokens."""
    return [parse_vertex(t, sizes) for t in text.replace(",", " ").split()]


def _ints(toks: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in toks]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(toks)!r}") from None


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line.startswith("RESULT"):
            return
        if line:
            yield lineno, line.split()


def parse(text: str) -> Document:
    """Parse one document, strictly.

    Raises:
        ParseError: with the line number and the reason.
    """
    lines = list(_lines(text))
    if not lines:
        raise ParseError(1, "empty document (missing header)")
    lineno, head = lines[0]
    kind = head[0]
    if kind not in KINDS:
        raise ParseError(lineno, f"bad header: unknown kind {kind!r}")
    if len(head) != 1 + KINDS[kind]:
        raise ParseError(lineno, f"bad header: {kind} needs {KINDS[kind]} sizes")
    sizes = tuple(_ints(head[1:], lineno))
    if any(s < 0 for s in sizes):
        raise ParseError(lineno, "bad header: negative size")
    body = lines[1:]
    return Document(kind, sizes, _PARSERS[kind](sizes, body))


def _edges(sizes, body, arity):
    edges = []
    for lineno, toks in body:
        if toks[0] != "e":
            raise ParseError(lineno, f"unexpected line tag {toks[0]!r}")
        if len(toks) != 1 + arity:
            raise ParseError(lineno, f"wrong arity: edge needs {arity} indices")
        idx = _ints(toks[1:], lineno)
        for c, p in enumerate(idx):
            if not 1 <= p <= sizes[c]:
                raise ParseError(lineno, f"index {p} out of range in class {c + 1}")
        edges.append(tuple(idx))
    return edges


def _parse_thg(sizes, body):
    return TripartiteHypergraph(sizes, tuple(_edges(sizes, body, 3)))


def _parse_bg(sizes, body):
    return BipartiteGraph(sizes, tuple(_edges(sizes, body, 2)))


def _parse_frp(sizes, body):
    F, R, W = [], [], []
    for lineno, toks in body:
        tag = toks[0]
        try:
            vs = [parse_vertex(t, sizes) for t in toks[1:]]
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
        if tag == "F":
            if len(vs) != 6 or sorted(v.cls for v in vs) != [1, 1, 2, 2, 3, 3]:
                raise ParseError(lineno, "class violation: F block needs two vertices per class")
            F.append(vs)
        elif tag == "R":
            if sorted(v.cls for v in vs) != [1, 2, 3]:
                raise ParseError(lineno, "class violation: R block needs one vertex per class")
            R.append(vs)
        elif tag == "W":
            W.extend(vs)
        else:
            raise ParseError(lineno, f"unexpected line tag {tag!r}")
    return FRPartition(F, R, W)


def _parse_cpd(sizes, body):
    pieces = []
    for lineno, toks in body:
        if toks[0] not in ("C", "P"):
            raise ParseError(lineno, f"unexpected line tag {toks[0]!r}")
        if len(toks) != 5:
            raise ParseError(lineno, "wrong arity: a piece needs 4 vertices")
        a1, b1, a2, b2 = _ints(toks[1:], lineno)
        for p, side in ((a1, 0), (b1, 1), (a2, 0), (b2, 1)):
            if not 1 <= p <= sizes[side]:
                raise ParseError(lineno, f"index {p} out of range on side {'AB'[side]}")
        if a1 == a2 or b1 == b2:
            raise ParseError(lineno, "piece repeats a vertex")
        pieces.append(Piece.c4(a1, b1, a2, b2) if toks[0] == "C" else Piece.p4(a1, b1, a2, b2))
    return CPDecomposition(tuple(pieces))


def _parse_bp(sizes, body):
    nf, nr = sizes
    fano, specs, iso = [], [], (0, 0, 0)
    for lineno, toks in body:
        tag = toks[0]
        if tag == "F":
            if len(toks) != 5:
                raise ParseError(lineno, "wrong arity: F needs four multiplicities")
            fano.append(tuple(_ints(toks[1:], lineno)))
        elif tag == "R":
            if len(toks) != 4:
                raise ParseError(lineno, "wrong arity: R needs attachments for three classes")
            attach = tuple(tuple(_ints(t.split(","), lineno)) for t in toks[1:])
            specs.append([attach, []])
        elif tag == "x":
            if not specs:
                raise ParseError(lineno, "extra edge before any R line")
            if len(toks) != 4 or not all(TOKEN.match(t) for t in toks[1:]):
                raise ParseError(lineno, "extra edge needs three tokens F<k>.<s>, R<k> or W<k>")
            specs[-1][1].append(tuple(toks[1:]))
        elif tag == "I":
            if len(toks) != 4:
                raise ParseError(lineno, "wrong arity: I needs three counts")
            iso = tuple(_ints(toks[1:], lineno))
        else:
            raise ParseError(lineno, f"unexpected line tag {tag!r}")
    if len(fano) != nf or len(specs) != nr:
        raise ParseError(1, f"header promises {nf} F and {nr} R lines, found {len(fano)} and {len(specs)}")
    return Blueprint(tuple(fano), tuple(RSpec(a, tuple(x)) for a, x in specs), iso)


_PARSERS = {"thg": _parse_thg, "bg": _parse_bg, "frp": _parse_frp, "cpd": _parse_cpd, "bp": _parse_bp}


def _vs(block) -> str:
    return " ".join(str(v) for v in sorted(block))


def serialize(obj, sizes=None) -> str:
    """Canonical text of a document or of a payload object.

    ``sizes`` is required for a bare ``FRPartition`` or ``CPDecomposition``.
    """
    if isinstance(obj, Document):
        sizes, obj = obj.sizes, obj.payload
    if isinstance(obj, TripartiteHypergraph):
        lines = ["thg " + " ".join(map(str, obj.sizes))]
        lines += ["e " + " ".join(map(str, e)) for e in obj.edges]
    elif isinstance(obj, BipartiteGraph):
        lines = ["bg " + " ".join(map(str, obj.sizes))]
        lines += ["e " + " ".join(map(str, e)) for e in obj.edges]
    elif isinstance(obj, FRPartition):
        if sizes is None:
            raise ValueError("sizes are required to serialize a partition")
        lines = ["frp " + " ".join(map(str, sizes))]
        lines += ["F " + _vs(b) for b in obj.F]
        lines += ["R " + _vs(b) for b in obj.R]
        lines.append(("W " + _vs(obj.W)).rstrip())
    elif isinstance(obj, CPDecomposition):
        if sizes is None:
            raise ValueError("sizes are required to serialize a decomposition")
        lines = ["cpd " + " ".join(map(str, sizes))]
        lines += [f"{p.kind} " + " ".join(map(str, p.verts)) for p in obj.pieces]
    elif isinstance(obj, Blueprint):
        lines = [f"bp {len(obj.fano)} {len(obj.r_blocks)}"]
        lines += ["F " + " ".join(map(str, m)) for m in obj.fano]
        for spec in obj.r_blocks:
            lines.append("R " + " ".join(",".join(map(str, ws)) for ws in spec.attach))
            lines += ["x " + " ".join(t) for t in spec.extra]
        if any(obj.isolated_w):
            lines.append("I " + " ".join(map(str, obj.isolated_w)))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(lines) + "\n"
