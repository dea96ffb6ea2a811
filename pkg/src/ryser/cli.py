"""Command-line front end.

Every command prints human-readable lines followed by one machine line
``RESULT key=value ...``.  Exit status: 0 success / affirmative verdict,
1 negative verdict, 2 input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .core import TripartiteHypergraph, link_graph
from .exact import max_matching_bipartite, min_cover_bipartite, nu_hypergraph, tau_hypergraph
from .formats import Document, ParseError, parse, parse_vertex_list, serialize
from .gen import FIXTURES, fixture, from_blueprint, from_cp_decomposition, enumerate_small, random_home_base
from .homebase import (
    check_fr_partition,
    has_edge_home,
    is_matchable,
    is_proper,
    iter_home_base_partitions,
    recognize_home_base,
)
from .linkstruct import check_cromulent, find_cp_decomposition, verify_cp_decomposition
from .topo import default_cap, hom_connectivity_of_line

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str, kinds: tuple[str, ...]) -> Document:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        doc = parse(text)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None
    if doc.kind not in kinds:
        raise InputError(f"{path}: expected a {' or '.join(kinds)} document, got {doc.kind}")
    return doc


def _result(**kv) -> None:
    def fmt(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        return str(v)

    print("RESULT " + " ".join(f"{k}={fmt(v)}" for k, v in kv.items()))


def _edge_text(H: TripartiteHypergraph, idx: int) -> str:
    return "{" + " ".join(str(v) for v in H.edge_vertices(idx)) + "}"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
        print(f"wrote {out}")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_nu(args) -> int:
    doc = _read(args.file, ("thg", "bg"))
    if doc.kind == "bg":
        m = max_matching_bipartite(doc.payload)
        print(f"nu {m.size}")
        print("matching " + " ".join(f"{a}-{b}" for a, b in m.edges))
    else:
        H = doc.payload
        m = nu_hypergraph(H)
        print(f"nu {m.size}")
        print("matching " + " ".join(_edge_text(H, i) for i in m.edges))
    _result(nu=m.size)
    return OK


def cmd_tau(args) -> int:
    doc = _read(args.file, ("thg", "bg"))
    if doc.kind == "bg":
        c = min_cover_bipartite(doc.payload)
        print(f"tau {c.size}")
        print("cover " + " ".join(f"{s}{p}" for s, p in c.vertices))
    else:
        c = tau_hypergraph(doc.payload)
        print(f"tau {c.size}")
        print("cover " + " ".join(map(str, c.vertices)))
    _result(tau=c.size)
    return OK


def cmd_link(args) -> int:
    H = _read(args.file, ("thg",)).payload
    if args.cls not in (1, 2, 3):
        raise InputError(f"--class must be 1, 2 or 3, got {args.cls}")
    subset = None
    if args.subset:
        try:
            subset = [int(t) for t in args.subset.replace(",", " ").split()]
        except ValueError:
            raise InputError(f"--subset must list positions, got {args.subset!r}") from None
    try:
        G = link_graph(H, args.cls, subset)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.dot:
        j, k = (c for c in (1, 2, 3) if c != args.cls)
        lines = ["graph link {"] + [f'  "{j}:{a}" -- "{k}:{b}";' for a, b in G.edges] + ["}"]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(serialize(G), args.out)
    _result(edges=G.num_edges, nu=max_matching_bipartite(G).size)
    return OK


def _print_partition(P, prefix="  ") -> None:
    for b in P.F:
        print(prefix + "F " + " ".join(map(str, sorted(b))))
    for b in P.R:
        print(prefix + "R " + " ".join(map(str, sorted(b))))
    print((prefix + "W " + " ".join(map(str, sorted(P.W)))).rstrip())


def cmd_recognize(args) -> int:
    H = _read(args.file, ("thg",)).payload
    nu = nu_hypergraph(H).size
    P = recognize_home_base(H)
    if P is None:
        print("NOT-HOME-BASE")
        _result(verdict="NOT-HOME-BASE", nu=nu)
        return NEGATIVE
    print("HOME-BASE")
    _print_partition(P)
    if args.out:
        Path(args.out).write_text(serialize(P, H.sizes))
        print(f"wrote {args.out}")
    _result(verdict="HOME-BASE", nu=nu, F=len(P.F), R=len(P.R))
    return OK


def cmd_verify(args) -> int:
    H = _read(args.file, ("thg",)).payload
    pdoc = _read(args.partition, ("frp",))
    if tuple(pdoc.sizes) != H.sizes:
        raise InputError(f"partition sizes {pdoc.sizes} do not match hypergraph sizes {H.sizes}")
    P = pdoc.payload
    rep = check_fr_partition(H, P)
    print(f"FR-partition {rep.describe()}")
    matchable = edge_home = proper = False
    if rep.partition and rep.r_shape:
        m = is_matchable(H, P)
        matchable = m.ok
        if not m.ok:
            for i, v in m.witness.items():
                blocks = ", ".join("{" + " ".join(map(str, sorted(P.R[a - 1]))) + "}" for a in v.U)
                print(f"  B_{i} Hall violator: {blocks} (deficiency {v.deficiency})")
        h = has_edge_home(H, P)
        edge_home = h.ok
        if not h.ok:
            print(f"  edge without a home: {_edge_text(H, h.witness)}")
        proper = is_proper(H, P).ok
    print(f"matchable {'yes' if matchable else 'no'}")
    print(f"edge-home {'yes' if edge_home else 'no'}")
    print(f"proper {'yes' if proper else 'no'}")
    ok = rep.ok and matchable and edge_home
    print("HOME-BASE" if ok else "NOT-HOME-BASE")
    _result(home_base=ok, fr=rep.ok, matchable=matchable, edge_home=edge_home, proper=proper)
    return OK if ok else NEGATIVE


def cmd_cpdecomp(args) -> int:
    G = _read(args.file, ("bg",)).payload
    if args.check:
        ddoc = _read(args.check, ("cpd",))
        if tuple(ddoc.sizes) != G.sizes:
            raise InputError(f"decomposition sizes {ddoc.sizes} do not match graph sizes {G.sizes}")
        ok = verify_cp_decomposition(G, ddoc.payload)
        print("VALID" if ok else "INVALID")
        _result(valid=ok)
        return OK if ok else NEGATIVE
    D = find_cp_decomposition(G)
    if D is None:
        print("NO-CP-DECOMPOSITION")
        _result(found=False)
        return NEGATIVE
    _emit(serialize(D, G.sizes), args.out)
    _result(found=True, pieces=len(D.pieces))
    return OK


def cmd_conn(args) -> int:
    doc = _read(args.file, ("thg", "bg"))
    want = {"hypergraph": "thg", "bipartite": "bg"}.get(args.of)
    if want and want != doc.kind:
        raise InputError(f"--of {args.of} but {args.file} is a {doc.kind} document")
    X = doc.payload
    cap = args.max_dim
    if cap is None and os.environ.get("RYSER_MAX_DIM"):
        try:
            cap = int(os.environ["RYSER_MAX_DIM"])
        except ValueError:
            raise InputError("RYSER_MAX_DIM must be an integer") from None
    if cap is None:
        cap = default_cap(X)
    if cap < 0:
        raise InputError("dimension cap must be non-negative")
    rep = hom_connectivity_of_line(X, cap)
    print(f"f-vector {' '.join(map(str, rep.f_vector))}")
    for d, (b, t) in enumerate(zip(rep.betti, rep.torsion)):
        print(f"H~_{d}: rank {b}" + (f" torsion {','.join(map(str, t))}" if t else ""))
    print(f"hom_conn {rep.describe()}")
    _result(hom_conn=rep.hom_conn, lower_bound=rep.lower_bound, cap=cap)
    return OK


def cmd_cromulent(args) -> int:
    H = _read(args.file, ("thg",)).payload
    try:
        y1, y2, x = (parse_vertex_list(s, H.sizes) for s in (args.y1, args.y2, args.x))
        cand = check_cromulent(H, y1, y2, x, max_partitions=args.max_partitions)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    for k, v in cand.conditions.items():
        print(f"({k}) {'n/a' if v is None else ('pass' if v else 'FAIL')}")
    print(cand.verdict)
    _result(verdict=cand.verdict, failed=cand.failed_condition or "none")
    return NEGATIVE if cand.verdict == "not-cromulent" else OK


def cmd_gen(args) -> int:
    given = [args.name is not None, args.blueprint is not None, args.from_cp is not None]
    if sum(given) != 1:
        raise InputError("give exactly one of NAME, --blueprint or --from-cp")
    if args.blueprint:
        b = _read(args.blueprint, ("bp",)).payload
        try:
            H, P = from_blueprint(b)
        except (ValueError, RuntimeError) as exc:
            raise InputError(str(exc)) from None
    elif args.from_cp:
        G = _read(args.from_cp[0], ("bg",)).payload
        ddoc = _read(args.from_cp[1], ("cpd",))
        try:
            H, P = from_cp_decomposition(G, ddoc.payload)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    elif args.name.lower() == "random":
        try:
            H, P = random_home_base(args.seed, args.k)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    else:
        try:
            H, P = fixture(args.name)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    _emit(serialize(H), args.out)
    if args.partition_out and P is not None:
        Path(args.partition_out).write_text(serialize(P, H.sizes))
        print(f"wrote {args.partition_out}")
    _result(edges=H.num_edges, sizes=",".join(map(str, H.sizes)))
    return OK


def cmd_enumerate(args) -> int:
    try:
        sizes = tuple(int(t) for t in args.sizes.split(","))
        if len(sizes) != 3:
            raise ValueError
    except ValueError:
        raise InputError(f"--sizes needs three comma-separated integers, got {args.sizes!r}") from None
    try:
        stream = list(enumerate_small(*sizes, args.max_edges))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    extremal = recognized = mismatches = 0
    for k, H in enumerate(stream, 1):
        edges = " ".join(",".join(map(str, e)) for e in H.edges)
        if args.check:
            nu = nu_hypergraph(H).size
            tau = tau_hypergraph(H).size
            hb = next(iter_home_base_partitions(H, nu), None) is not None
            extremal += tau == 2 * nu
            recognized += hb
            mismatches += (tau == 2 * nu) != hb
            if not args.quiet:
                print(f"{k}: {edges or '-'}  nu={nu} tau={tau} home_base={'yes' if hb else 'no'}")
        elif not args.quiet:
            print(f"{k}: {edges or '-'}")
    if args.check:
        _result(count=len(stream), extremal=extremal, recognized=recognized, mismatches=mismatches)
        return OK if mismatches == 0 else NEGATIVE
    _result(count=len(stream))
    return OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ryser", description="Exact tools for Ryser-extremal 3-partite 3-graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("nu", help="matching number")
    s.add_argument("file")
    s.set_defaults(func=cmd_nu)

    s = sub.add_parser("tau", help="vertex cover number")
    s.add_argument("file")
    s.set_defaults(func=cmd_tau)

    s = sub.add_parser("link", help="link graph of (a subset of) one class")
    s.add_argument("file")
    s.add_argument("--class", dest="cls", type=int, required=True)
    s.add_argument("--subset", help="comma-separated positions in the class")
    s.add_argument("--dot", action="store_true", help="plain DOT edge list instead of bg")
    s.add_argument("--out")
    s.set_defaults(func=cmd_link)

    s = sub.add_parser("recognize", help="search for a home-base partition")
    s.add_argument("file")
    s.add_argument("--out", help="write the partition (frp) here")
    s.set_defaults(func=cmd_recognize)

    s = sub.add_parser("verify", help="check a partition certificate")
    s.add_argument("file")
    s.add_argument("--partition", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("cpdecomp", help="find or check a CP-decomposition")
    s.add_argument("file")
    s.add_argument("--check", metavar="DFILE")
    s.add_argument("--out")
    s.set_defaults(func=cmd_cpdecomp)

    s = sub.add_parser("conn", help="homological connectivity of the line graph's independence complex")
    s.add_argument("file")
    s.add_argument("--max-dim", type=int)
    s.add_argument("--of", choices=("hypergraph", "bipartite"))
    s.set_defaults(func=cmd_conn)

    s = sub.add_parser("cromulent", help="check a cromulent triple")
    s.add_argument("file")
    s.add_argument("--y1", required=True)
    s.add_argument("--y2", required=True)
    s.add_argument("--x", required=True)
    s.add_argument("--max-partitions", type=int, default=8)
    s.set_defaults(func=cmd_cromulent)

    s = sub.add_parser("gen", help="write a fixture or generated instance")
    s.add_argument("name", nargs="?", help=f"{'|'.join(FIXTURES)}|random")
    s.add_argument("--blueprint", metavar="BPFILE")
    s.add_argument("--from-cp", nargs=2, metavar=("GFILE", "DFILE"))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--k", type=int, default=2, help="matching number for 'random'")
    s.add_argument("--out")
    s.add_argument("--partition-out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("enumerate", help="list small instances up to isomorphism")
    s.add_argument("--sizes", required=True)
    s.add_argument("--max-edges", type=int, required=True)
    s.add_argument("--check", action="store_true", help="compare recognition with tau = 2 nu")
    s.add_argument("--quiet", action="store_true")
    s.set_defaults(func=cmd_enumerate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        _result(error="input")
        return INPUT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
