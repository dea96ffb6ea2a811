import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ryser.core import BipartiteGraph, Vertex
from ryser.formats import Document, ParseError, parse, parse_vertex, parse_vertex_list, serialize
from ryser.gen import Blueprint, RSpec, fixture, random_cp_graph, random_home_base
from ryser.linkstruct import CPDecomposition, Piece

from strategies import bipartite_graphs, hypergraphs

FANO_TEXT = "thg 2 2 2\ne 1 1 1\ne 1 2 2\ne 2 1 2\ne 2 2 1\n"


def test_fano_document():
    doc = parse(FANO_TEXT)
    assert doc.kind == "thg" and doc.sizes == (2, 2, 2)
    assert doc.payload == fixture("FANO").hypergraph
    assert serialize(doc) == FANO_TEXT


def test_k22_document():
    doc = parse("bg 2 2\ne 1 1\ne 1 2\ne 2 1\ne 2 2\n")
    assert doc.payload == BipartiteGraph((2, 2), ((1, 1), (1, 2), (2, 1), (2, 2)))


def test_out_of_range_index_is_positional():
    with pytest.raises(ParseError) as exc:
        parse("thg 1 1 1\ne 1 1 2\n")
    assert str(exc.value) == "line 2: index 2 out of range in class 3"
    assert exc.value.line == 2


def test_comments_blank_lines_and_multiplicity():
    doc = parse("# a comment\nthg 1 1 1  # header\n\ne 1 1 1\ne 1 1 1 # again\n")
    assert doc.payload.edges == ((1, 1, 1), (1, 1, 1))


def test_serialization_sorts_edges():
    assert serialize(parse("thg 2 2 2\ne 2 2 1\ne 1 1 1\n")) == "thg 2 2 2\ne 1 1 1\ne 2 2 1\n"


def test_result_line_ends_document():
    doc = parse("thg 1 1 1\ne 1 1 1\nRESULT nu=1\ngarbage here\n")
    assert doc.payload.num_edges == 1


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "line 1: empty document"),
        ("xyz 1 1\n", "line 1: bad header"),
        ("thg 1 1\n", "line 1: bad header"),
        ("thg 1 1 -1\n", "line 1: bad header"),
        ("thg 1 1 1\ne 1 1\n", "line 2: wrong arity"),
        ("thg 1 1 1\nf 1 1 1\n", "line 2: unexpected line tag"),
        ("thg 1 1 1\ne 1 a 1\n", "line 2: expected integers"),
        ("bg 1 1\n\ne 2 1\n", "line 3: index 2 out of range in class 1"),
        ("frp 2 2 2\nR 1:1 1:2 3:1\n", "line 2: class violation"),
        ("frp 2 2 2\nF 1:1 1:2 2:1 2:2 3:1\n", "line 2: class violation"),
        ("frp 2 2 2\nW 4:1\n", "line 2: bad class"),
        ("frp 2 2 2\nW 1:3\n", "line 2: index 3 out of range"),
        ("cpd 2 2\nC 1 1 2\n", "line 2: wrong arity"),
        ("cpd 2 2\nP 1 1 1 2\n", "line 2: piece repeats"),
        ("cpd 2 2\nC 1 1 2 3\n", "line 2: index 3 out of range on side B"),
        ("bp 0 1\nx R1 R1 R1\n", "line 2: extra edge before any R line"),
        ("bp 0 1\nR 1 1 1\nx R1 Q R1\n", "line 3: extra edge needs"),
        ("bp 1 0\n", "line 1: header promises"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert str(exc.value).startswith(fragment)


def test_frp_round_trip():
    H, P = fixture("MIXED3")
    text = serialize(P, H.sizes)
    doc = parse(text)
    assert doc.kind == "frp" and doc.payload == P
    assert serialize(doc) == text
    empty = serialize(fixture("FANO").partition, (2, 2, 2))
    assert empty.endswith("W\n")


def test_cpd_text():
    doc = parse("cpd 4 4\nC 1 1 2 2\nP 3 3 4 4\n")
    assert doc.payload == CPDecomposition((Piece.c4(1, 1, 2, 2), Piece.p4(3, 3, 4, 4)))
    assert parse(serialize(doc)) == doc


def test_blueprint_text_round_trip():
    b = Blueprint(
        fano=((1, 2, 1, 1),),
        r_blocks=(RSpec(((1, 2), (1,), (1,)), (("R1", "F1.2", "R1"),)), RSpec(((2,), (2,), (2,)))),
        isolated_w=(1, 0, 0),
    )
    text = serialize(b)
    assert text == "bp 1 2\nF 1 2 1 1\nR 1,2 1 1\nx R1 F1.2 R1\nR 2 2 2\nI 1 0 0\n"
    assert parse(text).payload == b


def test_vertex_tokens():
    assert parse_vertex("2:3") == Vertex(2, 3)
    assert parse_vertex_list("1:1, 2:2 3:1") == [Vertex(1, 1), Vertex(2, 2), Vertex(3, 1)]
    for bad in ("1", "a:b", "0:1", "1:1:1"):
        with pytest.raises(ValueError):
            parse_vertex(bad)
    with pytest.raises(ValueError):
        parse_vertex("1:3", (2, 2, 2))


def test_serialize_requires_sizes_for_bare_payloads():
    with pytest.raises(ValueError):
        serialize(fixture("FANO").partition)
    with pytest.raises(ValueError):
        serialize(CPDecomposition(()))
    with pytest.raises(TypeError):
        serialize(42)


@given(hypergraphs())
def test_hypergraph_round_trip(H):
    text = serialize(H)
    assert parse(text).payload == H
    assert serialize(parse(text)) == text


@given(bipartite_graphs())
def test_bipartite_round_trip(G):
    assert parse(serialize(G)).payload == G


@given(st.integers(0, 10_000), st.integers(0, 3))
@settings(max_examples=30)
def test_partition_round_trip(seed, k):
    H, P = random_home_base(seed, k)
    assert parse(serialize(P, H.sizes)).payload == P


@given(st.integers(0, 10_000), st.integers(0, 2), st.integers(0, 2))
@settings(max_examples=30)
def test_decomposition_round_trip(seed, nc, np_):
    G, D = random_cp_graph(seed, nc, np_)
    doc = parse(serialize(D, G.sizes))
    assert doc == Document("cpd", G.sizes, D)
