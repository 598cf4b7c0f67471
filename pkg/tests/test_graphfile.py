import pytest
from hypothesis import given

from skewrank import graphfile
from skewrank.graph import Graph, OrientedGraph
from skewrank.graphfile import GraphFileError

from .test_invariants import oriented_graphs


def test_parse_with_comments():
    og = graphfile.parse("# a path\n\n3\n0 1\n# middle\n2 1\n")
    assert og.n == 3 and og.arcs == {(0, 1), (2, 1)}


def test_empty_graph():
    assert graphfile.parse("3\n") == OrientedGraph.from_arcs(3, [])


@pytest.mark.parametrize(
    "text,message",
    [
        ("3\n1 1\n", "self-loop at line 2"),
        ("3\n0 1\n1 0\n", "duplicate pair 0 1 (first at line 2) at line 3"),
        ("3\n0 3\n", "out of range 0..2 at line 2"),
        ("3\n0\n", "expected two vertex ids at line 2"),
        ("x\n", "bad vertex count 'x' at line 1"),
        ("-1\n", "negative vertex count at line 1"),
        ("3\n0 a\n", "bad vertex id"),
        ("# nothing\n", "missing vertex count"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(GraphFileError, match=message.replace("(", r"\(").replace(")", r"\)")):
        graphfile.parse(text)


def test_serialize_is_canonical():
    og = OrientedGraph.from_arcs(4, [(3, 2), (0, 1), (2, 1)])
    assert graphfile.serialize(og) == "4\n0 1\n2 1\n3 2\n"
    assert graphfile.serialize(Graph.from_edges(3, [(2, 1)])) == "3\n1 2\n"


@given(oriented_graphs())
def test_round_trip(og):
    text = graphfile.serialize(og)
    assert graphfile.parse(text) == og
    assert graphfile.serialize(graphfile.parse(text)) == text


def test_read_write(tmp_path):
    og = OrientedGraph.from_arcs(3, [(2, 0)])
    p = tmp_path / "g.txt"
    graphfile.write(p, og)
    assert graphfile.read(p) == og
