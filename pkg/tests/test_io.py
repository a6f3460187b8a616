import json
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))
from helpers import WORKED_SUBSET, random_case, worked_example  # noqa: E402

from metaproj import (  # noqa: E402
    DocumentSyntaxError,
    Metagraph,
    SemanticError,
    VersionError,
    export_dot,
    parse_metagraph,
    serialize_metagraph,
    serialize_projection,
    tpp,
)
from metaproj.io import parse_document  # noqa: E402


def _doc(**over):
    doc = {
        "format_version": 1,
        "generating_set": ["a", "b"],
        "edges": [{"id": "e1", "invertex": ["a"], "outvertex": ["b"]}],
    }
    doc.update(over)
    return json.dumps(doc)


def test_worked_example_round_trip():
    mg = worked_example()
    text = serialize_metagraph(mg)
    again = parse_metagraph(text)
    assert len(again.elements) == 8 and len(again.edges) == 5
    assert again == mg
    assert serialize_metagraph(again) == text
    assert text.endswith(b"}\n") and b"\r" not in text


def test_vertices_are_sorted_by_name():
    mg = Metagraph.build(["z", "a"], [(["z", "a"], ["a"])])
    doc = json.loads(serialize_metagraph(mg))
    assert doc["edges"][0]["invertex"] == ["a", "z"]
    assert doc["generating_set"] == ["z", "a"]


def test_canonicalizes_unsorted_input():
    text = _doc(generating_set=["b", "a"], edges=[{"outvertex": ["b"], "id": "k", "invertex": ["b", "a"]}])
    mg = parse_metagraph(text)
    assert json.loads(serialize_metagraph(mg))["edges"][0] == {"id": "k", "invertex": ["a", "b"], "outvertex": ["b"]}


def test_edgeless_graph():
    mg = parse_metagraph(_doc(edges=[]))
    assert mg.edges == ()


@pytest.mark.parametrize(
    "text, error",
    [
        ("{", DocumentSyntaxError),
        ("[]", DocumentSyntaxError),
        (_doc(format_version=2), VersionError),
        (_doc(format_version="1"), DocumentSyntaxError),
        (_doc(extra=1), DocumentSyntaxError),
        (_doc(edges=[{"id": "e1", "invertex": ["a"], "outvertex": ["x9"]}]), SemanticError),
        (_doc(edges=[{"id": "e1", "invertex": ["a"], "outvertex": ["b"], "colour": "red"}]), DocumentSyntaxError),
        (_doc(edges=[{"id": "e1", "invertex": ["a"]}]), DocumentSyntaxError),
        (_doc(generating_set=["a", "a"]), SemanticError),
        (
            _doc(
                edges=[
                    {"id": "e1", "invertex": ["a"], "outvertex": ["b"]},
                    {"id": "e1", "invertex": ["b"], "outvertex": ["a"]},
                ]
            ),
            SemanticError,
        ),
        (
            _doc(
                edges=[
                    {"id": "e1", "invertex": ["a"], "outvertex": ["b"]},
                    {"id": "e2", "invertex": ["a"], "outvertex": ["b"]},
                ]
            ),
            SemanticError,
        ),
        (b"\xff\xfe", DocumentSyntaxError),
    ],
)
def test_parse_errors(text, error):
    with pytest.raises(error):
        parse_metagraph(text)


def test_projection_document():
    mg = worked_example()
    result = tpp(mg, WORKED_SUBSET)
    doc = json.loads(serialize_projection(result, include_reverse_map=True))
    assert doc["kind"] == "TPP"
    assert len(doc["edges"]) == 3
    assert doc["edges"][2] == {"id": "p3", "invertex": ["x6", "x7"], "outvertex": ["x8"], "reverse_map": [["e5"]]}
    plain = serialize_projection(result)
    assert b"reverse_map" not in plain
    # projection documents parse back, extras included
    again, extras = parse_document(serialize_projection(result, include_reverse_map=True))
    assert again == result.projected
    assert extras["kind"] == "TPP" and extras["reverse_map"]["p3"] == [["e5"]]
    assert serialize_projection(result) == serialize_projection(result)


def test_empty_projection_document():
    result = tpp(worked_example(), ["x1", "x2"])
    assert json.loads(serialize_projection(result))["edges"] == []


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_round_trip_property(seed):
    mg, _ = random_case(seed)
    text = serialize_metagraph(mg)
    assert parse_metagraph(text) == mg
    assert serialize_metagraph(parse_metagraph(text)) == text


def test_dot_export_counts():
    mg = worked_example()
    dot = export_dot(mg)
    lines = dot.splitlines()
    assert sum(1 for line in lines if line.strip().startswith('"x') and "->" not in line) == 8
    assert sum("shape=box" in line for line in lines) == 5
    in_arcs = sum(1 for line in lines if '-> "edge:' in line)
    out_arcs = sum(1 for line in lines if line.strip().startswith('"edge:') and "->" in line)
    # sum of invertex sizes and sum of outvertex sizes
    assert (in_arcs, out_arcs) == (7, 6)
    assert dot == export_dot(mg)


def test_dot_highlight_and_edgeless():
    mg = worked_example()
    dot = export_dot(mg, highlight=["e1", 4])
    assert dot.count('color="red"') == 2 + 3 + 3
    bare = export_dot(Metagraph.build(["a", "b"], []))
    assert "->" not in bare and "shape=box" not in bare


def test_dot_quotes_names():
    mg = Metagraph.build(['say "hi"', "b\\c"], [(['say "hi"'], ["b\\c"])])
    dot = export_dot(mg)
    assert '"say \\"hi\\""' in dot and '"b\\\\c"' in dot
