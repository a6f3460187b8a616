"""Metagraph documents (JSON) and Graphviz export.

A document looks like::

    {
      "format_version": 1,
      "generating_set": ["x1", "x2", "x3"],
      "edges": [
        {"id": "e1", "invertex": ["x1"], "outvertex": ["x2", "x3"]}
      ]
    }

Vertex arrays are written sorted by element name; the generating set and the
edge list keep their order.  Projection documents add a top-level ``"kind"``
and, optionally, a per-edge ``"reverse_map"`` listing the original edge ids of
each metapath behind the edge.  Any other key is an error.
"""

from __future__ import annotations

import json
from typing import IO, Any

from .core import DuplicateEdge, DuplicateElement, ElementNotInGeneratingSet, Metagraph, MetagraphError

__all__ = [
    "FORMAT_VERSION",
    "DocumentError",
    "DocumentSyntaxError",
    "SemanticError",
    "VersionError",
    "parse_metagraph",
    "parse_document",
    "serialize_metagraph",
    "serialize_projection",
    "metagraph_to_dict",
    "export_dot",
]

FORMAT_VERSION = 1

_TOP_KEYS = {"format_version", "generating_set", "edges"}
_TOP_OPTIONAL = {"kind"}
_EDGE_KEYS = {"id", "invertex", "outvertex"}
_EDGE_OPTIONAL = {"reverse_map"}


class DocumentError(MetagraphError, ValueError):
    pass


class DocumentSyntaxError(DocumentError):
    """Malformed document: bad JSON, wrong types, missing or unknown keys."""


class SemanticError(DocumentError):
    """Well-formed document describing an invalid metagraph."""


class VersionError(DocumentError):
    pass


def _load(document: bytes | str | IO) -> Any:
    if hasattr(document, "read"):
        document = document.read()
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentSyntaxError(f"document is not UTF-8: {exc}") from None
    try:
        return json.loads(document)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"invalid JSON: {exc}") from None


def _check_keys(obj: dict, required: set, optional: set, where: str) -> None:
    missing = required - obj.keys()
    if missing:
        raise DocumentSyntaxError(f"{where}: missing key(s) {sorted(missing)}")
    unknown = obj.keys() - required - optional
    if unknown:
        raise DocumentSyntaxError(f"{where}: unknown key(s) {sorted(unknown)}")


def _names(value: Any, where: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise DocumentSyntaxError(f"{where} must be an array of strings")
    if len(set(value)) != len(value):
        raise SemanticError(f"{where} contains duplicates")
    return value


def parse_document(document: bytes | str | IO) -> tuple[Metagraph, dict]:
    """Parse a document; also return the optional extras (kind, reverse maps)."""
    doc = _load(document)
    if not isinstance(doc, dict):
        raise DocumentSyntaxError("top level must be an object")
    _check_keys(doc, _TOP_KEYS, _TOP_OPTIONAL, "document")
    version = doc["format_version"]
    if not isinstance(version, int) or isinstance(version, bool):
        raise DocumentSyntaxError("format_version must be an integer")
    if version != FORMAT_VERSION:
        raise VersionError(f"unsupported format_version {version} (expected {FORMAT_VERSION})")
    elements = _names(doc["generating_set"], "generating_set")
    if not isinstance(doc["edges"], list):
        raise DocumentSyntaxError("edges must be an array")

    pairs, labels, reverse = [], [], {}
    for k, edge in enumerate(doc["edges"]):
        where = f"edges[{k}]"
        if not isinstance(edge, dict):
            raise DocumentSyntaxError(f"{where} must be an object")
        _check_keys(edge, _EDGE_KEYS, _EDGE_OPTIONAL, where)
        if not isinstance(edge["id"], str):
            raise DocumentSyntaxError(f"{where}.id must be a string")
        labels.append(edge["id"])
        pairs.append((_names(edge["invertex"], f"{where}.invertex"), _names(edge["outvertex"], f"{where}.outvertex")))
        if "reverse_map" in edge:
            rm = edge["reverse_map"]
            if not isinstance(rm, list) or not all(
                isinstance(p, list) and all(isinstance(i, str) for i in p) for p in rm
            ):
                raise DocumentSyntaxError(f"{where}.reverse_map must be an array of string arrays")
            reverse[edge["id"]] = rm

    kind = doc.get("kind")
    if kind is not None and not isinstance(kind, str):
        raise DocumentSyntaxError("kind must be a string")
    try:
        mg = Metagraph.build(elements, pairs, labels)
    except (ElementNotInGeneratingSet, DuplicateEdge, DuplicateElement) as exc:
        raise SemanticError(str(exc)) from None
    return mg, {"kind": kind, "reverse_map": reverse}


def parse_metagraph(document: bytes | str | IO) -> Metagraph:
    return parse_document(document)[0]


def _sorted_names(mg: Metagraph, mask: int) -> list[str]:
    return sorted(mg.names(mask))


def metagraph_to_dict(mg: Metagraph) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "generating_set": list(mg.elements),
        "edges": [
            {
                "id": mg.edge_labels[e.id],
                "invertex": _sorted_names(mg, e.invertex),
                "outvertex": _sorted_names(mg, e.outvertex),
            }
            for e in mg.edges
        ],
    }


def _dump(doc: dict) -> bytes:
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def serialize_metagraph(mg: Metagraph) -> bytes:
    """Canonical UTF-8 bytes for ``mg`` (two-space indent, LF, trailing newline)."""
    return _dump(metagraph_to_dict(mg))


def serialize_projection(result, include_reverse_map: bool = False) -> bytes:
    """Canonical document for a projection result.

    With ``include_reverse_map`` each edge lists its metapaths as arrays of
    original edge ids.
    """
    doc = metagraph_to_dict(result.projected)
    doc["kind"] = result.kind
    if include_reverse_map:
        original = result.original
        for k, edge in enumerate(doc["edges"]):
            paths = result.reverse_map.get(k, [])
            if original is None:
                edge["reverse_map"] = [[str(i) for i in p.edge_ids] for p in paths]
            else:
                edge["reverse_map"] = [list(original.labels_of(p.edge_ids)) for p in paths]
    return _dump(doc)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(mg: Metagraph, highlight=None, name: str = "metagraph") -> str:
    """Bipartite Graphviz digraph: ellipses for elements, boxes for edges.

    ``highlight`` is an iterable of edge ids (ints) or labels; those boxes and
    their arcs are drawn red and bold.
    """
    marked: set[int] = set()
    for h in highlight or ():
        marked.add(mg.edge_index(h) if isinstance(h, str) else int(h))

    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;", "  node [shape=ellipse];"]
    for x in mg.elements:
        lines.append(f"  {_quote(x)};")
    style = ' color="red", penwidth=2'
    for e in mg.edges:
        label = mg.edge_labels[e.id]
        box = _quote("edge:" + label)
        extra = "," + style if e.id in marked else ""
        lines.append(f"  {box} [shape=box, label={_quote(label)}, width=0.3, height=0.2, fontsize=10{extra}];")
    for e in mg.edges:
        box = _quote("edge:" + mg.edge_labels[e.id])
        attr = f" [{style.strip()}]" if e.id in marked else ""
        for x in mg.names(e.invertex):
            lines.append(f"  {_quote(x)} -> {box}{attr};")
        for x in mg.names(e.outvertex):
            lines.append(f"  {box} -> {_quote(x)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
