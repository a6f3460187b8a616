"""Metagraph domain types.

Element sets are stored as Python ``int`` bitmasks over interned element
handles: bit ``k`` is set when the element interned at position ``k`` is a
member.  The interning order is the declaration order of the generating set,
so iterating the set bits low-to-high gives the canonical order of a set.
Edge-id sets use the same representation over edge indices.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from typing import NamedTuple, Union

__all__ = [
    "MetagraphError",
    "ElementNotInGeneratingSet",
    "UnknownElement",
    "DuplicateElement",
    "DuplicateEdge",
    "InvalidEdgeId",
    "Edge",
    "Metagraph",
    "Metapath",
    "Accounting",
    "bits",
    "mask_of",
    "popcount",
    "is_subset",
    "is_metapath",
    "is_grounded",
    "metapath_accounting",
    "forward_closure",
]


class MetagraphError(Exception):
    """Base class for every domain error raised by this package."""


class ElementNotInGeneratingSet(MetagraphError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "element not in generating set"


# Raised by the search entry points; same condition, friendlier name.
UnknownElement = ElementNotInGeneratingSet


class DuplicateElement(MetagraphError, ValueError):
    pass


class DuplicateEdge(MetagraphError, ValueError):
    pass


class InvalidEdgeId(MetagraphError, IndexError):
    pass


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


class Edge(NamedTuple):
    """A directed set-to-set mapping; both vertices are element bitmasks."""

    invertex: int
    outvertex: int
    id: int


ElementsLike = Union[int, str, Iterable[str]]


@dataclass(frozen=True, eq=False)
class Metagraph:
    """Generating set plus an indexed, immutable edge list.

    Build instances with :meth:`Metagraph.build`; the raw constructor expects
    already-validated masks.
    """

    elements: tuple[str, ...]
    edges: tuple[Edge, ...]
    edge_labels: tuple[str, ...]

    @classmethod
    def build(
        cls,
        generating_set: Sequence[str],
        edges: Iterable[tuple[Iterable[str], Iterable[str]]],
        labels: Sequence[str] | None = None,
    ) -> Metagraph:
        elements = tuple(generating_set)
        index: dict[str, int] = {}
        for name in elements:
            if name in index:
                raise DuplicateElement(f"duplicate element {name!r} in generating set")
            index[name] = len(index)

        built: list[Edge] = []
        seen: dict[tuple[int, int], int] = {}
        for i, (inv, outv) in enumerate(edges):
            im = _names_to_mask(index, inv)
            om = _names_to_mask(index, outv)
            if (im, om) in seen:
                raise DuplicateEdge(f"edge {i} duplicates edge {seen[im, om]}")
            seen[im, om] = i
            built.append(Edge(im, om, i))

        if labels is None:
            labels = [f"e{i + 1}" for i in range(len(built))]
        labels = tuple(labels)
        if len(labels) != len(built):
            raise ValueError("one label per edge is required")
        if len(set(labels)) != len(labels):
            raise DuplicateEdge("edge labels must be unique")
        return cls(elements, tuple(built), labels)

    def __post_init__(self) -> None:
        index = {n: i for i, n in enumerate(self.elements)}
        if len(index) != len(self.elements):
            raise DuplicateElement("duplicate element in generating set")
        object.__setattr__(self, "_index", index)
        full = self.full_mask
        for e in self.edges:
            if (e.invertex | e.outvertex) & ~full:
                raise ElementNotInGeneratingSet(f"edge {e.id} references an unknown element")

    # -- element sets ----------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    @property
    def all_edges_mask(self) -> int:
        return (1 << len(self.edges)) - 1

    def element_index(self, name: str) -> int:
        try:
            return self._index[name]  # type: ignore[attr-defined]
        except KeyError:
            raise ElementNotInGeneratingSet(f"unknown element {name!r}") from None

    def mask(self, elements: ElementsLike) -> int:
        """Convert names (or an existing mask) to an element bitmask."""
        if isinstance(elements, int):
            if elements & ~self.full_mask or elements < 0:
                raise ElementNotInGeneratingSet(f"mask {elements:#x} has bits outside the generating set")
            return elements
        if isinstance(elements, str):
            elements = (elements,)
        return _names_to_mask(self._index, elements)  # type: ignore[attr-defined]

    def names(self, mask: int) -> tuple[str, ...]:
        """Members of ``mask`` in canonical (interning) order."""
        return tuple(self.elements[i] for i in bits(mask))

    # -- edges ------------------------------------------------------------

    def edge_index(self, label: str) -> int:
        try:
            return self.edge_labels.index(label)
        except ValueError:
            raise InvalidEdgeId(f"unknown edge label {label!r}") from None

    def edge_mask(self, edge_ids: int | Iterable[int]) -> int:
        """Validate an edge-id collection and return it as a bitmask."""
        if isinstance(edge_ids, int):
            m = edge_ids
        else:
            m = 0
            for i in edge_ids:
                if not 0 <= i < len(self.edges):
                    raise InvalidEdgeId(f"edge id {i} out of range")
                m |= 1 << i
        if m < 0 or m & ~self.all_edges_mask:
            raise InvalidEdgeId("edge id out of range")
        return m

    def labels_of(self, edge_ids: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.edge_labels[i] for i in sorted(edge_ids))

    def edge_pairs(self) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
        return [(self.names(e.invertex), self.names(e.outvertex)) for e in self.edges]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Metagraph):
            return NotImplemented
        return (
            self.elements == other.elements
            and self.edges == other.edges
            and self.edge_labels == other.edge_labels
        )

    def __hash__(self) -> int:
        return hash((self.elements, self.edges, self.edge_labels))

    def __repr__(self) -> str:
        return f"Metagraph(|X|={len(self.elements)}, |E|={len(self.edges)})"


def _names_to_mask(index: dict[str, int], names: Iterable[str]) -> int:
    m = 0
    for n in names:
        try:
            m |= 1 << index[n]
        except KeyError:
            raise ElementNotInGeneratingSet(f"unknown element {n!r}") from None
    return m


class Metapath(NamedTuple):
    """Edge ids (sorted) with the source and target masks they connect."""

    edge_ids: tuple[int, ...]
    source: int
    target: int


class Accounting(NamedTuple):
    all_inputs: int
    all_outputs: int
    pure_inputs: int
    pure_outputs: int


def metapath_accounting(mg: Metagraph, edge_ids: int | Iterable[int]) -> Accounting:
    """Union of invertices/outvertices of a path and their pure parts."""
    ins = outs = 0
    for i in bits(mg.edge_mask(edge_ids)):
        e = mg.edges[i]
        ins |= e.invertex
        outs |= e.outvertex
    return Accounting(ins, outs, ins & ~outs, outs & ~ins)


def is_metapath(mg: Metagraph, edge_ids, source: ElementsLike, target: ElementsLike) -> bool:
    """Pure inputs lie in ``source`` and ``target`` is covered by the outputs.

    The simple-path membership clause is deliberately not checked.
    """
    acc = metapath_accounting(mg, edge_ids)
    return is_subset(acc.pure_inputs, mg.mask(source)) and is_subset(mg.mask(target), acc.all_outputs)


def is_grounded(mg: Metagraph, edge_ids, source: ElementsLike) -> bool:
    """True when the edges can be fired one by one starting from ``source``.

    A set of edges that feed each other in a cycle satisfies the pure-input
    condition without being reachable from the source; this rules those out.
    """
    remaining = mg.edge_mask(edge_ids)
    avail = mg.mask(source)
    progress = True
    while remaining and progress:
        progress = False
        for i in bits(remaining):
            e = mg.edges[i]
            if is_subset(e.invertex, avail):
                avail |= e.outvertex
                remaining &= ~(1 << i)
                progress = True
    return remaining == 0


def forward_closure(mg: Metagraph, source: int, edge_ids: int | None = None) -> int:
    """All elements derivable from ``source`` using the given edges (default: all)."""
    remaining = mg.all_edges_mask if edge_ids is None else edge_ids
    avail = source
    progress = True
    while remaining and progress:
        progress = False
        for i in bits(remaining):
            e = mg.edges[i]
            if is_subset(e.invertex, avail):
                avail |= e.outvertex
                remaining &= ~(1 << i)
                progress = True
    return avail
