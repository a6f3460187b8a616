"""Set-trie and set-trie multimap.

Keys are sets of non-negative integer handles, given either as a bitmask
``int`` or as an iterable of handles.  Each key is stored as the path of its
handles in increasing order, which lets subset and superset queries prune
whole subtrees.  Results come back as bitmasks in lexicographic order of the
sorted handle tuples, regardless of insertion order.
"""

from __future__ import annotations

from bisect import insort
from collections.abc import Iterable, Iterator
from typing import Any

from .core import bits

__all__ = ["SetTrie", "SetTrieMultiMap"]


def _handles(key: int | Iterable[int]) -> list[int]:
    if isinstance(key, int):
        return list(bits(key))
    return sorted(set(key))


class _Node:
    __slots__ = ("children", "order", "end", "values", "key")

    def __init__(self) -> None:
        self.children: dict[int, _Node] = {}
        self.order: list[int] = []
        self.end = False
        self.values: list[Any] | None = None
        self.key = 0


class SetTrie:
    def __init__(self, keys: Iterable[int | Iterable[int]] = ()) -> None:
        self._root = _Node()
        self._size = 0
        for k in keys:
            self.insert(k)

    def _descend(self, key: int | Iterable[int], create: bool) -> _Node | None:
        node = self._root
        mask = 0
        for h in _handles(key):
            mask |= 1 << h
            child = node.children.get(h)
            if child is None:
                if not create:
                    return None
                child = _Node()
                child.key = mask
                node.children[h] = child
                insort(node.order, h)
            node = child
        return node

    def insert(self, key: int | Iterable[int]) -> None:
        node = self._descend(key, create=True)
        if not node.end:
            node.end = True
            self._size += 1

    def __contains__(self, key: int | Iterable[int]) -> bool:
        node = self._descend(key, create=False)
        return node is not None and node.end

    def __len__(self) -> int:
        return self._size

    def __iter__(self) -> Iterator[int]:
        return (n.key for n in self._walk(self._root))

    def keys(self) -> list[int]:
        return list(self)

    def _walk(self, node: _Node) -> Iterator[_Node]:
        if node.end:
            yield node
        for h in node.order:
            yield from self._walk(node.children[h])

    # -- queries ----------------------------------------------------------

    def _subset_nodes(self, query: int | Iterable[int]) -> Iterator[_Node]:
        q = _handles(query)
        n = len(q)

        def rec(node: _Node, start: int) -> Iterator[_Node]:
            if node.end:
                yield node
            children = node.children
            if not children:
                return
            for j in range(start, n):
                child = children.get(q[j])
                if child is not None:
                    yield from rec(child, j + 1)

        return rec(self._root, 0)

    def _superset_nodes(self, query: int | Iterable[int]) -> Iterator[_Node]:
        q = _handles(query)
        n = len(q)

        def rec(node: _Node, idx: int) -> Iterator[_Node]:
            if idx == n:
                yield from self._walk(node)
                return
            want = q[idx]
            for h in node.order:
                if h > want:
                    break
                yield from rec(node.children[h], idx + 1 if h == want else idx)

        return rec(self._root, 0)

    def subsets_of(self, query: int | Iterable[int]) -> list[int]:
        """Stored keys ``k`` with ``k <= query``."""
        return [node.key for node in self._subset_nodes(query)]

    def supersets_of(self, query: int | Iterable[int]) -> list[int]:
        """Stored keys ``k`` with ``query <= k``."""
        return [node.key for node in self._superset_nodes(query)]

    def exists_subset(self, query: int | Iterable[int]) -> bool:
        return next(self._subset_nodes(query), None) is not None

    def exists_proper_subset(self, query: int | Iterable[int]) -> bool:
        """Is some stored key a strict subset of ``query``?"""
        qmask = query if isinstance(query, int) else sum(1 << h for h in set(query))
        return any(node.key != qmask for node in self._subset_nodes(qmask))


class SetTrieMultiMap(SetTrie):
    """Set-trie whose keys carry an append-only list of values."""

    def assign(self, key: int | Iterable[int], value: Any) -> None:
        node = self._descend(key, create=True)
        if not node.end:
            node.end = True
            self._size += 1
        if node.values is None:
            node.values = []
        node.values.append(value)

    def get(self, key: int | Iterable[int]) -> list[Any]:
        node = self._descend(key, create=False)
        if node is None or not node.end or node.values is None:
            return []
        return list(node.values)

    def items(self) -> list[tuple[int, list[Any]]]:
        return [(n.key, list(n.values or ())) for n in self._walk(self._root)]

    def subset_items(self, query: int | Iterable[int]) -> list[tuple[int, list[Any]]]:
        return [(n.key, list(n.values or ())) for n in self._subset_nodes(query)]

    def values_for_subsets(self, query: int | Iterable[int]) -> list[Any]:
        """Flattened values of every key that is a subset of ``query``."""
        out: list[Any] = []
        for node in self._subset_nodes(query):
            if node.values:
                out.extend(node.values)
        return out

    def superset_items(self, query: int | Iterable[int]) -> list[tuple[int, list[Any]]]:
        return [(n.key, list(n.values or ())) for n in self._superset_nodes(query)]
