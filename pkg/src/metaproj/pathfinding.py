"""Metapath search over a :class:`~metaproj.core.Metagraph`.

All element and edge-id sets are bitmasks (see :mod:`metaproj.core`).  The
public functions accept element names as well and return edge ids as sorted
lists or tuples.

Searches treat target elements already present in the source as satisfied,
so a target contained in the source is connected by the empty path.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass, field

from .core import Metagraph, MetagraphError, bits, is_subset
from .settrie import SetTrie, SetTrieMultiMap

__all__ = [
    "FOUND",
    "NO_PATH",
    "TRIVIAL",
    "UnknownCombinedEdge",
    "CombinedEdgePlan",
    "get_single_metapath",
    "get_superpath",
    "build_combined_edge_plan",
    "get_all_metapaths",
    "expand_metapath",
]

FOUND = "found"
NO_PATH = "no-path"
TRIVIAL = "trivial"


class UnknownCombinedEdge(MetagraphError, KeyError):
    pass


def _invertex_index(mg: Metagraph, edge_ids) -> SetTrieMultiMap:
    index = SetTrieMultiMap()
    for i in edge_ids:
        index.assign(mg.edges[i].invertex, i)
    return index


def get_single_metapath(mg: Metagraph, source, target, *, with_status: bool = False):
    """Find any one metapath from ``source`` to ``target``.

    Edges are returned in firing order.  With ``with_status`` the result is
    ``(edges, status)`` where status is ``FOUND``, ``NO_PATH`` or ``TRIVIAL``
    (target already inside the source; the edge list is empty).
    """
    src, tgt = mg.mask(source), mg.mask(target)
    if is_subset(tgt, src):
        return ([], TRIVIAL) if with_status else []

    index = _invertex_index(mg, range(len(mg.edges)))
    path: list[int] = []
    in_path = 0
    avail = src
    updated = True
    while updated and not is_subset(tgt, avail):
        updated = False
        for i in index.values_for_subsets(avail):
            out = mg.edges[i].outvertex
            if in_path >> i & 1 or is_subset(out, avail):
                continue
            updated = True
            avail |= out
            path.append(i)
            in_path |= 1 << i
    if not is_subset(tgt, avail):
        return ([], NO_PATH) if with_status else []

    kept: list[int] = []
    required = tgt & ~src
    for i in reversed(path):
        e = mg.edges[i]
        if e.outvertex & required:
            kept.append(i)
            required &= ~e.outvertex
            required |= e.invertex & ~src
    kept.reverse()
    kept = _drop_redundant(mg, kept, src, tgt)
    return (kept, FOUND) if with_status else kept


def _fires(mg: Metagraph, order: list[int], src: int, tgt: int) -> bool:
    # order need not be a firing order; retry until no edge fires
    avail = src
    pending = list(order)
    while pending:
        rest = [i for i in pending if not is_subset(mg.edges[i].invertex, avail)]
        if len(rest) == len(pending):
            return False
        for i in pending:
            if is_subset(mg.edges[i].invertex, avail):
                avail |= mg.edges[i].outvertex
        pending = rest
    return is_subset(tgt, avail)


def _drop_redundant(mg: Metagraph, path: list[int], src: int, tgt: int) -> list[int]:
    # The backward pass can leave an edge whose outputs are covered elsewhere.
    i = len(path) - 1
    while i >= 0 and len(path) > 1:
        trial = path[:i] + path[i + 1 :]
        if _fires(mg, trial, src, tgt):
            path = trial
        i -= 1
    return path


def get_superpath(mg: Metagraph, source, target) -> list[int]:
    """Every edge that can lie on a metapath from ``source`` to ``target``.

    The forward pass collects the edges reachable from the source; the
    backward pass keeps those feeding the target.  Source elements are never
    added to the required set, so edges that only re-derive source elements
    are dropped.
    """
    src, tgt = mg.mask(source), mg.mask(target)
    index = _invertex_index(mg, range(len(mg.edges)))
    path: list[int] = []
    in_path = 0
    avail = src
    updated = True
    while updated:
        updated = False
        for i in index.values_for_subsets(avail):
            if in_path >> i & 1:
                continue
            avail |= mg.edges[i].outvertex
            path.append(i)
            in_path |= 1 << i
            updated = True

    kept: list[int] = []
    in_kept = 0
    required = tgt & ~src
    updated = True
    while updated:
        updated = False
        for i in reversed(path):
            if in_kept >> i & 1:
                continue
            e = mg.edges[i]
            if e.outvertex & required:
                kept.append(i)
                in_kept |= 1 << i
                required |= e.invertex & ~src
                updated = True
    return kept


@dataclass
class CombinedEdgePlan:
    """Search space after merging same-invertex edges.

    ``extended_edges`` holds ``(invertex, outvertex)`` masks: the original
    edges first, then one synthetic edge per merged group.
    ``replacement_map`` maps a synthetic id to the original ids it replaced;
    ``index`` maps invertices to the edge ids the search may use.
    """

    n_original: int
    extended_edges: list[tuple[int, int]]
    replacement_map: dict[int, list[int]] = field(default_factory=dict)
    index: SetTrieMultiMap = field(default_factory=SetTrieMultiMap)

    def is_synthetic(self, edge_id: int) -> bool:
        return edge_id >= self.n_original


def build_combined_edge_plan(mg: Metagraph, superpath_edges, *, combine: bool = True) -> CombinedEdgePlan:
    """Index the search edges, merging groups that share an invertex.

    Two or more edges leaving the same invertex are merged only when none of
    their output elements has a second incoming edge anywhere in the graph.
    """
    plan = CombinedEdgePlan(len(mg.edges), [(e.invertex, e.outvertex) for e in mg.edges])
    by_invertex = _invertex_index(mg, superpath_edges)
    if not combine:
        for key, ids in by_invertex.items():
            for i in ids:
                plan.index.assign(key, i)
        return plan

    incoming = Counter(x for e in mg.edges for x in bits(e.outvertex))
    shared = 0
    for x, count in incoming.items():
        if count > 1:
            shared |= 1 << x

    for key, ids in by_invertex.items():
        eligible = [i for i in ids if not mg.edges[i].outvertex & shared]
        if len(ids) < 2 or len(eligible) < 2:
            for i in ids:
                plan.index.assign(key, i)
            continue
        for i in ids:
            if i not in eligible:
                plan.index.assign(key, i)
        out = 0
        for i in eligible:
            out |= mg.edges[i].outvertex
        new_id = len(plan.extended_edges)
        plan.extended_edges.append((key, out))
        plan.index.assign(key, new_id)
        plan.replacement_map[new_id] = list(eligible)
    return plan


def expand_metapath(plan: CombinedEdgePlan, path, target: int, source: int = 0) -> list[int]:
    """Replace synthetic edges in ``path`` by the original edges it needs.

    A replaced edge is kept when its outvertex meets an input of the path or
    the target, excluding elements already supplied by ``source``.
    """
    ids = list(bits(path)) if isinstance(path, int) else list(path)
    for i in ids:
        if not 0 <= i < len(plan.extended_edges):
            raise UnknownCombinedEdge(f"no edge {i} in the combined plan")
    inputs = 0
    for i in ids:
        inputs |= plan.extended_edges[i][0]
    wanted = (inputs | target) & ~source
    result: set[int] = set()
    for i in ids:
        if i < plan.n_original:
            result.add(i)
            continue
        for j in plan.replacement_map[i]:
            if plan.extended_edges[j][1] & wanted:
                result.add(j)
    return sorted(result)


def _canonical(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def get_all_metapaths(
    mg: Metagraph, source, target, *, combine: bool = True
) -> Iterator[tuple[int, ...]]:
    """Lazily yield every edge-minimal metapath from ``source`` to ``target``.

    The search is breadth first over edge sets, so paths come out in order of
    size (counted in search edges); ties are ordered lexicographically by
    edge id.  A path is yielded only if it contains no previously yielded
    path.  Each yield is a sorted tuple of original edge ids.
    """
    src, tgt = mg.mask(source), mg.mask(target)
    need = tgt & ~src
    if not need:
        return

    plan = build_combined_edge_plan(mg, get_superpath(mg, src, tgt), combine=combine)
    edges = plan.extended_edges
    index = plan.index
    found = SetTrie()

    frontier: dict[int, int] = {}
    for i in index.values_for_subsets(src):
        out = edges[i][1]
        if not is_subset(out, src):
            frontier[1 << i] = src | out

    while frontier:
        level = sorted(frontier, key=_canonical)
        extend: list[int] = []
        for p in level:
            if is_subset(need, frontier[p]):
                if not found.exists_subset(p):
                    found.insert(p)
                    yield tuple(expand_metapath(plan, p, tgt, src))
            elif not found.exists_subset(p):
                extend.append(p)

        nxt: dict[int, int] = {}
        for p in extend:
            value = frontier[p]
            for i in index.values_for_subsets(value):
                if p >> i & 1:
                    continue
                out = edges[i][1]
                if is_subset(out, value):
                    continue
                nxt[p | 1 << i] = value | out
        frontier = nxt
