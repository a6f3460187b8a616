"""Projections of a metagraph onto a subset of its elements.

:func:`tpp` is the fast construction built on :func:`get_all_metapaths`.
:func:`bbp_oracle` and :func:`tpp_oracle` are brute-force references that
read everything off the power-set tables in :mod:`metaproj.oracle`; they are
exact but only usable on small graphs.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .core import (
    Edge,
    ElementNotInGeneratingSet,
    Metagraph,
    MetagraphError,
    Metapath,
    bits,
    forward_closure,
    is_subset,
    metapath_accounting,
)
from .oracle import (
    DEFAULT_MAX_EDGES,
    DEFAULT_MAX_SUBSET,
    BudgetExceeded,
    Factorization,
    SubsetTable,
    dominant_metapaths_by_target,
    enumerate_dominant_metapaths_oracle,
    factorize_metapath,
    is_irreducible,
)
from .pathfinding import get_all_metapaths

__all__ = [
    "TPP",
    "BBP",
    "EmptyPath",
    "SubsetNotInGeneratingSet",
    "ProjectionResult",
    "projection_edge",
    "tpp",
    "tpp_oracle",
    "bbp_oracle",
    "BudgetExceeded",
    "Factorization",
    "enumerate_dominant_metapaths_oracle",
    "is_irreducible",
    "factorize_metapath",
    "represented",
]

TPP = "TPP"
BBP = "BBP"

# paths found after dropping source elements get an exact reducibility check
_IRREDUCIBLE_BUDGET = 24


class EmptyPath(MetagraphError, ValueError):
    pass


class SubsetNotInGeneratingSet(ElementNotInGeneratingSet):
    pass


@dataclass
class ProjectionResult:
    """A projected metagraph plus the original metapaths behind each edge.

    ``reverse_map[k]`` lists the metapaths of the original graph that
    projected edge ``k`` stands for.  Metapath edge ids refer to the
    original graph; source and target masks refer to it as well.
    """

    projected: Metagraph
    reverse_map: dict[int, list[Metapath]] = field(default_factory=dict)
    kind: str = TPP
    original: Metagraph | None = None

    def edge_set(self) -> set[tuple[tuple[str, ...], tuple[str, ...]]]:
        return set(self.projected.edge_pairs())

    def reverse_labels(self) -> dict[tuple[str, ...], list[tuple[str, ...]]]:
        """Reverse map keyed by invertex names, metapaths as edge-label tuples."""
        mg = self.original
        out = {}
        for k, e in enumerate(self.projected.edges):
            paths = self.reverse_map.get(k, [])
            if mg is None:
                out[self.projected.names(e.invertex)] = [tuple(str(i) for i in p.edge_ids) for p in paths]
            else:
                out[self.projected.names(e.invertex)] = sorted(mg.labels_of(p.edge_ids) for p in paths)
        return out


def _subset_mask(mg: Metagraph, generating_subset) -> int:
    try:
        return mg.mask(generating_subset)
    except ElementNotInGeneratingSet as exc:
        raise SubsetNotInGeneratingSet(str(exc)) from None


def _fires_from(mg: Metagraph, edge_mask: int, start: int) -> bool:
    return is_subset(edge_mask, _fired(mg, edge_mask, start))


def _fired(mg: Metagraph, edge_mask: int, start: int) -> int:
    remaining, fired, avail = edge_mask, 0, start
    progress = True
    while remaining and progress:
        progress = False
        for i in bits(remaining):
            e = mg.edges[i]
            if is_subset(e.invertex, avail):
                avail |= e.outvertex
                remaining &= ~(1 << i)
                fired |= 1 << i
                progress = True
    return fired


def _required_inputs(mg: Metagraph, edge_mask: int, src: int) -> int:
    """Source elements the path consumes before (or without) producing them."""
    avail, needed = src, 0
    remaining = edge_mask
    progress = True
    order = []
    while remaining and progress:
        progress = False
        for i in bits(remaining):
            e = mg.edges[i]
            if is_subset(e.invertex, avail):
                order.append(i)
                avail |= e.outvertex
                remaining &= ~(1 << i)
                progress = True
    if remaining:
        return -1
    produced = 0
    for i in order:
        e = mg.edges[i]
        needed |= e.invertex & ~produced
        produced |= e.outvertex
    return needed & src


def _minimal_sources(mg: Metagraph, edge_mask: int, src: int, limit: int = 16) -> list[int]:
    """Inclusion-minimal ``V <= src`` from which the path fires."""
    acc = metapath_accounting(mg, edge_mask)
    pure = acc.pure_inputs
    if not is_subset(pure, src):
        return []
    if _fires_from(mg, edge_mask, pure):
        return [pure]
    upper = _required_inputs(mg, edge_mask, src)
    if upper < 0:
        return []
    cand = list(bits(upper & ~pure))
    if len(cand) > limit:
        # too many cycle elements to enumerate; fall back to one greedy answer
        v = upper
        for k in reversed(cand):
            if _fires_from(mg, edge_mask, v & ~(1 << k)):
                v &= ~(1 << k)
        return [v]
    found: list[int] = []
    for r in range(1, len(cand) + 1):
        for combo in combinations(cand, r):
            v = pure
            for k in combo:
                v |= 1 << k
            if any(is_subset(f, v) for f in found):
                continue
            if _fires_from(mg, edge_mask, v):
                found.append(v)
    return found


def projection_edge(mg: Metagraph, path, source, generating_subset) -> Edge:
    """The projected edge representing one metapath.

    The outvertex is the pure outputs of the path restricted to the subset.
    The invertex is the part of ``source`` the path actually consumes: the
    edges are put in firing order and every input not produced by an earlier
    edge is collected, then inputs that a cycle can regenerate are dropped
    while the path still fires.  The returned edge has ``id == -1``.
    """
    emask = mg.edge_mask(path)
    if not emask:
        raise EmptyPath("cannot project an empty path")
    src = mg.mask(source)
    sub = _subset_mask(mg, generating_subset)
    acc = metapath_accounting(mg, emask)
    inv = _required_inputs(mg, emask, src)
    if inv < 0:
        raise MetagraphError("path does not fire from the given source")
    for k in reversed(list(bits(inv & ~acc.pure_inputs))):
        if _fires_from(mg, emask, inv & ~(1 << k)):
            inv &= ~(1 << k)
    return Edge(inv, acc.pure_outputs & sub, -1)


def _build_result(
    mg: Metagraph, sub: int, grouped: dict[int, tuple[int, list[Metapath]]], kind: str
) -> ProjectionResult:
    elements = mg.names(sub)
    # old handle -> new handle; X' keeps the original interning order
    remap = {old: new for new, old in enumerate(bits(sub))}

    def translate(mask: int) -> tuple[str, ...]:
        return tuple(mg.elements[i] for i in bits(mask))

    order = sorted(grouped, key=lambda v: tuple(remap[i] for i in bits(v)))
    edges = [(translate(v), translate(grouped[v][0])) for v in order]
    labels = [f"p{k + 1}" for k in range(len(order))]
    projected = Metagraph.build(elements, edges, labels)
    reverse = {}
    for k, v in enumerate(order):
        paths = grouped[v][1]
        reverse[k] = sorted(set(paths), key=lambda p: (len(p.edge_ids), p.edge_ids))
    return ProjectionResult(projected, reverse, kind, mg)


def _group(candidates) -> dict[int, tuple[int, list[Metapath]]]:
    grouped: dict[int, tuple[int, list[Metapath]]] = {}
    for v, x, path in candidates:
        out, paths = grouped.get(v, (0, []))
        paths.append(path)
        grouped[v] = (out | x, paths)
    return grouped


def _downstream_of(mg: Metagraph, emask: int, outs: int, avail: int, closure) -> set[int]:
    """Elements reachable from edges outside the path that consume its outputs."""
    others = mg.all_edges_mask & ~emask
    live = closure(avail | outs, others)
    reach = 0
    frontier = outs
    while frontier:
        reach |= frontier
        nxt = 0
        for i in bits(others):
            e = mg.edges[i]
            if e.invertex & frontier and is_subset(e.invertex, live):
                nxt |= e.outvertex
        frontier = nxt & ~reach
    return set(bits(reach & ~outs))


def _irreducible_or_too_big(mg: Metagraph, mp: Metapath, sub: int) -> bool:
    try:
        return is_irreducible(mg, mp, sub, max_edges=_IRREDUCIBLE_BUDGET)
    except BudgetExceeded:
        # no exact check at this size; keep the path rather than lose an edge
        return True


def _tpp_target(mg: Metagraph, sub: int, x: int, combine: bool) -> list[tuple[int, int, Metapath]]:
    xm = 1 << x
    root = sub & ~xm
    all_edges = mg.all_edges_mask
    closure_cache: dict[tuple[int, int], int] = {}

    def closure(w: int, edges: int = all_edges) -> int:
        hit = closure_cache.get((w, edges))
        if hit is None:
            hit = closure_cache[w, edges] = forward_closure(mg, w, edges)
        return hit

    found: dict[tuple[int, tuple[int, ...]], Metapath] = {}
    pending = [root]
    visited = {root}
    while pending:
        s = pending.pop()
        for path in get_all_metapaths(mg, s, xm, combine=combine):
            emask = 0
            for i in path:
                emask |= 1 << i
            sources = _minimal_sources(mg, emask, s)
            for v in sources:
                if (v, path) in found:
                    continue
                # input dominance: nothing smaller reaches x at all
                if any(closure(v & ~(1 << k)) & xm for k in bits(v)):
                    continue
                mp = Metapath(tuple(path), v, xm)
                # from the full subset a reducible path would contain a
                # shorter one and never be yielded; below it must be checked
                if s != root and not _irreducible_or_too_big(mg, mp, sub):
                    continue
                found[v, path] = mp
            # A larger path may regenerate an element this one consumes, but
            # only with this path's help; the search from s never sees it.
            # Retry without that element.
            used = 0
            for v in sources:
                used |= v
            outs = metapath_accounting(mg, emask).all_outputs
            for u in bits(used):
                w = s & ~(1 << u)
                if w in visited or not closure(w) & xm or not closure(w) >> u & 1:
                    continue
                if outs >> u & 1 or u in _downstream_of(mg, emask, outs, w, closure):
                    visited.add(w)
                    pending.append(w)
    return [(mp.source, xm, mp) for mp in found.values()]


def tpp(mg: Metagraph, generating_subset, *, threads: int = 1, combine: bool = True) -> ProjectionResult:
    """Transitivity preserving projection of ``mg`` onto ``generating_subset``.

    Per-target searches are independent and run on ``threads`` workers; the
    merge afterwards is sequential, so the result does not depend on the
    thread count.
    """
    sub = _subset_mask(mg, generating_subset)
    targets = list(bits(sub))
    if threads > 1 and len(targets) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_target = list(pool.map(lambda x: _tpp_target(mg, sub, x, combine), targets))
    else:
        per_target = [_tpp_target(mg, sub, x, combine) for x in targets]
    return _build_result(mg, sub, _group(c for chunk in per_target for c in chunk), TPP)


def bbp_oracle(
    mg: Metagraph,
    generating_subset,
    *,
    max_edges: int = DEFAULT_MAX_EDGES,
    max_subset: int = DEFAULT_MAX_SUBSET,
) -> ProjectionResult:
    """Exact projection keeping every dominant metapath into the subset."""
    sub = _subset_mask(mg, generating_subset)
    by_target = dominant_metapaths_by_target(mg, sub, max_edges=max_edges, max_subset=max_subset)
    cands = [(p.source, p.target, p) for x in bits(sub) for p in by_target[x]]
    return _build_result(mg, sub, _group(cands), BBP)


def tpp_oracle(
    mg: Metagraph,
    generating_subset,
    *,
    max_edges: int = DEFAULT_MAX_EDGES,
    max_subset: int = DEFAULT_MAX_SUBSET,
) -> ProjectionResult:
    """Reference projection: dominant, irreducible metapaths grouped by invertex."""
    sub = _subset_mask(mg, generating_subset)
    table = SubsetTable(mg, max_edges=max_edges)
    by_target = dominant_metapaths_by_target(mg, sub, max_edges=max_edges, max_subset=max_subset, table=table)
    cands = [
        (p.source, p.target, p)
        for x in bits(sub)
        for p in by_target[x]
        if is_irreducible(mg, p, sub, max_edges=max_edges)
    ]
    return _build_result(mg, sub, _group(cands), TPP)


def represented(result: ProjectionResult, path: Metapath) -> bool:
    """Does some projected edge carry ``path``'s source to its target?"""
    mg = result.original
    names_src = mg.names(path.source)
    names_tgt = set(mg.names(path.target))
    for inv, out in result.projected.edge_pairs():
        if inv == names_src and names_tgt <= set(out):
            return True
    return False

