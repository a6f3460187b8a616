"""Brute-force reference computations over the edge power set.

Nothing here uses the breadth-first search or the set-trie; every answer is
read off a table covering all ``2**m`` edge subsets (see
:mod:`metaproj._kernels`).  A subset ``S`` is a metapath from ``V`` to ``C``
when its pure inputs lie in ``V``, its edges can be fired in some order
starting from ``V``, and ``C`` is covered by its outputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _kernels
from .core import Metagraph, MetagraphError, Metapath, bits, is_subset, popcount

__all__ = [
    "BudgetExceeded",
    "DEFAULT_MAX_EDGES",
    "DEFAULT_MAX_SUBSET",
    "SubsetTable",
    "enumerate_dominant_metapaths_oracle",
    "dominant_metapaths_by_target",
    "admissible_factorizations",
    "is_irreducible",
    "Factorization",
    "factorize_metapath",
]

DEFAULT_MAX_EDGES = 14
DEFAULT_MAX_SUBSET = 10
MAX_CYCLE_CANDIDATES = 16


class BudgetExceeded(MetagraphError, RuntimeError):
    pass


def _canon(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


class SubsetTable:
    """Per-subset accounting for a fixed list of edges.

    Local subset masks index the arrays; ``globalize`` maps them back to the
    metagraph's edge ids.
    """

    def __init__(self, mg: Metagraph, edge_ids=None, max_edges: int = DEFAULT_MAX_EDGES, use_numba=None):
        ids = list(range(len(mg.edges))) if edge_ids is None else sorted(edge_ids)
        if len(ids) > max_edges:
            raise BudgetExceeded(f"{len(ids)} edges exceeds the brute-force budget of {max_edges}")
        if len(mg.elements) > 64:
            raise BudgetExceeded("brute force supports at most 64 elements")
        self.mg = mg
        self.ids = ids
        self.inv = [mg.edges[i].invertex for i in ids]
        self.out = [mg.edges[i].outvertex for i in ids]
        ins, outs, pure, grounded = _kernels.subset_table(self.inv, self.out, use_numba)
        self.ins, self.outs, self.pure, self.grounded = ins, outs, pure, grounded

    @property
    def size(self) -> int:
        return len(self.ids)

    def globalize(self, local: int) -> tuple[int, ...]:
        return tuple(self.ids[k] for k in bits(local))

    def fires_from(self, local: int, start: int) -> bool:
        remaining = local
        avail = start
        progress = True
        while remaining and progress:
            progress = False
            for k in bits(remaining):
                if is_subset(self.inv[k], avail):
                    avail |= self.out[k]
                    remaining &= ~(1 << k)
                    progress = True
        return remaining == 0

    def minimal_sources(self, local: int, universe: int) -> list[int]:
        """Inclusion-minimal sources ``V <= universe`` that ``local`` runs from."""
        pure = int(self.pure[local])
        if not is_subset(pure, universe):
            return []
        if self.grounded[local]:
            return [pure]
        # self-supporting cycle: some produced elements must also be supplied
        extra = int(self.ins[local]) & int(self.outs[local]) & universe
        cand = list(bits(extra))
        if len(cand) > MAX_CYCLE_CANDIDATES:
            raise BudgetExceeded("too many cycle-breaking candidates")
        found: list[int] = []
        for r in range(1, len(cand) + 1):
            for combo in combinations(cand, r):
                v = pure
                for k in combo:
                    v |= 1 << k
                if any(is_subset(f, v) for f in found):
                    continue
                if self.fires_from(local, v):
                    found.append(v)
        return found

    def dominant(self, target: int, universe: int) -> list[tuple[int, int]]:
        """Dominant metapaths ``(V, local S)`` to ``target`` with ``V <= universe``."""
        t = np.uint64(target)
        u = np.uint64(universe)
        zero = np.uint64(0)
        cand = np.nonzero(((self.outs & t) == t) & ((self.pure & ~u) == zero))[0]
        cand = cand[cand != 0]
        if cand.size == 0:
            return []

        good = cand[self.grounded[cand]]
        pairs_v = [self.pure[good]]
        pairs_s = [good.astype(np.uint64)]
        extra_v, extra_s = [], []
        for s in cand[~self.grounded[cand]]:
            for v in self.minimal_sources(int(s), universe):
                extra_v.append(v)
                extra_s.append(int(s))
        if extra_v:
            pairs_v.append(np.asarray(extra_v, dtype=np.uint64))
            pairs_s.append(np.asarray(extra_s, dtype=np.uint64))
        vs = np.concatenate(pairs_v)
        ss = np.concatenate(pairs_s)

        sources = sorted({int(v) for v in np.unique(vs)}, key=popcount)
        minimal_v: list[int] = []
        for v in sources:
            if not any(is_subset(m, v) for m in minimal_v):
                minimal_v.append(v)

        result: list[tuple[int, int]] = []
        for v in minimal_v:
            group = ss[vs == np.uint64(v)]
            result.extend((v, s) for s in _inclusion_minimal(group))
        result.sort(key=lambda vs_: (_canon(vs_[0]), _canon(vs_[1])))
        return result


def _inclusion_minimal(masks: np.ndarray) -> list[int]:
    masks = np.unique(masks)
    counts = np.array([popcount(int(m)) for m in masks])
    masks = masks[np.argsort(counts, kind="stable")]
    minimal: list[int] = []
    while masks.size:
        head = masks[0]
        minimal.append(int(head))
        masks = masks[(masks & head) != head]
    return minimal


def enumerate_dominant_metapaths_oracle(
    mg: Metagraph, source, target, *, max_edges: int = DEFAULT_MAX_EDGES
) -> list[Metapath]:
    """All dominant metapaths ``M(V, target)`` with ``V`` inside ``source``."""
    src, tgt = mg.mask(source), mg.mask(target)
    table = SubsetTable(mg, max_edges=max_edges)
    return [Metapath(table.globalize(s), v, tgt) for v, s in table.dominant(tgt, src)]


def dominant_metapaths_by_target(
    mg: Metagraph,
    generating_subset,
    *,
    max_edges: int = DEFAULT_MAX_EDGES,
    max_subset: int = DEFAULT_MAX_SUBSET,
    table: SubsetTable | None = None,
) -> dict[int, list[Metapath]]:
    """For each element ``x`` of the subset, its dominant metapaths from the rest."""
    sub = mg.mask(generating_subset)
    if popcount(sub) > max_subset:
        raise BudgetExceeded(f"|X'| = {popcount(sub)} exceeds the budget of {max_subset}")
    if table is None:
        table = SubsetTable(mg, max_edges=max_edges)
    out: dict[int, list[Metapath]] = {}
    for x in bits(sub):
        xm = 1 << x
        out[x] = [Metapath(table.globalize(s), v, xm) for v, s in table.dominant(xm, sub & ~xm)]
    return out


# -- irreducibility and factorization ----------------------------------------


def admissible_factorizations(
    mg: Metagraph, path: Metapath, generating_subset, *, max_edges: int = DEFAULT_MAX_EDGES
) -> list[tuple[int, tuple[int, ...], tuple[int, ...]]]:
    """Every split ``path = M(A, Z) o M(Z, {x})`` with ``Z`` in the subset.

    Returns ``(Z, head_edges, tail_edges)`` triples where the head ends at
    ``x``.  Both parts are non-empty and disjoint.  The tail may use source
    elements directly, so ``Z`` only has to be available from ``A`` plus the
    tail's outputs.
    """
    sub = mg.mask(generating_subset)
    table = SubsetTable(mg, path.edge_ids, max_edges=max_edges)
    full = (1 << table.size) - 1
    x = path.target
    universe = sub & ~x
    a = path.source
    found = []
    head = (full - 1) & full
    while head:
        tail = full ^ head
        if tail and is_subset(x, int(table.outs[head])):
            zs = table.minimal_sources(head, universe)
            if zs and is_subset(int(table.pure[tail]), a) and table.fires_from(tail, a):
                avail = a | int(table.outs[tail])
                for z in zs:
                    if is_subset(z, avail):
                        found.append((z, table.globalize(head), table.globalize(tail)))
        head = (head - 1) & full
    found.sort(key=lambda t: (_canon(t[0]), t[1]))
    return found


def is_irreducible(mg: Metagraph, path: Metapath, generating_subset, *, max_edges: int = DEFAULT_MAX_EDGES) -> bool:
    return not admissible_factorizations(mg, path, generating_subset, max_edges=max_edges)


@dataclass
class Factorization:
    """Result of recursively splitting a dominant metapath.

    ``factors`` are the irreducible leaves (sorted edge-id tuples);
    ``structure`` is a nested dict recording each split.  ``non_unique`` is
    set when some split had more than one admissible choice.
    """

    path: Metapath
    factors: list[tuple[int, ...]]
    structure: dict
    non_unique: bool = False
    alternatives: list[int] = field(default_factory=list)


def factorize_metapath(
    mg: Metagraph, path: Metapath, generating_subset, *, max_edges: int = DEFAULT_MAX_EDGES
) -> Factorization:
    sub = mg.mask(generating_subset)
    factors: dict[tuple[int, ...], None] = {}
    flags = {"non_unique": False}
    root_alternatives: list[int] = []

    def split(p: Metapath, depth: int) -> dict:
        options = admissible_factorizations(mg, p, sub, max_edges=max_edges)
        if not options:
            factors.setdefault(p.edge_ids, None)
            return {"edges": p.edge_ids, "source": p.source, "target": p.target}
        irreducible_heads = [
            (z, h, t) for z, h, t in options if is_irreducible(mg, Metapath(h, z, p.target), sub, max_edges=max_edges)
        ]
        choices = irreducible_heads or options
        if len({z for z, _, _ in choices}) > 1 or len(choices) > 1:
            flags["non_unique"] = True
        if depth == 0:
            root_alternatives.extend(sorted({z for z, _, _ in choices}, key=_canon))
        z, head, tail = choices[0]
        head_path = Metapath(head, z, p.target)
        node = {
            "edges": p.edge_ids,
            "source": p.source,
            "target": p.target,
            "z": z,
            "head": split(head_path, depth + 1),
            "tail": [],
        }
        sub_mg_table = SubsetTable(mg, tail, max_edges=max_edges)
        for zi in bits(z & ~p.source):
            for v, s in sub_mg_table.dominant(1 << zi, p.source):
                piece = Metapath(sub_mg_table.globalize(s), v, 1 << zi)
                node["tail"].append(split(piece, depth + 1))
        return node

    structure = split(path, 0)
    return Factorization(
        path=path,
        factors=sorted(factors, key=lambda f: (len(f), f)),
        structure=structure,
        non_unique=flags["non_unique"],
        alternatives=root_alternatives,
    )
