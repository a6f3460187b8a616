"""Shared fixtures and brute-force references for the test suite."""

from __future__ import annotations

import random

import numpy as np

from metaproj import Metagraph, gen_random
from metaproj._kernels import subset_grounded, subset_unions
from metaproj.core import bits, is_subset

WORKED_SUBSET = ["x1", "x2", "x6", "x7", "x8"]


def worked_example() -> Metagraph:
    names = [f"x{i}" for i in range(1, 9)]
    return Metagraph.build(
        names,
        [
            (["x1"], ["x3", "x4"]),
            (["x3"], ["x6"]),
            (["x2"], ["x5"]),
            (["x4", "x5"], ["x7"]),
            (["x6", "x7"], ["x8"]),
        ],
    )


def not_unique_graph() -> Metagraph:
    """Two ways to split the path from {G, H} to A through the subset."""
    return Metagraph.build(
        list("ABCDEFGH"),
        [(["G"], ["E"]), (["H"], ["F"]), (["E"], ["B", "C"]), (["F"], ["C", "D"]), (["B", "C", "D"], ["A"])],
    )


def random_case(seed: int, max_elements: int = 8, max_edges: int = 8, max_vertex: int = 3):
    """Seeded graph plus a random projection subset."""
    rng = random.Random(seed)
    n = rng.randint(2, max_elements)
    m = rng.randint(1, min(max_edges, n * n))
    v = rng.randint(1, min(max_vertex, n))
    mg = gen_random(n, m, v, seed)
    k = rng.randint(1, n)
    subset = sorted(rng.sample(mg.elements, k), key=mg.elements.index)
    return mg, subset


def corpus(count: int = 500, start: int = 0):
    return [random_case(seed) for seed in range(start, start + count)]


def star_graph(branches: int = 14) -> Metagraph:
    """Root 9999 fanning out to ``branches`` outputs, then a hop to 1000.

    Every branch has its own second-hop edge, and every other pair of
    branches also has a joint one.
    """
    names = ["9999", "1000"]
    edges = []
    outs = []
    for k in range(branches):
        out = [f"n{k}a", f"n{k}b"] if k % 2 else [f"n{k}"]
        names += out
        outs.append(out)
        edges.append((["9999"], out))
    for out in outs:
        edges.append((out, ["1000"]))
    for k in range(0, branches - 1, 2):
        edges.append(([outs[k][0], outs[k + 1][0]], ["1000"]))
    return Metagraph.build(names, edges)


def brute_force_minimal_metapaths(mg: Metagraph, source: int, target: int) -> set[tuple[int, ...]]:
    """Inclusion-minimal edge sets that fire from ``source`` and cover ``target``."""
    m = len(mg.edges)
    inv = [e.invertex for e in mg.edges]
    out = [e.outvertex for e in mg.edges]
    ins, outs = subset_unions(inv, out, use_numba=False)
    start = np.full(1 << m, source, dtype=np.uint64)
    fires = subset_grounded(inv, out, start, use_numba=False)
    need = target & ~source
    valid = [
        s
        for s in range(1, 1 << m)
        if fires[s] and is_subset(need, int(outs[s])) and is_subset(int(ins[s] & ~outs[s]), source)
    ]
    valid.sort(key=lambda s: bin(s).count("1"))
    minimal: list[int] = []
    for s in valid:
        if not any(is_subset(t, s) for t in minimal):
            minimal.append(s)
    return {tuple(bits(s)) for s in minimal}
