"""Instance generators: the H_n family and seeded random metagraphs."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import Metagraph, MetagraphError

__all__ = ["InvalidN", "InvalidParams", "HnInstance", "gen_hn", "gen_random", "hn_projection_set"]


class InvalidN(MetagraphError, ValueError):
    pass


class InvalidParams(MetagraphError, ValueError):
    pass


@dataclass(frozen=True)
class HnInstance:
    metagraph: Metagraph
    projection_set: tuple[str, ...]
    n: int


def hn_projection_set(n: int) -> tuple[str, ...]:
    return ("F0",) + tuple(f"A{i}" for i in range(n + 1)) + tuple(f"B{i}" for i in range(n + 1))


def gen_hn(n: int) -> HnInstance:
    """Chain ``n`` body fragments onto the tail edge ``({A0, B0}, {F0})``.

    Fragment ``i`` carries ``A_i`` to ``A_{i-1}`` through ``C_i`` and needs
    both ``A_i`` and ``B_i`` to produce ``B_{i-1}`` (via ``D_i`` and ``E_i``).
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidN(f"n must be a positive integer, got {n!r}")
    elements = ["F0", "A0", "B0"]
    edges = [(("A0", "B0"), ("F0",))]
    labels = ["e0"]
    for i in range(1, n + 1):
        a, b, c, d, e = (f"{s}{i}" for s in "ABCDE")
        a0, b0 = f"A{i - 1}", f"B{i - 1}"
        elements += [a, b, c, d, e]
        edges += [((a,), (c, d)), ((c,), (a0,)), ((b,), (e,)), ((d, e), (b0,))]
        labels += [f"e1_{i}", f"e2_{i}", f"e3_{i}", f"e4_{i}"]
    return HnInstance(Metagraph.build(elements, edges, labels), hn_projection_set(n), n)


def gen_random(
    num_elements: int,
    num_edges: int,
    max_vertex_size: int,
    seed: int,
    *,
    allow_empty: bool = False,
    max_tries: int = 1000,
) -> Metagraph:
    """Seeded random metagraph over elements ``x1..xN``.

    Vertex sizes are uniform in ``[1, max_vertex_size]`` (``[0, ...]`` with
    ``allow_empty``).  A repeated ``(invertex, outvertex)`` pair is redrawn.
    """
    if num_elements < 1 or num_edges < 0 or max_vertex_size < 1 or max_vertex_size > num_elements:
        raise InvalidParams(
            f"need num_elements >= 1, num_edges >= 0, 1 <= max_vertex_size <= num_elements "
            f"(got {num_elements}, {num_edges}, {max_vertex_size})"
        )
    rng = random.Random(seed)
    names = [f"x{i + 1}" for i in range(num_elements)]
    lo = 0 if allow_empty else 1
    seen: set[tuple[tuple[str, ...], tuple[str, ...]]] = set()
    edges = []
    for _ in range(num_edges):
        for _ in range(max_tries):
            inv = tuple(sorted(rng.sample(names, rng.randint(lo, max_vertex_size)), key=names.index))
            out = tuple(sorted(rng.sample(names, rng.randint(lo, max_vertex_size)), key=names.index))
            if (inv, out) not in seen:
                break
        else:
            raise InvalidParams("could not draw enough distinct edges")
        seen.add((inv, out))
        edges.append((inv, out))
    return Metagraph.build(names, edges)
