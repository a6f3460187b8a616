import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from helpers import WORKED_SUBSET, not_unique_graph, worked_example  # noqa: E402

from metaproj import (  # noqa: E402
    BudgetExceeded,
    Metagraph,
    Metapath,
    enumerate_dominant_metapaths_oracle,
    factorize_metapath,
    gen_hn,
    is_irreducible,
)
from metaproj.oracle import SubsetTable, admissible_factorizations  # noqa: E402


def _labels(mg, paths):
    return sorted((mg.labels_of(p.edge_ids), mg.names(p.source)) for p in paths)


def test_dominant_single_source():
    mg = worked_example()
    assert _labels(mg, enumerate_dominant_metapaths_oracle(mg, ["x1"], ["x6"])) == [(("e1", "e2"), ("x1",))]
    assert enumerate_dominant_metapaths_oracle(mg, ["x2"], ["x6"]) == []


def test_dominant_paths_into_x8():
    mg = worked_example()
    got = _labels(mg, enumerate_dominant_metapaths_oracle(mg, ["x1", "x2", "x6", "x7"], ["x8"]))
    assert got == [
        (("e1", "e2", "e3", "e4", "e5"), ("x1", "x2")),
        (("e1", "e2", "e5"), ("x1", "x7")),
        (("e5",), ("x6", "x7")),
    ]


def test_cycle_sources():
    # b and c feed each other, so the cycle has two possible starting points
    mg = Metagraph.build(["a", "b", "c", "t"], [(["b"], ["c"]), (["c"], ["b"]), (["b", "c"], ["t"])])
    table = SubsetTable(mg)
    assert [mg.names(v) for v in table.minimal_sources(0b011, mg.mask(["a", "b", "c"]))] == [("b",), ("c",)]
    assert table.minimal_sources(0b011, mg.mask("a")) == []
    got = _labels(mg, enumerate_dominant_metapaths_oracle(mg, ["a", "b", "c"], ["t"]))
    assert got == [(("e1", "e3"), ("b",)), (("e2", "e3"), ("c",))]


def test_budget_is_enforced():
    inst = gen_hn(4)
    with pytest.raises(BudgetExceeded):
        SubsetTable(inst.metagraph)
    SubsetTable(inst.metagraph, max_edges=17)


def test_irreducibility_examples():
    mg = worked_example()
    m5 = Metapath((4,), mg.mask(["x6", "x7"]), mg.mask("x8"))
    m3 = Metapath((0, 1, 2, 3, 4), mg.mask(["x1", "x2"]), mg.mask("x8"))
    m2 = Metapath((0, 2, 3), mg.mask(["x1", "x2"]), mg.mask("x7"))
    assert is_irreducible(mg, m5, WORKED_SUBSET)
    assert not is_irreducible(mg, m3, WORKED_SUBSET)
    assert is_irreducible(mg, m2, WORKED_SUBSET)
    zs = {mg.names(z) for z, _, _ in admissible_factorizations(mg, m3, WORKED_SUBSET)}
    assert ("x6", "x7") in zs


def test_reducible_when_tail_shares_a_source():
    # the path into x8 through x1 and x7 splits at {x6, x7} even though x7
    # comes straight from the source
    mg = worked_example()
    m4 = Metapath((0, 1, 4), mg.mask(["x1", "x7"]), mg.mask("x8"))
    assert not is_irreducible(mg, m4, WORKED_SUBSET)


def test_factorize_worked_example():
    mg = worked_example()
    m3 = Metapath((0, 1, 2, 3, 4), mg.mask(["x1", "x2"]), mg.mask("x8"))
    f = factorize_metapath(mg, m3, WORKED_SUBSET)
    assert sorted(mg.labels_of(x) for x in f.factors) == [("e1", "e2"), ("e1", "e3", "e4"), ("e5",)]
    covered = set().union(*f.factors)
    assert covered == set(m3.edge_ids)
    assert not f.non_unique
    assert mg.names(f.structure["z"]) == ("x6", "x7")


def test_factorize_single_edge():
    mg = worked_example()
    m5 = Metapath((4,), mg.mask(["x6", "x7"]), mg.mask("x8"))
    f = factorize_metapath(mg, m5, WORKED_SUBSET)
    assert f.factors == [(4,)] and not f.non_unique


def test_factorize_non_unique():
    mg = not_unique_graph()
    path = Metapath(tuple(range(5)), mg.mask(["G", "H"]), mg.mask("A"))
    f = factorize_metapath(mg, path, list("ABDEFGH"))
    assert f.non_unique
    assert mg.names(f.structure["z"]) == ("B", "F")
    assert [mg.names(z) for z in f.alternatives] == [("B", "F"), ("D", "E")]
    assert set().union(*f.factors) == set(range(5))
