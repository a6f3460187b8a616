import pytest

from metaproj import InvalidN, InvalidParams, gen_hn, gen_random, serialize_metagraph


@pytest.mark.parametrize("n", [1, 2, 3, 7])
def test_hn_edge_count(n):
    inst = gen_hn(n)
    assert len(inst.metagraph.edges) == 4 * n + 1
    assert inst.n == n
    assert len(inst.projection_set) == 2 * n + 3


def test_hn_fragment_edges():
    mg = gen_hn(2).metagraph
    pairs = dict(zip(mg.edge_labels, mg.edge_pairs()))
    assert pairs["e0"] == (("A0", "B0"), ("F0",))
    assert pairs["e1_2"] == (("A2",), ("C2", "D2"))
    assert pairs["e2_2"] == (("C2",), ("A1",))
    assert pairs["e3_2"] == (("B2",), ("E2",))
    assert pairs["e4_2"] == (("D2", "E2"), ("B1",))


def test_h1_matches_the_small_example_up_to_renaming():
    mg = gen_hn(1).metagraph
    shapes = sorted((len(a), len(b)) for a, b in mg.edge_pairs())
    assert shapes == [(1, 1), (1, 1), (1, 2), (2, 1), (2, 1)]


@pytest.mark.parametrize("bad", [0, -1, 1.5, True])
def test_hn_rejects_bad_n(bad):
    with pytest.raises(InvalidN):
        gen_hn(bad)


def test_random_is_seeded():
    a = gen_random(8, 6, 3, 42)
    assert serialize_metagraph(a) == serialize_metagraph(gen_random(8, 6, 3, 42))
    assert serialize_metagraph(a) != serialize_metagraph(gen_random(8, 6, 3, 43))


def test_random_shapes():
    mg = gen_random(8, 30, 3, 1)
    assert len(mg.edges) == 30
    assert len(set(mg.edge_pairs())) == 30
    for a, b in mg.edge_pairs():
        assert 1 <= len(a) <= 3 and 1 <= len(b) <= 3


def test_random_edgeless_and_empty_vertices():
    assert gen_random(5, 0, 2, 0).edges == ()
    mg = gen_random(3, 40, 2, 0, allow_empty=True)
    assert any(e.invertex == 0 or e.outvertex == 0 for e in mg.edges)


@pytest.mark.parametrize("args", [(0, 1, 1), (3, 1, 4), (3, -1, 1), (3, 1, 0)])
def test_random_rejects_bad_params(args):
    with pytest.raises(InvalidParams):
        gen_random(*args, seed=0)


def test_random_gives_up_when_edges_run_out():
    with pytest.raises(InvalidParams):
        gen_random(1, 2, 1, 0)
