from hypothesis import given, settings
from hypothesis import strategies as st

from metaproj import SetTrie, SetTrieMultiMap
from metaproj.core import is_subset

keys_st = st.lists(st.integers(min_value=0, max_value=(1 << 10) - 1), max_size=30)
query_st = st.integers(min_value=0, max_value=(1 << 10) - 1)


def test_basic_membership():
    t = SetTrie([{1, 3}, 0b1, [2]])
    assert {1, 3} in t and 0b1 in t and 0b100 in t
    assert 0b11 not in t
    assert len(t) == 3
    t.insert(0b1)
    assert len(t) == 3


def test_results_are_lexicographic():
    t = SetTrie([0b110, 0b001, 0b011, 0b101])
    assert t.keys() == [0b001, 0b011, 0b101, 0b110]
    assert t.subsets_of(0b111) == [0b001, 0b011, 0b101, 0b110]


def test_empty_key():
    t = SetTrie([0])
    assert t.subsets_of(0b101) == [0]
    assert t.exists_subset(0)
    assert not t.exists_proper_subset(0)
    assert t.exists_proper_subset(0b1)


@settings(max_examples=300)
@given(keys_st, query_st)
def test_queries_match_linear_scan(keys, q):
    t = SetTrie(keys)
    ks = set(keys)
    assert sorted(t.subsets_of(q)) == sorted(k for k in ks if is_subset(k, q))
    assert sorted(t.supersets_of(q)) == sorted(k for k in ks if is_subset(q, k))
    assert t.exists_subset(q) == any(is_subset(k, q) for k in ks)
    assert t.exists_proper_subset(q) == any(is_subset(k, q) and k != q for k in ks)


@settings(max_examples=200)
@given(st.lists(st.tuples(query_st, st.integers()), max_size=25), query_st)
def test_multimap_collects_values_of_subsets(items, q):
    m = SetTrieMultiMap()
    for k, v in items:
        m.assign(k, v)
    expected = sorted(v for k, v in items if is_subset(k, q))
    assert sorted(m.values_for_subsets(q)) == expected
    for k, _ in items:
        assert sorted(m.get(k)) == sorted(v for kk, v in items if kk == k)
    assert m.get(1 << 40) == []
