import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metaproj import _kernels

edges_st = st.lists(
    st.tuples(st.integers(0, 255), st.integers(0, 255)), min_size=0, max_size=9
)


def _reference(inv, out):
    m = len(inv)
    rows = []
    for s in range(1 << m):
        ins = outs = 0
        for e in range(m):
            if s >> e & 1:
                ins |= inv[e]
                outs |= out[e]
        pure = ins & ~outs
        avail, remaining = pure, s
        progress = True
        while remaining and progress:
            progress = False
            for e in range(m):
                if remaining >> e & 1 and inv[e] & ~avail == 0:
                    avail |= out[e]
                    remaining &= ~(1 << e)
                    progress = True
        rows.append((ins, outs, pure, remaining == 0))
    return rows


@settings(max_examples=60, deadline=None)
@given(edges_st)
def test_numpy_backend_matches_reference(edges):
    inv = [a for a, _ in edges]
    out = [b for _, b in edges]
    ins, outs, pure, grounded = _kernels.subset_table(inv, out, use_numba=False)
    got = [(int(a), int(b), int(c), bool(d)) for a, b, c, d in zip(ins, outs, pure, grounded)]
    assert got == _reference(inv, out)


@pytest.mark.skipif(_kernels.numba is None, reason="numba not installed")
@settings(max_examples=60, deadline=None)
@given(edges_st)
def test_backends_agree(edges):
    inv = [a for a, _ in edges]
    out = [b for _, b in edges]
    a = _kernels.subset_table(inv, out, use_numba=False)
    b = _kernels.subset_table(inv, out, use_numba=True)
    for x, y in zip(a, b):
        assert np.array_equal(x, y)


def test_environment_flag_disables_numba(monkeypatch):
    monkeypatch.setenv(_kernels.DISABLE_ENV, "1")
    assert not _kernels.numba_enabled()
    monkeypatch.delenv(_kernels.DISABLE_ENV)
    assert _kernels.numba_enabled() == (_kernels.numba is not None)
