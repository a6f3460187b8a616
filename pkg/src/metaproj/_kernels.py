"""Power-set kernels behind the brute-force oracles.

Every subset ``S`` of up to ~20 edges is addressed by its bitmask index
``s in range(2**m)``.  For each one we tabulate the union of invertices, the
union of outvertices and whether ``S`` can be fired from its own pure inputs.

Two interchangeable backends exist: a numba ``@njit`` loop and a vectorized
numpy version.  Set ``METAPROJ_DISABLE_NUMBA=1`` to force the numpy path (it
is also used automatically when numba cannot be imported).
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional accelerator
    numba = None

DISABLE_ENV = "METAPROJ_DISABLE_NUMBA"


def numba_enabled() -> bool:
    return numba is not None and os.environ.get(DISABLE_ENV, "") not in ("1", "true", "yes")


# -- numpy backend -----------------------------------------------------------


def _unions_numpy(inv: np.ndarray, out: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    m = len(inv)
    ins = np.zeros(1 << m, dtype=np.uint64)
    outs = np.zeros(1 << m, dtype=np.uint64)
    for e in range(m):
        lo, hi = 1 << e, 1 << (e + 1)
        ins[lo:hi] = ins[:lo] | inv[e]
        outs[lo:hi] = outs[:lo] | out[e]
    return ins, outs


def _grounded_numpy(inv: np.ndarray, out: np.ndarray, start: np.ndarray) -> np.ndarray:
    m = len(inv)
    n = 1 << m
    idx = np.arange(n, dtype=np.uint64)
    avail = start.copy()
    fired = np.zeros(n, dtype=np.uint64)
    member = [((idx >> np.uint64(e)) & np.uint64(1)).astype(bool) for e in range(m)]
    zero = np.uint64(0)
    for _ in range(m):
        changed = False
        for e in range(m):
            bit = np.uint64(1 << e)
            ready = member[e] & ((fired & bit) == zero) & ((inv[e] & ~avail) == zero)
            if ready.any():
                changed = True
                avail[ready] |= out[e]
                fired[ready] |= bit
        if not changed:
            break
    return fired == idx


# -- numba backend -----------------------------------------------------------

if numba is not None:

    @numba.njit(cache=True)
    def _unions_numba(inv, out):  # pragma: no cover - compiled
        m = inv.shape[0]
        n = 1 << m
        ins = np.zeros(n, dtype=np.uint64)
        outs = np.zeros(n, dtype=np.uint64)
        for e in range(m):
            lo = 1 << e
            for s in range(lo):
                ins[lo + s] = ins[s] | inv[e]
                outs[lo + s] = outs[s] | out[e]
        return ins, outs

    @numba.njit(cache=True)
    def _grounded_numba(inv, out, start):  # pragma: no cover - compiled
        m = inv.shape[0]
        n = 1 << m
        res = np.zeros(n, dtype=np.bool_)
        for s in range(n):
            avail = start[s]
            remaining = s
            progress = True
            while remaining != 0 and progress:
                progress = False
                for e in range(m):
                    if (remaining >> e) & 1 and (inv[e] & ~avail) == 0:
                        avail |= out[e]
                        remaining &= ~(1 << e)
                        progress = True
            res[s] = remaining == 0
        return res


# -- public entry points -----------------------------------------------------


def _as_u64(values) -> np.ndarray:
    return np.asarray([int(v) for v in values], dtype=np.uint64)


def subset_unions(inv, out, use_numba: bool | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Per-subset union of invertices and outvertices."""
    inv, out = _as_u64(inv), _as_u64(out)
    if use_numba is None:
        use_numba = numba_enabled()
    if use_numba:
        return _unions_numba(inv, out)
    return _unions_numpy(inv, out)


def subset_grounded(inv, out, start: np.ndarray, use_numba: bool | None = None) -> np.ndarray:
    """``res[s]`` is True when every edge of subset ``s`` fires from ``start[s]``."""
    inv, out = _as_u64(inv), _as_u64(out)
    start = np.ascontiguousarray(start, dtype=np.uint64)
    if use_numba is None:
        use_numba = numba_enabled()
    if use_numba:
        return _grounded_numba(inv, out, start)
    return _grounded_numpy(inv, out, start)


def subset_table(inv, out, use_numba: bool | None = None):
    """Return ``(ins, outs, pure, grounded_from_pure)`` over all edge subsets."""
    ins, outs = subset_unions(inv, out, use_numba)
    pure = ins & ~outs
    grounded = subset_grounded(inv, out, pure, use_numba)
    return ins, outs, pure, grounded
