"""Integer kernels with a numba path and a pure-numpy fallback.

Set ``HILB_PIERI_NUMBA=0`` to force the numpy implementations (also used
automatically when numba is not importable).  Both paths are always
importable under their own names so they can be benchmarked side by side.
"""
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and os.environ.get("HILB_PIERI_NUMBA", "1") != "0"

# path-weight bounds above this are refused rather than risk int64 wraparound
_BOUND = float(2**62)
MAX_SUBSET_LENGTH = 24


def _subset_count_py(m, lam, j):
    r = m.shape[0]
    count = 0
    cand = np.empty(r, dtype=np.int64)
    for mask in range(1 << r):
        bits = 0
        for p in range(r):
            if (mask >> p) & 1:
                bits += 1
        if bits != j:
            continue
        for p in range(r):
            cand[p] = lam[p] + ((mask >> p) & 1)
        srt = np.sort(cand)[::-1]
        ok = True
        for p in range(r):
            if srt[p] != m[p]:
                ok = False
                break
        if ok:
            count += 1
    return count


def _subset_count_np(m, lam, j):
    r = m.shape[0]
    masks = np.arange(1 << r, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(r, dtype=np.int64)) & 1
    bits = bits[bits.sum(axis=1) == j]
    cand = np.sort(lam[None, :] + bits, axis=1)[:, ::-1]
    return int(np.all(cand == m[None, :], axis=1).sum())


def _signed_paths_py(w):
    # nodes are in topological order with the root at 0; w[u, v] > 0 is an edge
    n = w.shape[0]
    g = np.zeros(n, dtype=np.int64)
    bound = np.zeros(n, dtype=np.float64)
    for v in range(1, n):
        acc = w[0, v]
        b = float(w[0, v])
        for u in range(1, v):
            if w[u, v] != 0:
                acc -= g[u] * w[u, v]
                b += bound[u] * w[u, v]
        g[v] = acc
        bound[v] = b
    return g, bound


def _signed_paths_np(w):
    n = w.shape[0]
    g = np.zeros(n, dtype=np.int64)
    bound = np.zeros(n, dtype=np.float64)
    wf = w.astype(np.float64)
    for v in range(1, n):
        g[v] = w[0, v] - g[1:v] @ w[1:v, v]
        bound[v] = wf[0, v] + bound[1:v] @ wf[1:v, v]
    return g, bound


if numba is not None:
    subset_count_numba = numba.njit(cache=False)(_subset_count_py)
    signed_paths_numba = numba.njit(cache=False)(_signed_paths_py)
else:  # pragma: no cover
    subset_count_numba = None
    signed_paths_numba = None

subset_count_numpy = _subset_count_np
signed_paths_numpy = _signed_paths_np


def count_subsets(m, lam, j):
    """Brute-force count of ``j``-subsets ``S`` with ``sort_desc(lam + 1_S) == m``."""
    m = np.asarray(m, dtype=np.int64)
    lam = np.asarray(lam, dtype=np.int64)
    if m.shape[0] > MAX_SUBSET_LENGTH:
        raise ValueError(f"subset enumeration refused for length {m.shape[0]}")
    if USE_NUMBA:
        return int(subset_count_numba(m, lam, j))
    return subset_count_numpy(m, lam, j)


def signed_path_sums(w):
    """Signed sums of weighted paths from node 0 to every node.

    A path with ``n`` edges contributes ``(-1)**(n+1)`` times the product of
    its weights.  Raises ``OverflowError`` if any sum could exceed int64.
    """
    w = np.ascontiguousarray(w, dtype=np.int64)
    if USE_NUMBA:
        g, bound = signed_paths_numba(w)
    else:
        g, bound = signed_paths_numpy(w)
    if bound.size and bound.max() > _BOUND:
        raise OverflowError("path weight sums exceed int64 range")
    return g
