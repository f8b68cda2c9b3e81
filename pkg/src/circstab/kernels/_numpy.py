"""Vectorised numpy kernels, used when numba is disabled or unavailable."""

from __future__ import annotations

import numpy as np

from ._common import MASK64, MASK_P, TRACE_Q

_POW_CACHE: dict[int, np.ndarray] = {}


def _powers(length: int) -> np.ndarray:
    pw = _POW_CACHE.get(length)
    if pw is None:
        base = np.full(length, MASK_P, dtype=np.uint64)
        base[0] = 1
        pw = np.cumprod(base, dtype=np.uint64)
        _POW_CACHE[length] = pw
    return pw


def _refine_from(nbr: np.ndarray, deg: np.ndarray, colors: np.ndarray):
    n = colors.shape[0]
    ncol = int(colors.max()) + 1 if n else 0
    trace = 0
    while True:
        ext = np.append(colors, n)
        nc = np.sort(ext[nbr], axis=1)
        keys = np.column_stack((colors, deg, nc)).astype(np.int64)
        rows, inverse, counts = np.unique(
            keys, axis=0, return_inverse=True, return_counts=True
        )
        colors = inverse.reshape(-1).astype(np.int64)
        newcount = rows.shape[0]
        seq = np.concatenate(
            (np.column_stack((rows + 1, counts + 1)).reshape(-1), [newcount + 1])
        ).astype(np.uint64)
        rh = int(np.sum(seq * _powers(seq.shape[0]), dtype=np.uint64))
        trace = (trace * TRACE_Q + rh) & MASK64
        if newcount == ncol:
            break
        ncol = newcount
    return colors, np.uint64(trace)


def refine(nbr, deg, colors):
    return _refine_from(nbr, deg, np.asarray(colors, dtype=np.int64))


def individualize_refine(nbr, deg, colors, v):
    c = colors[v]
    out = colors + ((colors > c) | (colors == c)).astype(np.int64)
    out[v] = c
    return _refine_from(nbr, deg, out)


def is_automorphism(nbr, deg, adj, perm):
    if not np.array_equal(deg[perm], deg):
        return False
    valid = nbr < perm.shape[0]
    rows = np.broadcast_to(perm[:, None], nbr.shape)[valid]
    cols = perm[nbr[valid]]
    return bool(adj[rows, cols].all())
