"""Compiled refinement kernels.

The functions here mirror :mod:`circstab.kernels._numpy` exactly: the same
colourings and the same trace values come out of both, so search trees are
identical whichever backend is active.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from ._common import MASK_P, TRACE_Q


@njit(cache=True)
def _row_less(keys, a, b):
    for j in range(keys.shape[1]):
        x = keys[a, j]
        y = keys[b, j]
        if x < y:
            return True
        if x > y:
            return False
    return False


@njit(cache=True)
def _row_equal(keys, a, b):
    for j in range(keys.shape[1]):
        if keys[a, j] != keys[b, j]:
            return False
    return True


@njit(cache=True)
def _sort_rows(keys):
    # stable bottom-up merge sort of row indices
    n = keys.shape[0]
    order = np.arange(n)
    buf = np.empty(n, np.int64)
    width = 1
    while width < n:
        lo = 0
        while lo < n:
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i = lo
            j = mid
            k = lo
            while i < mid and j < hi:
                if _row_less(keys, order[j], order[i]):
                    buf[k] = order[j]
                    j += 1
                else:
                    buf[k] = order[i]
                    i += 1
                k += 1
            while i < mid:
                buf[k] = order[i]
                i += 1
                k += 1
            while j < hi:
                buf[k] = order[j]
                j += 1
                k += 1
            lo += 2 * width
        order, buf = buf, order
        width *= 2
    return order


@njit(cache=True)
def _refine_inplace(nbr, deg, colors):
    n = colors.shape[0]
    maxdeg = nbr.shape[1]
    width = maxdeg + 2
    keys = np.empty((n, width), np.int64)
    ncol = 0
    for v in range(n):
        if colors[v] + 1 > ncol:
            ncol = colors[v] + 1
    trace = np.uint64(0)
    while True:
        for v in range(n):
            keys[v, 0] = colors[v]
            d = deg[v]
            keys[v, 1] = d
            for t in range(d):
                c = colors[nbr[v, t]]
                # insertion into sorted prefix
                p = 2 + t
                while p > 2 and keys[v, p - 1] > c:
                    keys[v, p] = keys[v, p - 1]
                    p -= 1
                keys[v, p] = c
            for t in range(d, maxdeg):
                keys[v, 2 + t] = n
        order = _sort_rows(keys)
        rank = 0
        colors[order[0]] = 0
        # round hash over (distinct row, multiplicity) in sorted order
        rh = np.uint64(0)
        pw = np.uint64(1)
        mult = 1
        for idx in range(1, n + 1):
            if idx < n and _row_equal(keys, order[idx - 1], order[idx]):
                colors[order[idx]] = rank
                mult += 1
                continue
            prev = order[idx - 1]
            for j in range(width):
                rh += np.uint64(keys[prev, j] + 1) * pw
                pw *= np.uint64(MASK_P)
            rh += np.uint64(mult + 1) * pw
            pw *= np.uint64(MASK_P)
            if idx < n:
                rank += 1
                colors[order[idx]] = rank
                mult = 1
        newcount = rank + 1
        rh += np.uint64(newcount + 1) * pw
        trace = trace * np.uint64(TRACE_Q) + rh
        if newcount == ncol:
            break
        ncol = newcount
    return trace


@njit(cache=True)
def refine(nbr, deg, colors):
    out = colors.copy()
    trace = _refine_inplace(nbr, deg, out)
    return out, trace


@njit(cache=True)
def individualize_refine(nbr, deg, colors, v):
    c = colors[v]
    out = colors.copy()
    for u in range(out.shape[0]):
        if out[u] > c or (out[u] == c and u != v):
            out[u] += 1
    trace = _refine_inplace(nbr, deg, out)
    return out, trace


@njit(cache=True)
def is_automorphism(nbr, deg, adj, perm):
    n = perm.shape[0]
    for v in range(n):
        pv = perm[v]
        if deg[pv] != deg[v]:
            return False
        for t in range(deg[v]):
            if not adj[pv, perm[nbr[v, t]]]:
                return False
    return True
