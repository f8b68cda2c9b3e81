"""Brute-force reference implementations used only by the tests.

Nothing here imports the search code; each function works from the raw
adjacency matrix or the connection set.
"""

from __future__ import annotations

import itertools
import math
from collections import deque

import networkx as nx
import numpy as np


def adjacency(n: int, S) -> np.ndarray:
    S = {s % n for s in S}
    return np.array([[(v - u) % n in S for v in range(n)] for u in range(n)], dtype=bool)


def cover_adjacency(n: int, S) -> np.ndarray:
    a = adjacency(n, S)
    out = np.zeros((2 * n, 2 * n), dtype=bool)
    out[:n, n:] = a
    out[n:, :n] = a
    return out


class TooMany(Exception):
    pass


def count_automorphisms(adj: np.ndarray, limit: int | None = None) -> int:
    """Count permutations preserving adjacency, by pruned backtracking.

    Raises ``TooMany`` once the count passes ``limit``.
    """
    n = adj.shape[0]
    deg = adj.sum(axis=1)
    img = [-1] * n
    used = [False] * n
    total = 0

    def ok(v: int, w: int) -> bool:
        if deg[v] != deg[w]:
            return False
        for u in range(v):
            if adj[u, v] != adj[img[u], w]:
                return False
        return True

    def rec(v: int) -> None:
        nonlocal total
        if v == n:
            total += 1
            if limit is not None and total > limit:
                raise TooMany
            return
        for w in range(n):
            if not used[w] and ok(v, w):
                img[v] = w
                used[w] = True
                rec(v + 1)
                used[w] = False
        img[v] = -1

    rec(0)
    return total


def count_automorphisms_allperms(adj: np.ndarray) -> int:
    """Literal count over all n! permutations (n <= 8)."""
    n = adj.shape[0]
    count = 0
    for p in itertools.permutations(range(n)):
        p = np.array(p)
        if np.array_equal(adj[np.ix_(p, p)], adj):
            count += 1
    return count


def stabilizer_moves(adj: np.ndarray, fix: int, watch: int, limit: int | None = None) -> tuple[int, int]:
    """(|stabilizer of fix|, how many of those move ``watch``) by backtracking."""
    n = adj.shape[0]
    nb = [set(np.flatnonzero(adj[v]).tolist()) for v in range(n)]
    order = [fix]
    seen = {fix}
    for v in order:
        for w in sorted(nb[v]):
            if w not in seen:
                seen.add(w)
                order.append(w)
    order += [v for v in range(n) if v not in seen]
    img: dict[int, int] = {}
    used: set[int] = set()
    counts = [0, 0]

    def rec(i: int) -> None:
        if i == n:
            counts[0] += 1
            counts[1] += img[watch] != watch
            if limit is not None and counts[0] > limit:
                raise TooMany
            return
        v = order[i]
        if i == 0:
            cands = [fix]
        else:
            placed = [u for u in nb[v] if u in img]
            cands = sorted(nb[img[placed[0]]]) if placed else range(n)
        for w in cands:
            if w in used:
                continue
            if all((img[u] in nb[w]) == (u in nb[v]) for u in img):
                img[v] = w
                used.add(w)
                rec(i + 1)
                del img[v]
                used.discard(w)

    rec(0)
    return counts[0], counts[1]


def is_connected(adj: np.ndarray) -> bool:
    n = adj.shape[0]
    if n == 0:
        return True
    seen = {0}
    q = deque([0])
    while q:
        v = q.popleft()
        for w in np.flatnonzero(adj[v]).tolist():
            if w not in seen:
                seen.add(w)
                q.append(w)
    return len(seen) == n


def is_bipartite(adj: np.ndarray) -> bool:
    return nx.is_bipartite(nx.from_numpy_array(adj.astype(int)))


def has_twins(adj: np.ndarray) -> bool:
    n = adj.shape[0]
    rows = {adj[v].tobytes() for v in range(n)}
    return len(rows) < n


def isomorphic(a: np.ndarray, b: np.ndarray) -> bool:
    return nx.is_isomorphic(nx.from_numpy_array(a.astype(int)), nx.from_numpy_array(b.astype(int)))


def factorial(n: int) -> int:
    return math.factorial(n)


def random_graph(rng, n: int, p: float) -> np.ndarray:
    upper = np.triu(rng.random((n, n)) < p, 1)
    return upper | upper.T
