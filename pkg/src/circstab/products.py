"""Dense graphs, the canonical double cover, and the products used as oracles.

Product vertex ``(x, y)`` with ``x`` in the first factor is stored at index
``x + y * |first factor|``; for the double cover this is ``v + i * n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from .circulant import CirculantGraph


@dataclass(frozen=True, eq=False)
class DenseGraph:
    adj: np.ndarray
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        adj = np.array(self.adj, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if adj.diagonal().any():
            raise ValueError("self-loops are not allowed")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        adj.setflags(write=False)
        object.__setattr__(self, "adj", adj)

    # constructors -------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> DenseGraph:
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            adj[u, v] = adj[v, u] = True
        return cls(adj, labels)

    @classmethod
    def from_circulant(cls, x: CirculantGraph) -> DenseGraph:
        n = x.n
        idx = np.arange(n)
        adj = np.zeros((n, n), dtype=bool)
        for s in x.elements:
            adj[idx, (idx + s) % n] = True
        return cls(adj, tuple(range(n)))

    @classmethod
    def complete(cls, n: int) -> DenseGraph:
        return cls(~np.eye(n, dtype=bool))

    @classmethod
    def empty(cls, n: int) -> DenseGraph:
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def cycle(cls, n: int) -> DenseGraph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> DenseGraph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete_bipartite(cls, a: int, b: int | None = None) -> DenseGraph:
        b = a if b is None else b
        return cls.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    # structure ----------------------------------------------------------

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    vertex_count = n

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1).astype(np.int64)

    @cached_property
    def neighbor_matrix(self) -> np.ndarray:
        """Neighbour lists padded with ``n``; the layout the kernels consume."""
        n = self.n
        width = int(self.degrees.max()) if n else 0
        nbr = np.full((n, width), n, dtype=np.int64)
        for v in range(n):
            row = np.flatnonzero(self.adj[v])
            nbr[v, : row.size] = row
        nbr.setflags(write=False)
        return nbr

    def neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self.adj[v]).tolist()

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adj))
        return list(zip(us.tolist(), vs.tolist()))

    @property
    def edge_count(self) -> int:
        return int(self.adj.sum()) // 2

    def components(self) -> list[list[int]]:
        seen = np.zeros(self.n, dtype=bool)
        comps = []
        for root in range(self.n):
            if seen[root]:
                continue
            seen[root] = True
            comp, stack = [], [root]
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in np.flatnonzero(self.adj[v] & ~seen):
                    seen[w] = True
                    stack.append(int(w))
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_bipartite(self) -> bool:
        color = np.full(self.n, -1)
        for root in range(self.n):
            if color[root] >= 0:
                continue
            color[root] = 0
            stack = [root]
            while stack:
                v = stack.pop()
                for w in np.flatnonzero(self.adj[v]):
                    if color[w] < 0:
                        color[w] = 1 - color[v]
                        stack.append(int(w))
                    elif color[w] == color[v]:
                        return False
        return True

    def relabel(self, perm: Iterable[int]) -> DenseGraph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        p = np.asarray(list(perm))
        inv = np.empty_like(p)
        inv[p] = np.arange(p.size)
        return DenseGraph(self.adj[np.ix_(inv, inv)])

    def to_edge_list(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DenseGraph) and np.array_equal(self.adj, other.adj)

    def __hash__(self) -> int:
        return hash(np.packbits(self.adj).tobytes())

    def __repr__(self) -> str:
        return f"DenseGraph(n={self.n}, edges={self.edge_count})"


K2 = DenseGraph.complete(2)


def double_cover(x: CirculantGraph) -> DenseGraph:
    """Canonical bipartite double cover: (v,0) ~ (w,1) iff v ~ w."""
    n = x.n
    base = DenseGraph.from_circulant(x).adj
    adj = np.zeros((2 * n, 2 * n), dtype=bool)
    adj[:n, n:] = base
    adj[n:, :n] = base
    labels = tuple((v, i) for i in range(2) for v in range(n))
    return DenseGraph(adj, labels)


def direct_product(a: DenseGraph, b: DenseGraph) -> DenseGraph:
    # (x1,y1) ~ (x2,y2) iff x1~x2 and y1~y2; index x + y*|a|
    return DenseGraph(np.kron(b.adj, a.adj))


def cartesian_product(a: DenseGraph, b: DenseGraph) -> DenseGraph:
    ia = np.eye(a.n, dtype=bool)
    ib = np.eye(b.n, dtype=bool)
    return DenseGraph(np.kron(ib, a.adj) | np.kron(b.adj, ia))


def wreath_product(a: DenseGraph, m: int) -> DenseGraph:
    """``a wr K_m-bar``: every vertex blown up into an independent m-set."""
    if m < 1:
        raise ValueError("wreath factor must be >= 1")
    return DenseGraph(np.kron(np.ones((m, m), dtype=bool), a.adj))


def cycle_wr_k2(k: int) -> CirculantGraph:
    """C_k wr K_2 as the circulant Cay(Z_2k, {+-1, k+-1, k}).

    The fibres are the cosets {v, v+k}; the element k supplies the edge
    inside each fibre.  Without it one gets C_k wr K_2-bar, which has twins.
    """
    if k < 3:
        raise ValueError("cycle length must be >= 3")
    return CirculantGraph.from_raw(2 * k, [1, k - 1, k, k + 1])
