"""Automorphism groups by individualization-refinement search.

The search fixes one base path (individualize the smallest vertex of the first
smallest non-singleton cell, refine, repeat until discrete) and then, level by
level from the bottom, determines the orbit of each base point in the
pointwise stabilizer of the earlier ones.  Candidates already in the orbit
generated by the automorphisms found so far are skipped; every other
candidate is decided by an exhaustive search for an automorphism mapping it
onto the base point.  The generators found form a strong generating set for
the search base, so the group order is the product of the orbit lengths.
"""

from __future__ import annotations

import time
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .kernels import get_backend
from .perm import Perm, PermGroup
from .products import DenseGraph


class SearchTimeout(RuntimeError):
    """The automorphism search exceeded its time budget."""


@dataclass(frozen=True)
class ColorPartition:
    """Ordered partition: ``colors[v]`` is the rank of the cell holding v."""

    colors: np.ndarray

    @classmethod
    def unit(cls, n: int) -> ColorPartition:
        return cls(np.zeros(n, dtype=np.int64))

    @classmethod
    def from_colors(cls, colors: Sequence[int]) -> ColorPartition:
        # rank the given labels so cells are numbered 0..k-1 in label order
        _, ranked = np.unique(np.asarray(colors), return_inverse=True)
        return cls(ranked.reshape(-1).astype(np.int64))

    @property
    def cell_count(self) -> int:
        return int(self.colors.max()) + 1 if self.colors.size else 0

    def cells(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.cell_count)]
        for v, c in enumerate(self.colors.tolist()):
            out[c].append(v)
        return out

    def is_discrete(self) -> bool:
        return self.cell_count == self.colors.size


def individualize(p: ColorPartition, v: int) -> ColorPartition:
    """Split ``v`` off its cell, placing it just before the rest of the cell."""
    c = p.colors[v]
    out = p.colors + (p.colors >= c).astype(np.int64)
    out[v] = c
    return ColorPartition(out)


def refine(g: DenseGraph, p: ColorPartition, backend: str | None = None) -> ColorPartition:
    """Coarsest equitable partition finer than ``p`` (deterministic ranks)."""
    k = get_backend(backend)
    colors, _ = k.refine(g.neighbor_matrix, g.degrees, p.colors)
    return ColorPartition(colors)


def is_equitable(g: DenseGraph, p: ColorPartition) -> bool:
    counts = g.adj.astype(np.int64) @ np.eye(p.cell_count, dtype=np.int64)[p.colors]
    for cell in p.cells():
        if not (counts[cell] == counts[cell[0]]).all():
            return False
    return True


def _target_cell(colors: np.ndarray) -> int:
    sizes = np.bincount(colors)
    best = -1
    for c, size in enumerate(sizes.tolist()):
        if size > 1 and (best < 0 or size < sizes[best]):
            best = c
    return best


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    searches: int = 0
    elapsed: float = 0.0


@dataclass
class _Search:
    g: DenseGraph
    kern: object
    deadline: float | None
    stats: SearchStats = field(default_factory=SearchStats)

    def __post_init__(self) -> None:
        self.nbr = self.g.neighbor_matrix
        self.deg = self.g.degrees
        self.adj = self.g.adj

    def _tick(self) -> None:
        self.stats.nodes += 1
        if self.deadline is not None and self.stats.nodes % 64 == 0:
            if time.monotonic() > self.deadline:
                raise SearchTimeout("automorphism search timed out")

    def base_path(self, colors0: np.ndarray) -> None:
        colors, trace = self.kern.refine(self.nbr, self.deg, colors0)
        self.path = [(colors, int(trace))]
        self.base: list[int] = []
        self.target: list[int] = []
        while True:
            colors = self.path[-1][0]
            cell = _target_cell(colors)
            if cell < 0:
                break
            b = int(np.flatnonzero(colors == cell)[0])
            self.base.append(b)
            self.target.append(cell)
            nc, tr = self.kern.individualize_refine(self.nbr, self.deg, colors, b)
            self.path.append((nc, int(tr)))

    def _leaf(self, right: np.ndarray) -> np.ndarray | None:
        self.stats.leaves += 1
        left = self.path[-1][0]
        inv_right = np.empty_like(right)
        inv_right[right] = np.arange(right.size)
        perm = inv_right[left]
        if self.kern.is_automorphism(self.nbr, self.deg, self.adj, perm):
            return perm
        return None

    def _dfs(self, level: int, colors: np.ndarray) -> np.ndarray | None:
        self._tick()
        if level == len(self.base):
            if np.bincount(colors).max() != 1:
                return None
            return self._leaf(colors)
        cell = self.target[level]
        want = self.path[level + 1][1]
        for r in np.flatnonzero(colors == cell).tolist():
            nc, tr = self.kern.individualize_refine(self.nbr, self.deg, colors, r)
            if int(tr) != want:
                continue
            found = self._dfs(level + 1, nc)
            if found is not None:
                return found
        return None

    def find(self, level: int, w: int) -> np.ndarray | None:
        """Automorphism fixing base[:level] and sending base[level] to w."""
        self.stats.searches += 1
        colors = self.path[level][0]
        nc, tr = self.kern.individualize_refine(self.nbr, self.deg, colors, w)
        if int(tr) != self.path[level + 1][1]:
            return None
        return self._dfs(level + 1, nc)


def _orbit(point: int, gens: list[np.ndarray]) -> set[int]:
    orb = {point}
    queue = [point]
    for x in queue:
        for g in gens:
            y = int(g[x])
            if y not in orb:
                orb.add(y)
                queue.append(y)
    return orb


def automorphism_group(
    g: DenseGraph,
    colors: Sequence[int] | None = None,
    known: Iterable[Perm | Sequence[int]] = (),
    *,
    timeout: float | None = None,
    backend: str | None = None,
    stats: SearchStats | None = None,
) -> PermGroup:
    """Full automorphism group of ``g`` (colour-preserving if ``colors``).

    ``known`` may list automorphisms already at hand (for a Cayley graph, the
    translations); they only prune the search and are verified first.
    """
    t0 = time.monotonic()
    kern = get_backend(backend)
    n = g.n
    init = ColorPartition.unit(n) if colors is None else ColorPartition.from_colors(colors)
    search = _Search(g, kern, None if timeout is None else t0 + timeout)
    if stats is not None:
        search.stats = stats
    search.base_path(init.colors)

    gens: list[np.ndarray] = []
    for p in known:
        arr = np.asarray(p.images if isinstance(p, Perm) else p, dtype=np.int64)
        if not kern.is_automorphism(search.nbr, search.deg, search.adj, arr):
            raise ValueError("a 'known' permutation is not an automorphism")
        if colors is not None and not np.array_equal(init.colors[arr], init.colors):
            raise ValueError("a 'known' permutation does not preserve the colouring")
        if not np.array_equal(arr, np.arange(n)):
            gens.append(arr)

    base = search.base
    for level in range(len(base) - 1, -1, -1):
        prefix = base[:level]
        level_gens = [h for h in gens if all(h[c] == c for c in prefix)]
        orb = _orbit(base[level], level_gens)
        cell = np.flatnonzero(search.path[level][0] == search.target[level]).tolist()
        for w in cell:
            if w in orb:
                continue
            perm = search.find(level, w)
            if perm is not None:
                gens.append(perm)
                level_gens.append(perm)
                orb = _orbit(base[level], level_gens)
    search.stats.elapsed = time.monotonic() - t0
    return PermGroup(n, gens, base=base, strong=True)


def find_isomorphism(a: DenseGraph, b: DenseGraph, backend: str | None = None) -> Perm | None:
    """An isomorphism a -> b as a vertex map, or None."""
    if a.n != b.n or a.edge_count != b.edge_count:
        return None
    if not np.array_equal(np.sort(a.degrees), np.sort(b.degrees)):
        return None
    kern = get_backend(backend)
    left = _Search(a, kern, None)
    left.base_path(np.zeros(a.n, dtype=np.int64))
    right = _Search(b, kern, None)
    colors, trace = kern.refine(b.neighbor_matrix, b.degrees, np.zeros(b.n, dtype=np.int64))
    if int(trace) != left.path[0][1]:
        return None

    def leaf(rc: np.ndarray) -> np.ndarray | None:
        lc = left.path[-1][0]
        inv = np.empty_like(rc)
        inv[rc] = np.arange(rc.size)
        perm = inv[lc]
        # perm maps a-vertices to b-vertices; check every a-edge lands on a b-edge
        us, vs = np.nonzero(a.adj)
        return perm if bool(b.adj[perm[us], perm[vs]].all()) else None

    def dfs(level: int, rc: np.ndarray) -> np.ndarray | None:
        if level == len(left.base):
            return leaf(rc) if np.bincount(rc).max() == 1 else None
        want = left.path[level + 1][1]
        for r in np.flatnonzero(rc == left.target[level]).tolist():
            nc, tr = kern.individualize_refine(right.nbr, right.deg, rc, r)
            if int(tr) == want:
                found = dfs(level + 1, nc)
                if found is not None:
                    return found
        return None

    found = dfs(0, colors)
    return None if found is None else Perm(found, check=False)


def are_isomorphic(a: DenseGraph, b: DenseGraph, backend: str | None = None) -> bool:
    return find_isomorphism(a, b, backend) is not None


# group-level utilities ----------------------------------------------------


def order(grp: PermGroup) -> int:
    return grp.order()


def stabilizer(grp: PermGroup, v: int) -> PermGroup:
    if not 0 <= v < grp.degree:
        raise ValueError("vertex out of range")
    return grp.stabilizer(v)


def orbit_of_vertex(grp: PermGroup, v: int) -> set[int]:
    return set(grp.orbit(v))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def edge_orbits(grp: PermGroup, g: DenseGraph) -> list[list[tuple[int, int]]]:
    """Partition of E(g) into orbits of ``grp`` (union-find over generators)."""
    edges = g.edges()
    index = {e: i for i, e in enumerate(edges)}
    uf = _UnionFind(len(edges))
    for p in grp.generators:
        img = p.images
        for i, (u, v) in enumerate(edges):
            a, b = int(img[u]), int(img[v])
            j = index.get((a, b) if a < b else (b, a))
            if j is None:
                raise ValueError("group does not act on the edges of g")
            uf.union(i, j)
    classes: dict[int, list[tuple[int, int]]] = {}
    for i, e in enumerate(edges):
        classes.setdefault(uf.find(i), []).append(e)
    return sorted(classes.values())


def is_arc_transitive(g: DenseGraph, grp: PermGroup | None = None) -> bool:
    if grp is None:
        grp = automorphism_group(g)
    us, vs = np.nonzero(g.adj)
    if us.size == 0:
        return True
    start = (int(us[0]), int(vs[0]))
    seen = {start}
    queue = [start]
    gens = [p.images for p in grp.generators]
    for u, v in queue:
        for h in gens:
            arc = (int(h[u]), int(h[v]))
            if arc not in seen:
                seen.add(arc)
                queue.append(arc)
    return len(seen) == us.size


def minimal_block(grp: PermGroup, seed: tuple[int, int]) -> list[int]:
    """Smallest block of imprimitivity containing both seed points."""
    a, b = seed
    if b not in grp.orbit(a):
        raise ValueError("group is not transitive on the orbit containing the seed")
    uf = _UnionFind(grp.degree)
    gens = [p.images for p in grp.generators]
    uf.union(a, b)
    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        for h in gens:
            u, v = uf.find(int(h[x])), uf.find(int(h[y]))
            if u != v:
                uf.union(u, v)
                queue.append((u, v))
    root = uf.find(a)
    return [v for v in range(grp.degree) if uf.find(v) == root]


def _cyclic_add(structure: tuple[int, ...]):
    n = structure[0]
    if len(structure) == 1:
        idx = np.arange(n)
        return (idx[:, None] + idx[None, :]) % n
    if structure[1:] != (2,):
        raise ValueError("structure must be (n,) or (n, 2)")
    idx = np.arange(2 * n)
    v, i = idx % n, idx // n
    return (v[:, None] + v[None, :]) % n + ((i[:, None] + i[None, :]) % 2) * n


def is_group_automorphism(p: Perm, structure: int | tuple[int, ...]) -> bool:
    """Whether ``p`` is additive on Z_n (or on Z_n x Z_2, index v + i*n)."""
    if isinstance(structure, int):
        structure = (structure,)
    if p(0) != 0:
        raise ValueError("permutation does not fix the identity element")
    add = _cyclic_add(tuple(structure))
    if add.shape[0] != p.degree:
        raise ValueError("permutation degree does not match the group")
    img = p.images
    return bool(np.array_equal(img[add], add[np.ix_(img, img)]))


# circulant graphs and their double covers ---------------------------------


def circulant_symmetries(n: int) -> list[np.ndarray]:
    """Translation by 1 and negation: automorphisms of every Cay(Z_n, S)."""
    idx = np.arange(n)
    return [(idx + 1) % n, (-idx) % n]


def cover_symmetries(n: int) -> list[np.ndarray]:
    """Translations by (1,0), (0,1) and negation on Z_n x Z_2 (index v + i*n)."""
    idx = np.arange(2 * n)
    v, i = idx % n, idx // n
    return [(v + 1) % n + i * n, v + (1 - i) * n, (-v) % n + i * n]


@lru_cache(maxsize=512)
def _circulant_group(n: int, elements: tuple[int, ...], cover: bool, timeout, backend) -> PermGroup:
    from .circulant import CirculantGraph, ConnectionSet
    from .products import double_cover

    x = CirculantGraph(n, ConnectionSet(n, elements))
    if cover:
        return automorphism_group(double_cover(x), known=cover_symmetries(n), timeout=timeout, backend=backend)
    return automorphism_group(x.to_dense(), known=circulant_symmetries(n), timeout=timeout, backend=backend)


def circulant_automorphism_group(x, *, timeout: float | None = None, backend: str | None = None) -> PermGroup:
    """Aut(Cay(Z_n, S)), memoised per connection set."""
    return _circulant_group(x.n, x.elements, False, timeout, backend)


def cover_automorphism_group(x, *, timeout: float | None = None, backend: str | None = None) -> PermGroup:
    """Aut(BX) for X = Cay(Z_n, S), vertex (v, i) at index v + i*n."""
    return _circulant_group(x.n, x.elements, True, timeout, backend)


def is_normal_cayley(x, cover: bool = False, *, timeout: float | None = None) -> bool:
    """Whether every automorphism fixing the identity vertex is additive.

    With ``cover=True`` the Cayley graph tested is BX on Z_n x Z_2.
    """
    if cover:
        grp = cover_automorphism_group(x, timeout=timeout)
        structure: tuple[int, ...] = (x.n, 2)
    else:
        grp = circulant_automorphism_group(x, timeout=timeout)
        structure = (x.n,)
    stab = grp.stabilizer(0)
    return all(is_group_automorphism(p, structure) for p in stab.generators)
