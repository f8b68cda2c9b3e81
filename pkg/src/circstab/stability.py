"""Stability verdicts and sufficient conditions for normality or stability."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Hashable, Iterable

import numpy as np

from .autgroup import (
    automorphism_group,
    circulant_automorphism_group,
    cover_automorphism_group,
)
from .circulant import CirculantGraph, ConnectionSet, element_order, is_connected
from .perm import Perm, PermGroup
from .products import DenseGraph, double_cover


@dataclass(frozen=True)
class StabilityVerdict:
    stable: bool
    aut_x_order: int
    aut_bx_order: int
    witness: Perm | None = None

    def __post_init__(self) -> None:
        if self.stable != (self.aut_bx_order == 2 * self.aut_x_order):
            raise ValueError("verdict inconsistent with the group orders")


def instability_witness(x: CirculantGraph, aut_bx: PermGroup) -> Perm | None:
    """First stabilizer generator of (0,0) in Aut BX that moves (0,1)."""
    for p in aut_bx.stabilizer(0).generators:
        if p(x.n) != x.n:
            return p
    return None


def is_stable(x: CirculantGraph, *, timeout: float | None = None) -> StabilityVerdict:
    """Compare |Aut BX| with 2 |Aut X|."""
    ax = circulant_automorphism_group(x, timeout=timeout)
    abx = cover_automorphism_group(x, timeout=timeout)
    stable = abx.order() == 2 * ax.order()
    witness = None if stable else instability_witness(x, abx)
    return StabilityVerdict(stable, ax.order(), abx.order(), witness)


def is_stable_via_stabilizer(x: CirculantGraph, *, timeout: float | None = None) -> bool:
    """Every automorphism of BX fixing (0,0) fixes (0,1).

    Computed with a separate search on BX with (0,0) coloured apart, so it
    shares no group data with :func:`is_stable`. The criterion assumes X
    connected; with m >= 2 components the layers of each component's cover
    swap independently, so |Aut BX| >= 2^m |Aut X| and X is unstable.
    """
    if not is_connected(x):
        return False
    bx = double_cover(x)
    colors = np.zeros(bx.n, dtype=np.int64)
    colors[0] = 1
    stab = automorphism_group(bx, colors=colors, timeout=timeout)
    return all(p(x.n) == x.n for p in stab.generators)


# sufficient conditions ------------------------------------------------------


def _add(a, b, group: tuple[int, ...]):
    if len(group) == 1:
        return (a + b) % group[0]
    return tuple((ai + bi) % m for ai, bi, m in zip(a, b, group))


def _is_zero(a) -> bool:
    return a == 0 if isinstance(a, int) else all(ai == 0 for ai in a)


def four_cycle_condition(group: int | tuple[int, ...], S: Iterable[Hashable]) -> bool:
    """s + t = u + v != 0 implies {s,t} = {u,v}, over all s,t,u,v in S.

    ``group`` is ``n`` for Z_n (elements are ints) or ``(n, 2)`` for
    Z_n x Z_2 (elements are pairs).
    """
    if isinstance(group, int):
        group = (group,)
    elems = list(S)
    pairs: dict[Hashable, set[frozenset]] = defaultdict(set)
    for s in elems:
        for t in elems:
            total = _add(s, t, group)
            if not _is_zero(total):
                pairs[total].add(frozenset((s, t)))
    return all(len(p) == 1 for p in pairs.values())


def cover_connection_set(x: CirculantGraph) -> list[tuple[int, int]]:
    return [(s, 1) for s in x.elements]


def exceptional_cycle_condition(x: CirculantGraph, c: int) -> bool:
    """Hypotheses forcing stability through exceptional cycles of length 2|c|.

    Requires ``c`` in S of odd order k; checks that 2c is no sum of two
    elements of S - {c}, and that every a in S of order 2k is such a sum.
    """
    n = x.n
    c %= n
    S = x.s.as_set
    if c not in S:
        raise ValueError(f"{c} is not in the connection set")
    k = element_order(c, n)
    if k % 2 == 0:
        raise ValueError(f"{c} has even order {k}")
    rest = [s for s in S if s != c]
    if any((s + t) % n == (2 * c) % n for s in rest for t in rest):
        return False
    for a in S:
        if element_order(a, n) == 2 * k:
            others = [s for s in S if s != a]
            if not any((s + t) % n == (2 * a) % n for s in others for t in others):
                return False
    return True


def s_prime(S: ConnectionSet) -> list[int]:
    """Elements s of S with 2t != 2s for every other t in S."""
    n = S.n
    return [s for s in S if all((2 * t - 2 * s) % n for t in S if t != s)]


def two_s_prime_graph(x: CirculantGraph) -> DenseGraph:
    """Cay(Z_n x Z_2, 2S' x {0}), which Aut BX always preserves."""
    n = x.n
    adj = np.zeros((2 * n, 2 * n), dtype=bool)
    idx = np.arange(n)
    for s in s_prime(x.s):
        t = (2 * s) % n
        if t == 0:
            continue
        for layer in (0, n):
            adj[idx + layer, (idx + t) % n + layer] = True
            adj[(idx + t) % n + layer, idx + layer] = True
    return DenseGraph(adj)


def s_prime_invariant(x: CirculantGraph, aut_bx: PermGroup | None = None) -> bool:
    """Every generator of Aut BX is an automorphism of the 2S' graph."""
    if aut_bx is None:
        aut_bx = cover_automorphism_group(x)
    adj = two_s_prime_graph(x).adj
    return all(np.array_equal(adj[np.ix_(p.images, p.images)], adj) for p in aut_bx.generators)
