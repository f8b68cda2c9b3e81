"""Circulant graphs Cay(Z_n, S) and their triviality predicates."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable


@dataclass(frozen=True)
class ZModN:
    """An element of the cyclic group Z_n, always stored reduced."""

    n: int
    value: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "value", self.value % self.n)

    @property
    def order(self) -> int:
        return element_order(self.value, self.n)

    def __add__(self, other: ZModN | int) -> ZModN:
        v = other.value if isinstance(other, ZModN) else other
        return ZModN(self.n, self.value + v)

    def __neg__(self) -> ZModN:
        return ZModN(self.n, -self.value)

    def __mul__(self, k: int) -> ZModN:
        return ZModN(self.n, self.value * k)

    __rmul__ = __mul__


def element_order(a: int, n: int) -> int:
    """Order of ``a`` in Z_n, that is ``n / gcd(n, a)``."""
    return n // math.gcd(n, a % n)


def units(n: int) -> list[int]:
    return [m for m in range(1, n) if math.gcd(m, n) == 1] if n > 1 else [0]


@dataclass(frozen=True)
class ConnectionSet:
    """Inverse-closed connection set, sorted ascending, without 0."""

    n: int
    elements: tuple[int, ...]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, s: object) -> bool:
        return isinstance(s, int) and (s % self.n) in self.as_set

    @cached_property
    def as_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def representatives(self) -> list[int]:
        """One element from each pair {s, n-s}: the smaller one."""
        return [s for s in self.elements if s <= self.n - s]


def normalize_connection_set(n: int, raw: Iterable[int]) -> ConnectionSet:
    if n < 1:
        raise ValueError(f"modulus must be >= 1, got {n}")
    out: set[int] = set()
    for s in raw:
        r = int(s) % n
        if r == 0:
            raise ValueError(f"connection set element {s} is 0 mod {n} (loop)")
        out.add(r)
        out.add((n - r) % n)
    return ConnectionSet(n, tuple(sorted(out)))


@dataclass(frozen=True)
class CirculantGraph:
    n: int
    s: ConnectionSet

    @classmethod
    def from_raw(cls, n: int, raw: Iterable[int]) -> CirculantGraph:
        return cls(n, normalize_connection_set(n, raw))

    def __post_init__(self) -> None:
        if self.s.n != self.n:
            raise ValueError("connection set modulus differs from graph order")

    @property
    def elements(self) -> tuple[int, ...]:
        return self.s.elements

    @property
    def valency(self) -> int:
        return len(self.s.elements)

    def has_edge(self, u: int, v: int) -> bool:
        return ((v - u) % self.n) in self.s.as_set

    def neighbors(self, v: int) -> list[int]:
        return sorted((v + s) % self.n for s in self.s.elements)

    def to_dense(self):
        from .products import DenseGraph

        return DenseGraph.from_circulant(self)

    def __str__(self) -> str:
        return format_circulant(self)


def format_circulant(x: CirculantGraph) -> str:
    return f"Z{x.n}:{{{','.join(map(str, x.elements))}}}"


_TEXT_RE = re.compile(r"^\s*Z(\d+)\s*:\s*\{([^}]*)\}\s*$")


def parse_set(text: str) -> list[int]:
    text = text.strip().strip("{}")
    if not text:
        return []
    return [int(tok) for tok in re.split(r"[,;\s]+", text) if tok]


def parse_circulant(text: str, n: int | None = None) -> CirculantGraph:
    """Parse ``"Z12:{2,3,6}"``, or ``"2,3,6"`` when ``n`` is given."""
    m = _TEXT_RE.match(text)
    if m:
        n_text = int(m.group(1))
        if n is not None and n != n_text:
            raise ValueError(f"order {n} conflicts with {text!r}")
        return CirculantGraph.from_raw(n_text, parse_set(m.group(2)))
    if n is None:
        raise ValueError(f"cannot infer the group order from {text!r}")
    return CirculantGraph.from_raw(n, parse_set(text))


def generated_subgroup_index(x: CirculantGraph) -> int:
    """gcd(S u {n}); the subgroup <S> is d*Z_n for this d."""
    return reduce(math.gcd, x.elements, x.n)


def is_connected(x: CirculantGraph) -> bool:
    return generated_subgroup_index(x) == 1


def is_bipartite(x: CirculantGraph) -> bool:
    """Proper 2-colouring of every component, found by BFS."""
    color = [-1] * x.n
    for root in range(x.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w in x.neighbors(v):
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def twin_translations(x: CirculantGraph) -> list[int]:
    """All h in Z_n with h + S = S (a subgroup, 0 included)."""
    S = x.s.as_set
    return [h for h in range(x.n) if all((h + s) % x.n in S for s in S)]


def is_twin_free(x: CirculantGraph) -> bool:
    return len(twin_translations(x)) == 1


@dataclass(frozen=True)
class TrivialityReport:
    connected: bool
    bipartite: bool
    twin_free: bool

    @property
    def nontrivial(self) -> bool:
        return self.connected and not self.bipartite and self.twin_free

    @property
    def label(self) -> str:
        if not self.connected:
            return "Disconnected"
        if self.bipartite:
            return "Bipartite"
        if not self.twin_free:
            return "HasTwins"
        return "Connected∧Nonbipartite∧TwinFree"


def triviality_class(x: CirculantGraph) -> TrivialityReport:
    return TrivialityReport(is_connected(x), is_bipartite(x), is_twin_free(x))


def twin_quotient(x: CirculantGraph) -> tuple[CirculantGraph, int] | None:
    """Decompose a connected circulant as ``Y wr K_m-bar``.

    Returns ``(Y, m)`` with Y on Z_{n/m}, or None when x is twin-free.
    """
    if not is_connected(x):
        raise ValueError("twin quotient is defined for connected graphs only")
    m = len(twin_translations(x))
    if m == 1:
        return None
    q = x.n // m
    # the twin subgroup is <q>, so Z_n/H is Z_q via reduction mod q
    return CirculantGraph.from_raw(q, {s % q for s in x.elements}), m
