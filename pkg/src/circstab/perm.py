"""Permutations and permutation groups with a stabilizer chain.

Composition convention: ``(p * q)(x) == p(q(x))``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class Perm:
    """A bijection of ``range(degree)``, stored as an image array."""

    __slots__ = ("images", "_key")

    def __init__(self, images: Iterable[int], check: bool = True):
        arr = np.array(images, dtype=np.int64).reshape(-1)
        if check:
            seen = np.zeros(arr.size, dtype=bool)
            if arr.size and (arr.min() < 0 or arr.max() >= arr.size):
                raise ValueError("images out of range")
            seen[arr] = True
            if not seen.all():
                raise ValueError("not a bijection")
        arr.setflags(write=False)
        self.images = arr
        self._key = None

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return cls(np.arange(degree), check=False)

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Perm:
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return self.images.size

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def __mul__(self, other: Perm) -> Perm:
        return Perm(self.images[other.images], check=False)

    def inverse(self) -> Perm:
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.images.size)
        return Perm(inv, check=False)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.images.size)))

    def support(self) -> list[int]:
        return np.flatnonzero(self.images != np.arange(self.images.size)).tolist()

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = int(self.images[i])
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = int(self.images[j])
            out.append(tuple(cyc))
        return out

    def cycle_notation(self, labels: Sequence | None = None) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        show = (lambda v: str(labels[v])) if labels is not None else str
        return "".join("(" + " ".join(show(v) for v in c) + ")" for c in cyc)

    def _bytes(self) -> bytes:
        if self._key is None:
            self._key = self.images.tobytes()
        return self._key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Perm) and self._bytes() == other._bytes()

    def __hash__(self) -> int:
        return hash(self._bytes())

    def __repr__(self) -> str:
        return f"Perm({self.cycle_notation()})"


@dataclass
class _Level:
    point: int
    gens: list[np.ndarray]
    # orbit point -> coset representative u with u[point] == orbit point
    reps: dict[int, np.ndarray]


def _orbit_reps(point: int, gens: list[np.ndarray], degree: int) -> dict[int, np.ndarray]:
    reps = {point: np.arange(degree)}
    queue = [point]
    for x in queue:
        u = reps[x]
        for g in gens:
            y = int(g[x])
            if y not in reps:
                reps[y] = g[u]
                queue.append(y)
    return reps


def _inverse(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(a.size)
    return inv


class PermGroup:
    """Permutation group with a base and strong generating set.

    Built either from an explicit base/strong generating set (as produced by
    the automorphism search) or from bare generators via Schreier-Sims, in
    which case the base is drawn from ``0, 1, 2, ...``.
    """

    def __init__(
        self,
        degree: int,
        generators: Iterable[Perm | Sequence[int]] = (),
        *,
        base: Sequence[int] | None = None,
        strong: bool = False,
        order_hint: int | None = None,
        seed: int = 0,
    ):
        self.degree = degree
        gens = []
        for g in generators:
            arr = g.images if isinstance(g, Perm) else np.asarray(g, dtype=np.int64)
            if arr.size != degree:
                raise ValueError("generator degree mismatch")
            gens.append(np.array(arr, dtype=np.int64))
        self._gens = [g for g in gens if not np.array_equal(g, np.arange(degree))]
        self._levels: list[_Level] = []
        if strong:
            if base is None:
                raise ValueError("a strong generating set needs its base")
            self._install_strong(list(base))
        elif order_hint is not None:
            self._random_schreier_sims(list(base or []), order_hint, seed)
        else:
            self._schreier_sims(list(base or []))

    # construction -------------------------------------------------------

    def _install_strong(self, base: list[int]) -> None:
        for i, b in enumerate(base):
            lv_gens = [g for g in self._gens if all(g[c] == c for c in base[:i])]
            self._levels.append(_Level(b, lv_gens, _orbit_reps(b, lv_gens, self.degree)))
        rest = [g for g in self._gens if all(g[c] == c for c in base)]
        if rest:
            raise ValueError("strong generating set does not fix the base")

    def _sift(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        for i in range(start, len(self._levels)):
            lv = self._levels[i]
            y = int(g[lv.point])
            u = lv.reps.get(y)
            if u is None:
                return g, i
            g = _inverse(u)[g]
        return g, len(self._levels)

    def _next_base_point(self, g: np.ndarray, preferred: list[int]) -> int:
        used = {lv.point for lv in self._levels}
        for p in preferred:
            if p not in used and g[p] != p:
                return p
        moved = np.flatnonzero(g != np.arange(self.degree))
        for p in moved.tolist():
            if p not in used:
                return p
        raise AssertionError("non-identity residue fixes every base point")

    def _add_strong(self, g: np.ndarray, level: int, preferred: list[int]) -> None:
        if level == len(self._levels):
            p = self._next_base_point(g, preferred)
            self._levels.append(_Level(p, [], {}))
        for j in range(level + 1):
            self._levels[j].gens.append(g)
        for j in range(level, -1, -1):
            lv = self._levels[j]
            lv.reps = _orbit_reps(lv.point, lv.gens, self.degree)

    def _schreier_sims(self, preferred: list[int]) -> None:
        preferred = preferred + [p for p in range(self.degree) if p not in preferred]
        for g in self._gens:
            if not g.tobytes() == np.arange(self.degree).tobytes():
                r, lvl = self._sift(g)
                if not np.array_equal(r, np.arange(self.degree)):
                    self._add_strong(r, lvl, preferred)
        identity = np.arange(self.degree)
        i = len(self._levels) - 1
        while i >= 0:
            lv = self._levels[i]
            restart = False
            for x, u in list(lv.reps.items()):
                for s in lv.gens:
                    y = int(s[x])
                    sch = _inverse(lv.reps[y])[s[u]]
                    r, lvl = self._sift(sch, i + 1)
                    if not np.array_equal(r, identity):
                        self._add_strong(r, lvl, preferred)
                        i = lvl
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    def _random_schreier_sims(self, preferred: list[int], target: int, seed: int) -> None:
        preferred = preferred + [p for p in range(self.degree) if p not in preferred]
        identity = np.arange(self.degree)
        for g in self._gens:
            r, lvl = self._sift(g)
            if not np.array_equal(r, identity):
                self._add_strong(r, lvl, preferred)
        rng = random.Random(seed)
        # product-replacement style random walk over the generators
        state = [g.copy() for g in self._gens] or [identity.copy()]
        while len(state) < 10:
            state.append(state[len(state) % max(1, len(self._gens))].copy())
        acc = identity.copy()
        stalls = 0
        while self.order() < target:
            i, j = rng.sample(range(len(state)), 2) if len(state) > 1 else (0, 0)
            state[i] = state[i][state[j]] if rng.random() < 0.5 else state[j][state[i]]
            acc = acc[state[i]]
            r, lvl = self._sift(acc)
            if not np.array_equal(r, identity):
                self._add_strong(r, lvl, preferred)
                stalls = 0
            else:
                stalls += 1
                if stalls > 2000:
                    raise RuntimeError("random Schreier-Sims did not reach the order hint")
        if self.order() != target:
            raise ValueError("order hint is smaller than the generated group")

    # queries ------------------------------------------------------------

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self._levels]

    @property
    def generators(self) -> list[Perm]:
        return [Perm(g, check=False) for g in self._gens]

    def transversal_sizes(self) -> list[int]:
        return [len(lv.reps) for lv in self._levels]

    def order(self) -> int:
        return math.prod(len(lv.reps) for lv in self._levels)

    def __contains__(self, p: Perm) -> bool:
        if p.degree != self.degree:
            return False
        r, _ = self._sift(p.images)
        return bool(np.array_equal(r, np.arange(self.degree)))

    def strong_generators(self, level: int) -> list[Perm]:
        """Generators of the pointwise stabilizer of ``base[:level]``."""
        if level >= len(self._levels):
            return []
        return [Perm(g, check=False) for g in self._levels[level].gens]

    def orbit(self, v: int) -> list[int]:
        return sorted(_orbit_reps(v, self._gens, self.degree))

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for v in range(self.degree):
            if v not in seen:
                orb = self.orbit(v)
                seen.update(orb)
                out.append(orb)
        return out

    def random_element(self, rng: random.Random) -> Perm:
        g = np.arange(self.degree)
        for lv in reversed(self._levels):
            reps = list(lv.reps.values())
            g = reps[rng.randrange(len(reps))][g]
        return Perm(g, check=False)

    def stabilizer(self, v: int) -> PermGroup:
        """Point stabilizer of ``v`` with its own chain."""
        if self._levels and self._levels[0].point == v:
            return PermGroup(
                self.degree,
                self._levels[1].gens if len(self._levels) > 1 else [],
                base=self.base[1:],
                strong=True,
            )
        orb = _orbit_reps(v, self._gens, self.degree)
        target = self.order() // len(orb)
        schreier = []
        seen = set()
        for x, u in orb.items():
            for s in self._gens:
                h = _inverse(orb[int(s[x])])[s[u]]
                key = h.tobytes()
                if key not in seen and not np.array_equal(h, np.arange(self.degree)):
                    seen.add(key)
                    schreier.append(h)
        return PermGroup(self.degree, schreier, base=[b for b in self.base if b != v], order_hint=target)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order()}, gens={len(self._gens)})"


def enumerate_elements(grp: PermGroup) -> list[Perm]:
    """All elements, by closure under the generators; small groups only."""
    ident = np.arange(grp.degree)
    seen = {ident.tobytes(): ident}
    queue = [ident]
    gens = [g.images for g in grp.generators]
    for a in queue:
        for g in gens:
            b = g[a]
            k = b.tobytes()
            if k not in seen:
                seen[k] = b
                queue.append(b)
    return [Perm(a, check=False) for a in seen.values()]
