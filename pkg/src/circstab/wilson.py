"""Wilson's four instability conditions (C.1, corrected C.2 and C.3, C.4)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Any

from .circulant import CirculantGraph, units


@dataclass(frozen=True)
class WilsonWitness:
    kind: str  # "C1" | "C2" | "C3" | "C4"
    h: int | None = None
    H: tuple[int, ...] | None = None
    R: tuple[int, ...] | None = None
    d: int | None = None
    m: int | None = None
    vacuous: bool = False

    def validate(self, x: CirculantGraph) -> bool:
        return _CHECKS[self.kind](x, self)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"type": self.kind}
        if self.kind in ("C1", "C2"):
            out["h"] = self.h
        if self.kind == "C1" and self.vacuous:
            out["vacuous"] = True
        if self.kind == "C3":
            out.update(H=list(self.H), R=list(self.R), d=self.d)
        if self.kind == "C4":
            out["m"] = self.m
        return out

    def describe(self) -> str:
        if self.kind == "C3":
            return f"C3(H={{{','.join(map(str, self.H))}}}, R={{{','.join(map(str, self.R))}}}, d={self.d})"
        if self.kind == "C4":
            return f"C4(m={self.m})"
        tag = ", vacuous" if self.vacuous else ""
        return f"{self.kind}(h={self.h}{tag})"


def even_part(x: CirculantGraph) -> frozenset[int]:
    return frozenset(s for s in x.elements if s % 2 == 0)


def odd_part(x: CirculantGraph) -> frozenset[int]:
    return frozenset(s for s in x.elements if s % 2 == 1)


def _shift(A: frozenset[int], h: int, n: int) -> frozenset[int]:
    return frozenset((a + h) % n for a in A)


def detect_c1(x: CirculantGraph) -> WilsonWitness | None:
    n = x.n
    if n % 2:
        return None
    se = even_part(x)
    for h in range(2, n, 2):
        if _shift(se, h, n) == se:
            return WilsonWitness("C1", h=h, vacuous=not se)
    return None


def _c2_holds(x: CirculantGraph, h: int) -> bool:
    n = x.n
    S = x.s.as_set
    so = odd_part(x)
    if _shift(so, 2 * h, n) != so:
        return False
    for s in S:
        if s % 4 in (0, (-h) % 4) and (s + h) % n not in S:
            return False
    return True


def detect_c2(x: CirculantGraph) -> WilsonWitness | None:
    if x.n % 4:
        return None
    for h in range(1, x.n, 2):
        if _c2_holds(x, h):
            return WilsonWitness("C2", h=h)
    return None


def _c3_params(x: CirculantGraph, H: frozenset[int]):
    """(R, d) if H satisfies the corrected C.3 condition, else None."""
    n = x.n
    S = x.s.as_set
    R = sorted(s for s in S if not all((s + t) % n in S for t in H))
    if not R:
        return None
    d = reduce(math.gcd, R, n)
    if (n // d) % 2:
        return None
    if any((r // d) % 2 == 0 for r in R):
        return None
    in_d = all(t % d == 0 for t in H)
    in_2d = all(t % (2 * d) == 0 for t in H)
    if in_d and not in_2d:
        return None
    return tuple(R), d


def cyclic_subgroups(n: int) -> list[tuple[int, ...]]:
    """Nontrivial subgroups of Z_n, ordered by size."""
    out = []
    for m in range(2, n + 1):
        if n % m == 0:
            out.append(tuple(range(0, n, n // m)))
    return out


def detect_c3(x: CirculantGraph) -> WilsonWitness | None:
    for H in cyclic_subgroups(x.n):
        res = _c3_params(x, frozenset(H))
        if res is not None:
            R, d = res
            return WilsonWitness("C3", H=H, R=R, d=d)
    return None


def _c4_holds(x: CirculantGraph, m: int) -> bool:
    n = x.n
    S = x.s.as_set
    return frozenset((n // 2 + m * s) % n for s in S) == S


def detect_c4(x: CirculantGraph) -> WilsonWitness | None:
    n = x.n
    if n % 2:
        return None
    for m in units(n):
        if _c4_holds(x, m):
            return WilsonWitness("C4", m=m)
    return None


def wilson_types(x: CirculantGraph) -> list[WilsonWitness]:
    found = [detect_c1(x), detect_c2(x), detect_c3(x), detect_c4(x)]
    return [w for w in found if w is not None]


def has_wilson_type(x: CirculantGraph) -> bool:
    return any(not w.vacuous for w in wilson_types(x))


# independent re-checks of emitted witnesses ----------------------------------


def _recheck_c1(x: CirculantGraph, w: WilsonWitness) -> bool:
    n, h = x.n, w.h
    if n % 2 or h is None or h % n == 0 or h % 2:
        return False
    se = {s for s in x.elements if s % 2 == 0}
    return {(s + h) % n for s in se} == se and w.vacuous == (not se)


def _recheck_c2(x: CirculantGraph, w: WilsonWitness) -> bool:
    n, h = x.n, w.h
    if n % 4 or h is None or h % 2 == 0:
        return False
    S = set(x.elements)
    so = {s for s in S if s % 2}
    cond_a = {(s + 2 * h) % n for s in so} == so
    cond_b = all((s + h) % n in S for s in S if (s - 0) % 4 == 0 or (s + h) % 4 == 0)
    return cond_a and cond_b


def _recheck_c3(x: CirculantGraph, w: WilsonWitness) -> bool:
    n = x.n
    H = set(w.H or ())
    if not H or any((a + b) % n not in H for a in H for b in H):
        return False
    S = set(x.elements)
    R = {s for s in S if not {(s + t) % n for t in H} <= S}
    if not R or R != set(w.R):
        return False
    d = math.gcd(n, *R)
    if d != w.d or (n // d) % 2 or any((r // d) % 2 == 0 for r in R):
        return False
    sub_d = {t for t in range(n) if t % d == 0}
    sub_2d = {t for t in range(n) if t % (2 * d) == 0}
    return not H <= sub_d or H <= sub_2d


def _recheck_c4(x: CirculantGraph, w: WilsonWitness) -> bool:
    n, m = x.n, w.m
    if n % 2 or m is None or math.gcd(m, n) != 1:
        return False
    S = set(x.elements)
    return {(n // 2 + m * s) % n for s in S} == S


_CHECKS = {"C1": _recheck_c1, "C2": _recheck_c2, "C3": _recheck_c3, "C4": _recheck_c4}
