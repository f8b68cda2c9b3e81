"""Classified families of unstable circulants of valency 4 to 7.

Each family is a connection-set template on Z_n with n a fixed multiple of a
parameter k.  Matching is literal: a graph belongs to a family when some
admissible parameter choice rebuilds exactly its connection set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator

from .circulant import CirculantGraph, element_order, triviality_class, units

Params = dict[str, int]


@dataclass(frozen=True)
class FamilyMatch:
    family_id: str
    params: tuple[tuple[str, int], ...]
    nontrivial: bool

    @property
    def param_dict(self) -> Params:
        return dict(self.params)

    def to_json(self) -> dict[str, Any]:
        return {"family": self.family_id, "params": dict(self.params), "nontrivial": self.nontrivial}

    def describe(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.family_id}({inner})"


@dataclass(frozen=True)
class _Family:
    fid: str
    valency: int
    modulus: int  # n = modulus * k
    wilson: str
    build: Callable[[int, int, Params], list[int]]
    admissible: Callable[[int, int, Params], bool]
    nontrivial: Callable[[int, int, Params], bool] | None
    candidates: Callable[[CirculantGraph, int], Iterator[Params]]
    fixed_k: int | None = field(default=None)


def _gcd(*xs: int) -> int:
    return math.gcd(*xs)


def _odd(v: int) -> bool:
    return v % 2 == 1


def _in(v: int, opts, n: int) -> bool:
    return v % n in {o % n for o in opts}


def _elems(x: CirculantGraph) -> list[int]:
    return list(x.elements)


# candidate generators -------------------------------------------------------


def _pairs_of(names: tuple[str, ...]):
    def gen(x: CirculantGraph, k: int) -> Iterator[Params]:
        S = _elems(x)

        def rec(i: int, acc: Params):
            if i == len(names):
                yield dict(acc)
                return
            for s in S:
                acc[names[i]] = s
                yield from rec(i + 1, acc)

        yield from rec(0, {})

    return gen


def _t_range(x: CirculantGraph, k: int) -> Iterator[Params]:
    for t in range(1, x.n):
        yield {"t": t}


def _v41_candidates(x: CirculantGraph, k: int) -> Iterator[Params]:
    n = x.n
    for a in _elems(x):
        for m in units(n):
            if (m * m) % n in (1, n - 1):
                yield {"a": a, "m": m}


def _v66_candidates(x: CirculantGraph, k: int) -> Iterator[Params]:
    n = x.n
    S = _elems(x)
    for m in units(n):
        sq1 = (m * m) % n == 1
        for a in S:
            if ((m - 1) * a) % n != (2 * k) % n:
                continue
            for b in S:
                if sq1 or ((m * m + 1) * b) % n == 0:
                    yield {"a": a, "b": b, "m": m}


def _v67_candidates(x: CirculantGraph, k: int) -> Iterator[Params]:
    n = x.n
    S = _elems(x)
    target = (4 * k) % n
    for m in units(n):
        if (m * m) % n != 1:
            continue
        As = [a for a in S if ((m - 1) * a) % n == target]
        Bs = [b for b in S if ((m + 1) * b) % n == target]
        for a in As:
            for b in Bs:
                for c in Bs:
                    yield {"a": a, "b": b, "c": c, "m": m}


# family table ---------------------------------------------------------------


def _true(n: int, k: int, p: Params) -> bool:
    return True


_FAMILIES: list[_Family] = [
    _Family(
        "V4.1", 4, 1, "C4",
        build=lambda n, k, p: [p["a"], -p["a"], p["m"] * p["a"] + n // 2, -(p["m"] * p["a"] + n // 2)],
        admissible=lambda n, k, p: n % 4 == 2
        and _gcd(p["a"], n) == 1
        and _gcd(p["m"], n) == 1
        and (p["m"] ** 2) % n in (1 % n, (n - 1) % n),
        nontrivial=None,
        candidates=_v41_candidates,
    ),
    _Family(
        "V4.2", 4, 1, "C4",
        build=lambda n, k, p: [p["a"], -p["a"], p["b"], -p["b"]],
        admissible=lambda n, k, p: n % 8 == 0
        and _gcd(element_order(p["a"], n), element_order(p["b"], n)) == 4,
        nontrivial=None,
        candidates=_pairs_of(("a", "b")),
    ),
    _Family(
        "V5.1", 5, 12, "C1",
        build=lambda n, k, p: [p["s"], -p["s"], 2 * k, -2 * k, 6 * k],
        admissible=lambda n, k, p: _odd(p["s"]),
        nontrivial=lambda n, k, p: _gcd(p["s"], k) == 1,
        candidates=lambda x, k: ({"s": s} for s in _elems(x) if s % 2),
    ),
    _Family(
        "V5.2", 5, 8, "C3",
        build=lambda n, k, p: [1, -1, 3, -3, 4],
        admissible=_true,
        nontrivial=lambda n, k, p: True,
        candidates=lambda x, k: iter([{}]),
        fixed_k=1,
    ),
    _Family(
        "V6.1", 6, 8, "C1",
        build=lambda n, k, p: [p["a"], -p["a"], p["b"], -p["b"], 2 * k, -2 * k],
        admissible=lambda n, k, p: _odd(p["a"]) and _odd(p["b"]),
        nontrivial=lambda n, k, p: _gcd(p["a"], p["b"], k) == 1
        and not _in(p["b"], (p["a"] + 4 * k, -p["a"] + 4 * k), n),
        candidates=_pairs_of(("a", "b")),
    ),
    _Family(
        "V6.2", 6, 4, "C1",
        build=lambda n, k, p: [p["a"], -p["a"], p["b"], -p["b"], p["b"] + 2 * k, -p["b"] + 2 * k],
        admissible=lambda n, k, p: _odd(p["a"]) and not _odd(p["b"]),
        nontrivial=lambda n, k, p: _gcd(p["a"], p["b"], k) == 1 and not _in(p["a"], (k, -k), n),
        candidates=_pairs_of(("a", "b")),
    ),
    _Family(
        "V6.3", 6, 4, "C2",
        build=lambda n, k, p: [p["a"], -p["a"], p["a"] + k, -(p["a"] + k), p["a"] - k, -(p["a"] - k)],
        admissible=lambda n, k, p: p["a"] % 4 == 0 and _odd(k),
        nontrivial=lambda n, k, p: _gcd(p["a"], k) == 1,
        candidates=lambda x, k: ({"a": a} for a in _elems(x)),
    ),
    _Family(
        "V6.4", 6, 8, "C3",
        build=lambda n, k, p: [p["a"], -p["a"], p["b"], -p["b"], p["b"] + 4 * k, -p["b"] + 4 * k],
        admissible=lambda n, k, p: p["a"] % 2 == 0 and element_order(p["a"], n) % 4 == 0,
        nontrivial=lambda n, k, p: _gcd(p["a"], p["b"], 4 * k) == 1 and not _in(p["a"], (2 * k, -2 * k), n),
        candidates=_pairs_of(("a", "b")),
    ),
    _Family(
        "V6.5", 6, 8, "C3",
        build=lambda n, k, p: [p["a"], -p["a"], k, -k, 3 * k, -3 * k],
        admissible=lambda n, k, p: p["a"] % 4 == 0 and _odd(k),
        nontrivial=lambda n, k, p: _gcd(p["a"], k) == 1,
        candidates=lambda x, k: ({"a": a} for a in _elems(x)),
    ),
    _Family(
        "V6.6", 6, 4, "C4",
        build=lambda n, k, p: [p["a"], -p["a"], p["b"], -p["b"], p["m"] * p["b"] + 2 * k, -p["m"] * p["b"] + 2 * k],
        admissible=lambda n, k, p: _gcd(p["m"], n) == 1
        and ((p["m"] - 1) * p["a"] - 2 * k) % n == 0
        and ((p["m"] ** 2 - 1) % n == 0 or ((p["m"] ** 2 + 1) * p["b"]) % n == 0),
        nontrivial=lambda n, k, p: _gcd(p["a"], p["b"], 2 * k) == 1
        and (p["a"] % 2 == 0 or p["b"] % 2 == 0)
        and (not _in(p["a"], (k, -k), n) or not _in(p["m"] * p["b"], (p["b"], -p["b"]), n)),
        candidates=_v66_candidates,
    ),
    _Family(
        "V6.7", 6, 8, "C4",
        build=lambda n, k, p: [p["a"], -p["a"], p["b"], -p["b"], p["c"], -p["c"]],
        admissible=lambda n, k, p: _gcd(p["m"], n) == 1
        and (p["m"] ** 2 - 1) % n == 0
        and ((p["m"] - 1) * p["a"] - 4 * k) % n == 0
        and ((p["m"] + 1) * p["b"] - 4 * k) % n == 0
        and ((p["m"] + 1) * p["c"] - 4 * k) % n == 0,
        nontrivial=lambda n, k, p: _gcd(p["a"], p["b"], p["c"], 4 * k) == 1
        and (p["a"] % 2 == 0 or p["b"] % 2 == 0)
        and (not _in(p["a"], (2 * k, -2 * k), n) or not _in(p["c"], (p["b"] + 4 * k, -p["b"] + 4 * k), n)),
        candidates=_v67_candidates,
    ),
    _Family(
        "V7.1", 7, 6, "C1",
        build=lambda n, k, p: [
            2 * p["t"], -2 * p["t"], 2 * (k - p["t"]), -2 * (k - p["t"]),
            2 * (k + p["t"]), -2 * (k + p["t"]), 3 * k,
        ],
        admissible=lambda n, k, p: _odd(k) and p["t"] > 0,
        nontrivial=lambda n, k, p: _gcd(p["t"], k) == 1,
        candidates=_t_range,
    ),
    _Family(
        "V7.2", 7, 12, "C1",
        build=lambda n, k, p: [2 * k, -2 * k, p["b"], -p["b"], p["c"], -p["c"], 6 * k],
        admissible=lambda n, k, p: _odd(p["b"]) and _odd(p["c"]),
        nontrivial=lambda n, k, p: _gcd(p["b"], p["c"], k) == 1,
        candidates=_pairs_of(("b", "c")),
    ),
    _Family(
        "V7.3", 7, 20, "C1",
        build=lambda n, k, p: [p["t"], -p["t"], 2 * k, -2 * k, 6 * k, -6 * k, 10 * k],
        admissible=lambda n, k, p: _odd(p["t"]),
        nontrivial=lambda n, k, p: _gcd(p["t"], k) == 1,
        candidates=lambda x, k: ({"t": t} for t in _elems(x)),
    ),
    _Family(
        "V7.4", 7, 4, "C2",
        build=lambda n, k, p: [
            p["t"], -p["t"], k - p["t"], -(k - p["t"]), 2 * k + p["t"], 2 * k - p["t"], 2 * k,
        ],
        admissible=lambda n, k, p: _odd(k) and (p["t"] - k) % 4 == 0 and p["t"] > 0,
        nontrivial=lambda n, k, p: _gcd(p["t"], k) == 1,
        candidates=_t_range,
    ),
    _Family(
        "V7.5", 7, 8, "C3",
        build=lambda n, k, p: [4 * p["t"], -4 * p["t"], k, -k, 3 * k, -3 * k, 4 * k],
        admissible=lambda n, k, p: _odd(k) and _odd(p["t"]),
        nontrivial=lambda n, k, p: _gcd(p["t"], k) == 1,
        candidates=_t_range,
    ),
    _Family(
        "V7.6", 7, 12, "C3",
        build=lambda n, k, p: [
            p["t"], -p["t"], 4 * k - p["t"], -(4 * k - p["t"]), 4 * k + p["t"], -(4 * k + p["t"]), 6 * k,
        ],
        admissible=lambda n, k, p: _odd(p["t"]),
        nontrivial=lambda n, k, p: _gcd(p["t"], k) == 1,
        candidates=lambda x, k: ({"t": t} for t in _elems(x)),
    ),
]

FAMILIES: dict[str, _Family] = {f.fid: f for f in _FAMILIES}
FAMILY_IDS: tuple[str, ...] = tuple(FAMILIES)


def family_wilson_type(family_id: str) -> str:
    return FAMILIES[family_id].wilson


def _forced_k(fam: _Family, n: int) -> int | None:
    if n % fam.modulus:
        return None
    k = n // fam.modulus
    if k < 1 or (fam.fixed_k is not None and k != fam.fixed_k):
        return None
    return k


def _residues(n: int, raw: list[int]) -> list[int]:
    return [r % n for r in raw]


def _set_if_valid(fam: _Family, n: int, k: int, p: Params) -> frozenset[int] | None:
    res = _residues(n, fam.build(n, k, p))
    if 0 in res or len(set(res)) != fam.valency:
        return None
    return frozenset(res)


def instantiate(family_id: str, params: Params, n: int) -> CirculantGraph:
    """Literal family member; rejects bad n, side conditions, or collisions."""
    if family_id not in FAMILIES:
        raise ValueError(f"unknown family {family_id!r}")
    fam = FAMILIES[family_id]
    k = _forced_k(fam, n)
    if k is None:
        raise ValueError(f"{family_id} needs n to be {fam.modulus}k" + (" with k=1" if fam.fixed_k else ""))
    p = dict(params)
    if p.pop("k", k) != k:
        raise ValueError(f"k={params['k']} inconsistent with n={n} (forced k={k})")
    if not fam.admissible(n, k, p):
        raise ValueError(f"parameters {params} violate the side conditions of {family_id}")
    elems = _set_if_valid(fam, n, k, p)
    if elems is None:
        raise ValueError(f"parameters {params} make listed elements collide in Z_{n}")
    return CirculantGraph.from_raw(n, elems)


def _match_family(fam: _Family, x: CirculantGraph) -> FamilyMatch | None:
    n = x.n
    if x.valency != fam.valency:
        return None
    k = _forced_k(fam, n)
    if k is None:
        return None
    target = x.s.as_set
    for p in fam.candidates(x, k):
        if not fam.admissible(n, k, p):
            continue
        if _set_if_valid(fam, n, k, p) == target:
            if fam.nontrivial is None:
                nt = triviality_class(x).nontrivial
            else:
                nt = bool(fam.nontrivial(n, k, p))
            shown = {"k": k, **p} if fam.modulus > 1 and fam.fixed_k is None else p
            return FamilyMatch(fam.fid, tuple(shown.items()), nt)
    return None


def match_all(x: CirculantGraph) -> list[FamilyMatch]:
    """Every family that matches, in documentation order."""
    out = []
    for fam in _FAMILIES:
        m = _match_family(fam, x)
        if m is not None:
            out.append(m)
    return out


def _match_valency(x: CirculantGraph, v: int) -> FamilyMatch | None:
    if x.valency != v:
        raise ValueError(f"expected valency {v}, got {x.valency}")
    found = match_all(x)
    return found[0] if found else None


def match_val4(x: CirculantGraph) -> FamilyMatch | None:
    return _match_valency(x, 4)


def match_val5(x: CirculantGraph) -> FamilyMatch | None:
    return _match_valency(x, 5)


def match_val6(x: CirculantGraph) -> FamilyMatch | None:
    return _match_valency(x, 6)


def match_val7(x: CirculantGraph) -> FamilyMatch | None:
    return _match_valency(x, 7)


def match(x: CirculantGraph) -> FamilyMatch | None:
    """Primary match for valency 4..7, otherwise None."""
    if x.valency not in (4, 5, 6, 7):
        return None
    return _match_valency(x, x.valency)


def nontrivial_members(family_id: str, n: int) -> set[frozenset[int]]:
    """All connection sets of nontrivial members of one family on Z_n."""
    fam = FAMILIES[family_id]
    k = _forced_k(fam, n)
    if k is None:
        return set()
    out = set()
    for p in _all_params(fam, n, k):
        if not fam.admissible(n, k, p):
            continue
        elems = _set_if_valid(fam, n, k, p)
        if elems is None:
            continue
        x = CirculantGraph.from_raw(n, elems)
        nt = triviality_class(x).nontrivial if fam.nontrivial is None else fam.nontrivial(n, k, p)
        if nt:
            out.add(elems)
    return out


def _all_params(fam: _Family, n: int, k: int) -> Iterator[Params]:
    """Exhaustive parameter grid, independent of any particular graph."""
    full = CirculantGraph.from_raw(n, range(1, n)) if n > 1 else None
    if full is None:
        return iter(())
    return fam.candidates(full, k)
