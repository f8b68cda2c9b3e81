"""Enumeration, per-graph classification, and theorem verification over ranges."""

from __future__ import annotations

import csv
import io
import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Sequence

from .autgroup import SearchTimeout, cover_automorphism_group, edge_orbits, is_normal_cayley
from .circulant import CirculantGraph, triviality_class, units
from .families import FAMILIES, FamilyMatch, match, match_all
from .products import cycle_wr_k2, double_cover
from .stability import is_stable
from .wilson import WilsonWitness, wilson_types

SCHEMA = 1
DEFAULT_TIMEOUT = 30.0

JSON_KEYS = (
    "n", "set", "connected", "bipartite", "twin_free", "stable",
    "aut_x_order", "aut_bx_order", "wilson", "family", "edge_orbits_bx", "schema",
)


@dataclass(frozen=True)
class ClassificationRecord:
    n: int
    elements: tuple[int, ...]
    connected: bool
    bipartite: bool
    twin_free: bool
    stable: bool | None
    aut_x_order: int | None
    aut_bx_order: int | None
    wilson: tuple[WilsonWitness, ...]
    family: FamilyMatch | None
    edge_orbits_bx: int | None
    all_families: tuple[FamilyMatch, ...] = field(default=(), compare=False)
    elapsed: float = field(default=0.0, compare=False)

    @property
    def timed_out(self) -> bool:
        return self.stable is None

    @property
    def trivially_unstable(self) -> bool:
        return not (self.connected and not self.bipartite and self.twin_free)

    @property
    def nontrivially_unstable(self) -> bool:
        return self.stable is False and not self.trivially_unstable

    @property
    def valency(self) -> int:
        return len(self.elements)

    @property
    def graph(self) -> CirculantGraph:
        return CirculantGraph.from_raw(self.n, self.elements)

    @property
    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.n, self.elements)

    def has_wilson_type(self) -> bool:
        return any(not w.vacuous for w in self.wilson)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "set": list(self.elements),
            "connected": self.connected,
            "bipartite": self.bipartite,
            "twin_free": self.twin_free,
            "stable": self.stable,
            "aut_x_order": self.aut_x_order,
            "aut_bx_order": self.aut_bx_order,
            "wilson": [w.to_json() for w in self.wilson],
            "family": None if self.family is None else self.family.to_json(),
            "edge_orbits_bx": self.edge_orbits_bx,
            "schema": SCHEMA,
        }

    def to_csv_row(self) -> list[str]:
        def cell(v: Any) -> str:
            if v is None:
                return ""
            if isinstance(v, bool):
                return "true" if v else "false"
            return str(v)

        return [
            cell(self.n),
            ";".join(map(str, self.elements)),
            cell(self.connected),
            cell(self.bipartite),
            cell(self.twin_free),
            cell(self.stable),
            cell(self.aut_x_order),
            cell(self.aut_bx_order),
            ";".join(w.describe() for w in self.wilson),
            "" if self.family is None else self.family.describe(),
            cell(self.edge_orbits_bx),
            str(SCHEMA),
        ]


def records_to_json(records: Iterable[ClassificationRecord]) -> str:
    return json.dumps([r.to_json() for r in sort_records(records)], separators=(",", ":"))


def records_to_csv(records: Iterable[ClassificationRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(JSON_KEYS)
    for r in records:
        w.writerow(r.to_csv_row())
    return buf.getvalue()


def sort_records(records: Iterable[ClassificationRecord]) -> list[ClassificationRecord]:
    return sorted(records, key=lambda r: r.key)


# enumeration ----------------------------------------------------------------


def _multiplier_canonical(n: int, elems: tuple[int, ...]) -> bool:
    """Whether ``elems`` is the least image of itself under the unit group."""
    for u in units(n):
        if tuple(sorted((u * s) % n for s in elems)) < elems:
            return False
    return True


def enumerate_circulants(n: int, valency: int, *, dedup_multiplier: bool = False) -> Iterator[CirculantGraph]:
    """Every inverse-closed S in Z_n - {0} with |S| = valency.

    Order is lexicographic in the sorted tuple of pair representatives
    (s <= n/2).  With ``dedup_multiplier`` only the least set in each orbit of
    S -> uS (u a unit) is kept; this is a quotient, not an isomorphism
    classification.
    """
    if valency < 0:
        raise ValueError("valency must be >= 0")
    if n < 1 or valency > n - 1:
        return
    half = n // 2 if n % 2 == 0 else None
    if valency % 2 and half is None:
        return
    pairs = [s for s in range(1, (n + 1) // 2)]
    npairs = valency // 2
    for combo in itertools.combinations(pairs, npairs):
        raw = list(combo) + ([half] if valency % 2 else [])
        x = CirculantGraph.from_raw(n, raw)
        if dedup_multiplier and not _multiplier_canonical(n, x.elements):
            continue
        yield x


# re-export under the interface name
enumerate = enumerate_circulants  # noqa: A001


# classification ---------------------------------------------------------------


def classify(x: CirculantGraph, *, timeout: float | None = DEFAULT_TIMEOUT) -> ClassificationRecord:
    t0 = time.perf_counter()
    tri = triviality_class(x)
    wit = tuple(wilson_types(x))
    fams = tuple(match_all(x)) if x.valency in (4, 5, 6, 7) else ()
    fam = fams[0] if fams else None
    try:
        v = is_stable(x, timeout=timeout)
        abx = cover_automorphism_group(x, timeout=timeout)
        stable, ox, obx = v.stable, v.aut_x_order, v.aut_bx_order
        eo = len(edge_orbits(abx, double_cover(x)))
    except SearchTimeout:
        stable = ox = obx = eo = None
    return ClassificationRecord(
        n=x.n,
        elements=x.elements,
        connected=tri.connected,
        bipartite=tri.bipartite,
        twin_free=tri.twin_free,
        stable=stable,
        aut_x_order=ox,
        aut_bx_order=obx,
        wilson=wit,
        family=fam,
        edge_orbits_bx=eo,
        all_families=fams,
        elapsed=time.perf_counter() - t0,
    )


def _classify_key(args: tuple[int, tuple[int, ...], float | None]) -> ClassificationRecord:
    n, elems, timeout = args
    return classify(CirculantGraph.from_raw(n, elems), timeout=timeout)


def classify_many(
    graphs: Iterable[CirculantGraph],
    *,
    jobs: int = 1,
    timeout: float | None = DEFAULT_TIMEOUT,
) -> list[ClassificationRecord]:
    """Classify a batch; output is sorted by (n, S) whatever the worker count."""
    work = [(x.n, x.elements, timeout) for x in graphs]
    if jobs <= 1 or len(work) < 2:
        out = [_classify_key(w) for w in work]
    else:
        chunk = max(1, len(work) // (jobs * 8))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            out = list(pool.map(_classify_key, work, chunksize=chunk))
    return sort_records(out)


# verification -----------------------------------------------------------------


@dataclass(frozen=True)
class Discrepancy:
    record: ClassificationRecord
    reason: str

    def to_json(self) -> dict[str, Any]:
        return {"reason": self.reason, "record": self.record.to_json()}


@dataclass
class VerificationReport:
    theorem: str
    range: dict[str, Any]
    examined: int
    discrepancies: list[Discrepancy]
    timeouts: int
    elapsed: float = 0.0
    records: list[ClassificationRecord] = field(default_factory=list, repr=False)

    @property
    def status(self) -> str:
        if self.discrepancies:
            return "discrepancy"
        if self.timeouts:
            return "inconclusive"
        return "confirmed"

    @property
    def confirmed(self) -> bool:
        return self.status == "confirmed"

    def to_json(self, *, timing: bool = False) -> dict[str, Any]:
        out = {
            "theorem": self.theorem,
            "range": self.range,
            "examined": self.examined,
            "timeouts": self.timeouts,
            "status": self.status,
            "discrepancies": [d.to_json() for d in self.discrepancies],
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out


Check = Callable[[ClassificationRecord], "str | None"]


def _family_biconditional(valency: int) -> Check:
    def check(r: ClassificationRecord) -> str | None:
        if r.valency != valency or r.timed_out:
            return None
        nontriv = [m for m in r.all_families if m.nontrivial]
        if r.nontrivially_unstable and not nontriv:
            return "nontrivially unstable but in no family"
        if nontriv and not r.nontrivially_unstable:
            return f"{nontriv[0].describe()} flagged nontrivial but graph is not nontrivially unstable"
        kinds = {w.kind for w in r.wilson if not w.vacuous}
        for m in nontriv:
            if FAMILIES[m.family_id].wilson not in kinds:
                return f"{m.describe()} lacks Wilson type {FAMILIES[m.family_id].wilson}"
        return None

    return check


def _check_val3(r: ClassificationRecord) -> str | None:
    return "nontrivially unstable" if r.nontrivially_unstable else None


def _check_val4(r: ClassificationRecord) -> str | None:
    if r.valency != 4 or r.timed_out:
        return None
    listed = r.trivially_unstable or bool(r.all_families)
    if (r.stable is False) != listed:
        return "unstable" if not listed else "listed but stable"
    if r.nontrivially_unstable and not any(w.kind == "C4" for w in r.wilson):
        return "nontrivially unstable without a C4 witness"
    return None


def _check_lessthan8(r: ClassificationRecord) -> str | None:
    if r.nontrivially_unstable and not r.has_wilson_type():
        return "nontrivially unstable without a Wilson type"
    return None


def _check_val5orbits(r: ClassificationRecord) -> str | None:
    if r.nontrivially_unstable and r.edge_orbits_bx != 2:
        return f"BX has {r.edge_orbits_bx} edge orbits"
    return None


def _check_cover_normal(r: ClassificationRecord) -> str | None:
    if r.nontrivially_unstable and not is_normal_cayley(r.graph, cover=True):
        return "BX is not normal"
    return None


def _check_cover_nonnormal(r: ClassificationRecord) -> str | None:
    if r.nontrivially_unstable and is_normal_cayley(r.graph, cover=True):
        return "BX is normal"
    return None


def _check_soundness(r: ClassificationRecord) -> str | None:
    """A non-vacuous Wilson witness on a nontrivial graph forces instability."""
    if r.timed_out or r.trivially_unstable:
        return None
    if r.has_wilson_type() and r.stable:
        return "stable despite a Wilson witness"
    return None


@dataclass(frozen=True)
class TheoremSpec:
    valencies: tuple[int, ...]
    parity: str  # "even" | "odd" | "all"
    default_n_max: int
    checks: tuple[Check, ...]


THEOREMS: dict[str, TheoremSpec] = {
    "val3": TheoremSpec((1, 2, 3), "all", 60, (_check_val3,)),
    "val4": TheoremSpec((4,), "even", 48, (_check_val4, _check_soundness)),
    "val5": TheoremSpec((5,), "even", 48, (_family_biconditional(5), _check_soundness)),
    "val6": TheoremSpec((6,), "even", 40, (_family_biconditional(6), _check_soundness)),
    "val7": TheoremSpec((7,), "even", 40, (_family_biconditional(7), _check_soundness)),
    "lessthan8": TheoremSpec((1, 2, 3, 4, 5, 6, 7), "all", 36, (_check_lessthan8, _check_soundness)),
    "odd_order": TheoremSpec((1, 2, 3, 4, 5, 6), "odd", 45, (_check_val3,)),
    "val5orbits": TheoremSpec((5,), "even", 48, (_check_val5orbits,)),
    "val4_cover_normal": TheoremSpec((4,), "even", 48, (_check_cover_normal,)),
    "odd_valency_nonnormal": TheoremSpec((5, 7), "even", 40, (_check_cover_nonnormal,)),
}


def _n_values(n_min: int, n_max: int, parity: str) -> list[int]:
    ns = range(max(1, n_min), n_max + 1)
    if parity == "even":
        return [n for n in ns if n % 2 == 0]
    if parity == "odd":
        return [n for n in ns if n % 2 == 1]
    return list(ns)


def scan_graphs(valencies: Sequence[int], n_min: int, n_max: int, parity: str = "all") -> list[CirculantGraph]:
    return [
        x
        for n in _n_values(n_min, n_max, parity)
        for v in valencies
        for x in enumerate_circulants(n, v)
    ]


def check_records(
    theorem: str,
    records: Sequence[ClassificationRecord],
    *,
    range_info: dict[str, Any] | None = None,
    elapsed: float = 0.0,
) -> VerificationReport:
    """Evaluate a theorem's checks against records already computed."""
    spec = THEOREMS[theorem]
    relevant = [r for r in sort_records(records) if r.valency in spec.valencies]
    bad = []
    for r in relevant:
        for chk in spec.checks:
            reason = chk(r)
            if reason is not None:
                bad.append(Discrepancy(r, reason))
                break
    return VerificationReport(
        theorem=theorem,
        range=range_info or {},
        examined=len(relevant),
        discrepancies=bad,
        timeouts=sum(r.timed_out for r in relevant),
        elapsed=elapsed,
        records=relevant,
    )


def verify_theorem(
    theorem: str,
    n_max: int | None = None,
    *,
    n_min: int = 1,
    parity: str | None = None,
    jobs: int = 1,
    timeout: float | None = DEFAULT_TIMEOUT,
) -> VerificationReport:
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem id {theorem!r}; choose from {', '.join(THEOREMS)}")
    spec = THEOREMS[theorem]
    n_max = spec.default_n_max if n_max is None else n_max
    parity = parity or spec.parity
    t0 = time.perf_counter()
    records = classify_many(scan_graphs(spec.valencies, n_min, n_max, parity), jobs=jobs, timeout=timeout)
    info = {"n_min": n_min, "n_max": n_max, "parity": parity, "valencies": list(spec.valencies)}
    return check_records(theorem, records, range_info=info, elapsed=time.perf_counter() - t0)


SMALL_LEMMA_GRAPHS: tuple[tuple[int, tuple[int, ...]], ...] = (
    (6, (2, 3)),
    (12, (2, 3)),
    (12, (3, 4)),
    (10, (2, 4, 5)),
    (12, (1, 5, 6)),
    (12, (3, 4, 6)),
    (20, (4, 5, 8)),
    (20, (2, 5, 6)),
    (12, (2, 3, 4, 6)),
    (14, (2, 4, 6, 7)),
    (20, (4, 5, 8, 10)),
    (24, (3, 8, 9, 12)),
    (30, (5, 6, 12, 15)),
    (30, (3, 9, 10, 15)),
    (30, (6, 10, 12, 15)),
)


def _verify_list(
    theorem: str,
    graphs: Sequence[CirculantGraph],
    expect_stable: Callable[[CirculantGraph], bool],
    range_info: dict[str, Any],
    timeout: float | None,
) -> VerificationReport:
    t0 = time.perf_counter()
    records = [classify(x, timeout=timeout) for x in graphs]
    bad = []
    for x, r in zip(graphs, records):
        if r.timed_out:
            continue
        if r.stable != expect_stable(x):
            bad.append(Discrepancy(r, "stable" if r.stable else "unstable"))
    return VerificationReport(
        theorem=theorem,
        range=range_info,
        examined=len(records),
        discrepancies=bad,
        timeouts=sum(r.timed_out for r in records),
        elapsed=time.perf_counter() - t0,
        records=records,
    )


def verify_small_lemma(*, timeout: float | None = DEFAULT_TIMEOUT) -> VerificationReport:
    graphs = [CirculantGraph.from_raw(n, s) for n, s in SMALL_LEMMA_GRAPHS]
    return _verify_list("small", graphs, lambda x: True, {"graphs": len(graphs)}, timeout)


def verify_cycwr(k_max: int = 12, *, timeout: float | None = DEFAULT_TIMEOUT) -> VerificationReport:
    if k_max < 4:
        raise ValueError("k_max must be >= 4")
    ks = list(range(3, k_max + 1))
    graphs = [cycle_wr_k2(k) for k in ks]
    return _verify_list("cycwr", graphs, lambda x: x.n != 8, {"k_min": 3, "k_max": k_max}, timeout)


def default_jobs() -> int:
    return os.cpu_count() or 1
