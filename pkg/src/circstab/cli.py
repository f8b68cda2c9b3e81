"""Command-line front end: analyze, enumerate, verify, certify."""

from __future__ import annotations

import argparse
import json
import sys
import time

from .autgroup import SearchTimeout, cover_automorphism_group
from .circulant import CirculantGraph, format_circulant, parse_set, triviality_class
from .harness import (
    DEFAULT_TIMEOUT,
    THEOREMS,
    classify,
    classify_many,
    enumerate_circulants,
    records_to_csv,
    verify_theorem,
)
from .stability import instability_witness, is_stable

EXIT_OK, EXIT_DISCREPANCY, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _graph(args: argparse.Namespace) -> CirculantGraph:
    return CirculantGraph.from_raw(args.n, parse_set(args.set))


def cmd_analyze(args: argparse.Namespace) -> int:
    rec = classify(_graph(args), timeout=args.timeout)
    if args.csv:
        sys.stdout.write(records_to_csv([rec]))
    else:
        print(json.dumps(rec.to_json()))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    graphs = [
        x
        for n in range(args.n_min, args.n_max + 1)
        for x in enumerate_circulants(n, args.valency, dedup_multiplier=args.dedup_multiplier)
    ]
    records = classify_many(graphs, jobs=args.jobs, timeout=args.timeout)
    if args.csv:
        sys.stdout.write(records_to_csv(records))
    else:
        for r in records:
            print(json.dumps(r.to_json()))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    rep = verify_theorem(
        args.theorem, args.n_max, n_min=args.n_min, jobs=args.jobs, timeout=args.timeout
    )
    print(json.dumps(rep.to_json(), indent=2))
    print(f"{rep.theorem}: {rep.status} ({rep.examined} graphs, {rep.elapsed:.1f}s)", file=sys.stderr)
    return {"confirmed": EXIT_OK, "discrepancy": EXIT_DISCREPANCY}.get(rep.status, EXIT_INCONCLUSIVE)


def cmd_certify(args: argparse.Namespace) -> int:
    x = _graph(args)
    rec = classify(x, timeout=args.timeout)
    lines = [f"graph: {format_circulant(x)}  (valency {x.valency})"]
    lines.append(f"class: {triviality_class(x).label}")
    if rec.timed_out:
        lines.append(f"stability: unknown (search exceeded {args.timeout}s)")
    else:
        lines.append(f"|Aut X| = {rec.aut_x_order}, |Aut BX| = {rec.aut_bx_order}")
        lines.append(f"stable: {'yes' if rec.stable else 'no'}")
        lines.append(f"edge orbits of Aut BX: {rec.edge_orbits_bx}")
        if not rec.stable:
            p = instability_witness(x, cover_automorphism_group(x, timeout=args.timeout))
            labels = [f"{v},{i}" for i in range(2) for v in range(x.n)]
            lines.append(f"witness fixing (0,0) and moving (0,1): {p.cycle_notation(labels)}")
    if rec.wilson:
        for w in rec.wilson:
            lines.append(f"Wilson {w.describe()}  re-check: {'ok' if w.validate(x) else 'FAILED'}")
    else:
        lines.append("Wilson types: none")
    for m in rec.all_families:
        lines.append(f"family {m.describe()}  nontrivial={m.nontrivial}")
    print("\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="circstab", description="Stability of circulant graphs.")
    ap.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT, help="per-graph search cap in seconds")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="classify one graph")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--set", required=True, help='connection set, e.g. "2,3,8,9,10"')
    fmt = a.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON record (default)")
    fmt.add_argument("--csv", action="store_true")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("enumerate", help="classify every circulant in a range")
    e.add_argument("--n-min", type=int, required=True)
    e.add_argument("--n-max", type=int, required=True)
    e.add_argument("--valency", type=int, required=True)
    e.add_argument("--dedup-multiplier", action="store_true", help="keep one set per orbit of S -> uS")
    e.add_argument("--jobs", type=int, default=1)
    e.add_argument("--csv", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="check a classification theorem over a range")
    v.add_argument("--theorem", required=True, choices=sorted(THEOREMS))
    v.add_argument("--n-max", type=int, default=None)
    v.add_argument("--n-min", type=int, default=1)
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("certify", help="human-readable witness dump")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--set", required=True)
    c.set_defaults(func=cmd_certify)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
