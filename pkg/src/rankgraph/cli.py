"""Command-line interface.

Subcommands: analyze, sweep, crown, verify, export-dot, catalog.
Exit codes: 0 on success, 1 when a run finds a theorem violation
(CRITICAL sweep flag or failed verification), 2 on usage or resource
errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time

from . import __version__
from .config import DEFAULT_LIMITS, Limits
from .perm_core import CapExceededError, GroupArgumentError
from . import catalog as cat
from .catalog import CatalogError
from .graphs import (
    analyze_graph,
    build_delta_d,
    build_gamma_d,
    build_lambda,
    components,
    diameter,
    export_dot,
)
from .group_structure import min_rank
from .sweep import (
    critical_flags,
    load_records,
    save_records,
    sweep,
)
from .verify import run_verifier


def _limits_from_args(args) -> Limits:
    if getattr(args, "cap_elements", None):
        return dataclasses.replace(DEFAULT_LIMITS,
                                   max_elements=args.cap_elements)
    return DEFAULT_LIMITS


def _entries(args):
    if getattr(args, "catalog", None):
        return cat.load_catalog(args.catalog)
    return cat.default_catalog()


def _write_out(args, payload: dict) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
            fh.write("\n")


def cmd_analyze(args) -> int:
    limits = _limits_from_args(args)
    entry = cat.find_entry(_entries(args), args.group)
    G = entry.group()
    if args.graph == "gamma":
        graph = build_gamma_d(G, args.d, limits)
    else:
        d = args.d
        if d is None:
            d = min_rank(G, limits).d
            if args.graph == "generating":
                d = 2
        graph = build_delta_d(G, d, limits)
    stats = analyze_graph(entry.id, graph, with_diameter=args.diameter)
    print(f"{entry.id}: |G| = {G.order}, {graph.kind} graph d={graph.meta.get('d')}: "
          f"{stats.n_vertices} vertices, {stats.n_edges} edges, "
          f"{stats.n_components} component(s)"
          + (f", diameter {stats.diameter}" if stats.diameter is not None else ""))
    _write_out(args, json.loads(stats.to_json()))
    if args.dot:
        export_dot(graph, args.dot)
    return 0


def cmd_sweep(args) -> int:
    limits = _limits_from_args(args)
    entries = _entries(args)
    policy = args.d_policy
    if args.d is not None:
        lo, hi = args.d, args.d_max if args.d_max is not None else args.d
        policy = lambda d_min: list(range(lo, hi + 1))
    skip = set()
    if args.resume and args.out:
        skip = {rec.group_id for rec in load_records(args.out)}
        if skip:
            print(f"resuming: {len(skip)} group(s) already recorded")
    records = sweep(entries, max_order=args.max_order, policy=policy,
                    with_diameter=args.diameter, jobs=args.jobs,
                    seed=args.seed, limits=limits, skip_ids=skip)
    if args.out:
        save_records(records, args.out, append=bool(args.resume))
    flags = critical_flags(records)
    analyzed = sum(1 for r in records if r.graphs)
    errors = [(r.group_id, r.error) for r in records if r.error]
    print(f"swept {len(records)} entries ({analyzed} analyzed); "
          f"{len(flags)} CRITICAL flag(s), {len(errors)} error(s)")
    for gid, flag in flags:
        print(f"  CRITICAL {gid}: {flag}")
    for gid, err in errors:
        print(f"  error {gid}: {err}")
    return 1 if flags else 0


def cmd_crown(args) -> int:
    from .crown_powers import (
        MonolithicGroup, delta_Lt, weak_connectivity,
        weak_connectivity_sampled,
    )
    limits = _limits_from_args(args)
    entry = cat.find_entry(_entries(args), args.L)
    mono = MonolithicGroup.from_group(entry.group(), entry.id, limits)
    t0 = time.perf_counter()
    if args.check == "delta":
        delta, table = delta_Lt(mono, args.t, verify=args.verify_witness,
                                limits=limits)[:2]
        payload = {"L": entry.id, "t": args.t, "delta": delta,
                   "orbit_count": delta, "omega": len(table.tuples),
                   "seed": args.seed,
                   "elapsed_ms": int((time.perf_counter() - t0) * 1000)}
        print(f"delta({entry.id}, {args.t}) = {delta} "
              f"(|Omega| = {len(table.tuples)})")
        _write_out(args, payload)
        return 0
    # weak connectivity
    if args.mode == "sampled":
        _, table = delta_Lt(mono, args.t, limits=limits)
        rep = weak_connectivity_sampled(mono, args.t, args.eta, table,
                                        samples=args.samples, seed=args.seed,
                                        limits=limits)
    else:
        table = None
        if args.eta > 1:
            _, table = delta_Lt(mono, args.t, limits=limits)
        rep = weak_connectivity(mono, args.t, args.eta, table=table,
                                limits=limits)
    delta = table.orbit_count if table is not None else None
    payload = {"L": entry.id, "t": args.t, "eta": args.eta, "delta": delta,
               "orbit_count": delta,
               "weak_connectivity": "pass" if rep.passed else "fail",
               "witnesses": [dataclasses.asdict(r) for r in rep.rows],
               "mode": rep.mode, "seed": args.seed,
               "elapsed_ms": int((time.perf_counter() - t0) * 1000)}
    print(rep.summary())
    _write_out(args, payload)
    return 0 if rep.passed else 1


def cmd_verify(args) -> int:
    limits = _limits_from_args(args)
    params = json.loads(args.params) if args.params else {}
    rep = run_verifier(args.lemma, seed=args.seed, limits=limits, **params)
    print(rep.summary())
    for fail in rep.failures[:10]:
        print(f"  failure: {fail}")
    _write_out(args, rep.to_dict())
    return 0 if rep.passed else 1


def cmd_export_dot(args) -> int:
    limits = _limits_from_args(args)
    entry = cat.find_entry(_entries(args), args.group)
    G = entry.group()
    d = args.d if args.d is not None else min_rank(G, limits).d
    if args.graph == "gamma":
        graph = build_gamma_d(G, d, limits)
    else:
        graph = build_delta_d(G, d, limits)
    export_dot(graph, args.out)
    print(f"wrote {graph.n_vertices} vertices / {graph.n_edges} edges "
          f"to {args.out}")
    return 0


def cmd_catalog(args) -> int:
    entries = cat.default_catalog()
    if args.max_order:
        entries = [e for e in entries if e.group().order <= args.max_order]
    if args.out:
        cat.save_catalog(entries, args.out)
        print(f"wrote {len(entries)} entries to {args.out}")
    else:
        for e in entries:
            print(f"{e.id}\tdegree {e.degree}\torder {e.group().order}"
                  + (f"\t[{', '.join(e.tags)}]" if e.tags else ""))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankgraph",
        description="Generating/rank graph connectivity and crown-based "
                    "power verification for small permutation groups.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--catalog", help="catalog JSON (default: builders)")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--out", help="write JSON output here")
        p.add_argument("--cap-elements", type=int,
                       help="override the element enumeration cap")

    p = sub.add_parser("analyze", help="analyze one group's graph")
    common(p)
    p.add_argument("--group", required=True)
    p.add_argument("--graph", choices=["rank", "generating", "gamma"],
                   default="rank")
    p.add_argument("--d", type=int)
    p.add_argument("--diameter", action="store_true")
    p.add_argument("--dot", help="also write DOT here")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("sweep", help="connectivity sweep over the catalog")
    common(p)
    p.add_argument("--max-order", type=int, default=500)
    p.add_argument("--d-policy", choices=["default", "theorem", "conjecture"],
                   default="default")
    p.add_argument("--d", type=int, help="fixed d range start (overrides policy)")
    p.add_argument("--d-max", type=int)
    p.add_argument("--diameter", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--resume", action="store_true",
                   help="skip group ids already present in --out")
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("crown", help="crown-based power checks")
    common(p)
    p.add_argument("--L", required=True, help="catalog id of the base group")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--eta", type=int, default=1)
    p.add_argument("--check", choices=["weak-conn", "delta"],
                   default="weak-conn")
    p.add_argument("--mode", choices=["exhaustive", "sampled"],
                   default="exhaustive")
    p.add_argument("--samples", type=int, default=60)
    p.add_argument("--verify-witness", action="store_true")
    p.set_defaults(fn=cmd_crown)

    p = sub.add_parser("verify", help="run one named verification suite")
    common(p)
    p.add_argument("--lemma", required=True)
    p.add_argument("--params", help="JSON dict of verifier parameters")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("export-dot", help="write a graph as DOT")
    common(p)
    p.add_argument("--group", required=True)
    p.add_argument("--graph", choices=["rank", "gamma"], default="rank")
    p.add_argument("--d", type=int)
    p.set_defaults(fn=cmd_export_dot)

    p = sub.add_parser("catalog", help="list or export the built-in catalog")
    common(p)
    p.add_argument("--max-order", type=int)
    p.set_defaults(fn=cmd_catalog)

    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors already; version/help exit 0
        return int(e.code or 0)
    try:
        return args.fn(args)
    except (CatalogError, GroupArgumentError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CapExceededError as e:
        print(f"resource cap: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
