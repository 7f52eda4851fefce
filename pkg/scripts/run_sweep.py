#!/usr/bin/env python3
"""Run the full connectivity sweep over the built-in catalog.

Writes JSON-lines records and prints a per-group summary.  Equivalent to
`rankgraph sweep`, kept as a script entry point for experiment runs.

Usage:
    python scripts/run_sweep.py [--max-order N] [--policy P] [--jobs J]
                                [--out results.jsonl] [--diameter]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from rankgraph.catalog import default_catalog
from rankgraph.sweep import critical_flags, save_records, sweep


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-order", type=int, default=500)
    ap.add_argument("--policy", default="default",
                    choices=["default", "theorem", "conjecture"])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--diameter", action="store_true")
    ap.add_argument("--out", default="sweep_results.jsonl")
    args = ap.parse_args()

    records = sweep(default_catalog(), max_order=args.max_order,
                    policy=args.policy, with_diameter=args.diameter,
                    jobs=args.jobs, seed=args.seed)
    save_records(records, args.out, append=False)
    for rec in records:
        if rec.skipped:
            print(f"{rec.group_id:12s} |G|={rec.order:<6d} skipped: {rec.skipped}")
        elif rec.error:
            print(f"{rec.group_id:12s} |G|={rec.order:<6d} error: {rec.error}")
        else:
            parts = ", ".join(
                f"d={g.d}: {'conn' if g.connected else 'DISCONN'}"
                + (f" diam={g.diameter}" if g.diameter is not None else "")
                for g in rec.graphs)
            print(f"{rec.group_id:12s} |G|={rec.order:<6d} d(G)={rec.d_min}  {parts}")
    flags = critical_flags(records)
    print(f"\n{len(records)} records -> {args.out}; "
          f"{len(flags)} CRITICAL flag(s)")
    return 1 if flags else 0


if __name__ == "__main__":
    sys.exit(main())
