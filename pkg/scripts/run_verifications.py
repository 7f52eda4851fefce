#!/usr/bin/env python3
"""Run every named verification suite and write a combined JSON report.

Usage:
    python scripts/run_verifications.py [--seed 42] [--out verify_report.json]
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from rankgraph.verify import VERIFIERS, run_verifier


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--out", default="verify_report.json")
    ap.add_argument("--lemmas", nargs="*", default=sorted(VERIFIERS))
    args = ap.parse_args()

    results = []
    failed = False
    for lemma in args.lemmas:
        rep = run_verifier(lemma, seed=args.seed)
        print(rep.summary(), f"[{rep.elapsed_ms} ms]")
        results.append(rep.to_dict())
        failed = failed or not rep.passed
    with open(args.out, "w") as fh:
        json.dump(results, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(f"wrote {len(results)} reports to {args.out}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
