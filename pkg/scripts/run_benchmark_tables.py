#!/usr/bin/env python3
"""Desk-scale benchmark tables: S-quantiles and P-proportions per model.

Defaults mirror the full experiment layout (n=1500, p=2000, CR-SIS vs SIS vs
bandit variants) but with fewer replicates so a laptop finishes in minutes.
Add dc-sis only at reduced n: its naive O(n^2) scorer is slow at n=1500.

Examples:
    python3 scripts/run_benchmark_tables.py --models 1a,1b --replicates 50
    python3 scripts/run_benchmark_tables.py --models 2c --n 300 --p 500 \
        --methods cr-sis,dc-sis --replicates 20
"""

import argparse
import sys
from pathlib import Path

from rankscreen import MethodSpec, SeedSpec, SimModelSpec, run_replicates


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--models", default="1a,1b,1c,1d,2a,2c,2d,2e")
    ap.add_argument("--n", type=int, default=1500)
    ap.add_argument("--p", type=int, default=2000)
    ap.add_argument("--replicates", type=int, default=50)
    ap.add_argument("--methods", default="cr-sis,sis,bandit-cr-sis")
    ap.add_argument("--alpha0", default="0.15,0.35,0.70")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out-dir", default=None, help="also write one JSON report per model here")
    args = ap.parse_args()

    methods = []
    for kind in args.methods.split(","):
        kind = kind.strip()
        if kind == "bandit-cr-sis":
            methods.extend(MethodSpec(kind, float(a)) for a in args.alpha0.split(","))
        else:
            methods.append(MethodSpec(kind))

    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    for mid in args.models.split(","):
        spec = SimModelSpec(mid.strip(), n=args.n, p=args.p, seed=SeedSpec(args.seed))
        report = run_replicates(spec, methods, args.replicates, base_seed=SeedSpec(args.seed), time_methods=True)
        print(report.render_table())
        print()
        if out_dir:
            (out_dir / f"bench_{mid.strip()}.json").write_text(report.to_json() + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
