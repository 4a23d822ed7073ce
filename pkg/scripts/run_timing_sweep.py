#!/usr/bin/env python3
"""Wall-time sweeps of the screeners along an n- or p-grid.

Reproduces the timing comparison's direction: CR-SIS grows roughly like
n log n while the bandit variant is sublinear in n. Absolute seconds are
machine-dependent; look at the printed log-log slopes and ratios.

Examples:
    python3 scripts/run_timing_sweep.py --axis n --grid 12500,25000,50000,100000 --fixed 500
    python3 scripts/run_timing_sweep.py --axis p --grid 250,500,1000,2000 --fixed 2000
"""

import argparse
import sys

from rankscreen import MethodSpec, SeedSpec, timing_sweep


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--axis", choices=("n", "p"), default="n")
    ap.add_argument("--grid", default="12500,25000,50000,100000")
    ap.add_argument("--fixed", type=int, default=500)
    ap.add_argument("--d", type=int, default=20)
    ap.add_argument("--methods", default="cr-sis,bandit-cr-sis")
    ap.add_argument("--alpha0", default="0.15,0.35,0.70")
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None, help="write the timing CSV here")
    args = ap.parse_args()

    methods = []
    for kind in args.methods.split(","):
        kind = kind.strip()
        if kind == "bandit-cr-sis":
            methods.extend(MethodSpec(kind, float(a)) for a in args.alpha0.split(","))
        else:
            methods.append(MethodSpec(kind))
    grid = [int(g) for g in args.grid.split(",")]

    report = timing_sweep(
        args.axis, grid, fixed=args.fixed, d=args.d, methods=methods,
        repeats=args.repeats, base_seed=SeedSpec(args.seed),
    )
    lines = ["method,axis_value,mean_seconds,stderr_seconds"]
    for row in report.rows:
        print(f"{row.method:<30} {args.axis}={row.axis_value:<8} "
              f"median {row.median_seconds:8.3f}s   mean {row.mean_seconds:8.3f}s +- {row.stderr_seconds:.3f}")
        lines.append(f"{row.method},{row.axis_value},{row.mean_seconds},{row.stderr_seconds}")
    for method, slope in report.slopes().items():
        if slope is not None:
            print(f"log-log slope [{method}]: {slope:.3f}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
