#!/usr/bin/env python3
"""Run the catalog sweep and print per-group counts plus any violations."""

import argparse
import time

from frevival.catalog import FAMILIES, RANDOM_SAMPLES, build_catalog, scan


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=16)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--samples", type=int, default=RANDOM_SAMPLES)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--families", default=",".join(FAMILIES))
    args = ap.parse_args()

    entries = build_catalog(args.max_order, tuple(args.families.split(",")))
    start = time.perf_counter()
    results = scan(entries, seed=args.seed, samples=args.samples, jobs=args.jobs)
    print(f"{'group':<20}{'|G|':>5}{'sets':>7}{'FR':>6}{'PST':>6}{'none':>7}{'integral':>10}")
    bad = 0
    for r in results:
        c = r.counts
        integral = sum(g.integral for g in r.graphs)
        print(f"{r.name:<20}{r.order:>5}{c['graphs']:>7}{c['fr']:>6}{c['pst']:>6}{c['none']:>7}{integral:>10}")
        for v in r.all_violations():
            bad += 1
            print("   violation:", v)
    print(f"\n{len(results)} groups, {bad} violations, {time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
