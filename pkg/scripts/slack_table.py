#!/usr/bin/env python3
"""Print the minimum slack (observed - required) per (m, k) for both parts,
plus how often the lower bound is met with equality."""

import argparse
from collections import defaultdict

from digitbounds.conjecture import Part, sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, nargs=2, default=(2, 12), metavar=("LO", "HI"))
    ap.add_argument("--k", type=int, nargs=2, default=(1, 6), metavar=("LO", "HI"))
    ap.add_argument("--n", type=int, nargs=2, default=(1, 2000), metavar=("LO", "HI"))
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    for part in (Part.I, Part.II):
        records, summary = sweep(part, args.m, args.k, args.n, workers=args.workers)
        slack = defaultdict(lambda: [None, 0])
        for r in records:
            cell = slack[r.instance.m, r.instance.k]
            cell[0] = r.slack if cell[0] is None else min(cell[0], r.slack)
            cell[1] += r.slack == 0
        print(f"part {part.value}: {summary.total} instances, {summary.failures} failures")
        ks = range(args.k[0], args.k[1] + 1)
        print("   m | " + " ".join(f"k={k:<9}" for k in ks))
        for m in range(args.m[0], args.m[1] + 1):
            cells = " ".join(f"{slack[m, k][0]:>3}/{slack[m, k][1]:<6}" for k in ks)
            print(f"{m:>4} | {cells}")
        print("  (min slack / equality count)\n")


if __name__ == "__main__":
    main()
