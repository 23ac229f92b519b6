#!/usr/bin/env python3
"""Fit log2(mean_seconds)-vs-n slopes per (algorithm, instance kind) in a
timing CSV, and report the diagonal/dense mean ratio where both exist."""

import argparse
import sys
from collections import defaultdict
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ptmkit.bench import fit_log2_slope  # noqa: E402
from ptmkit.bundles import read_timings  # noqa: E402


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csv", type=Path)
    ap.add_argument("--min-points", type=int, default=3,
                    help="skip series with fewer sizes than this")
    args = ap.parse_args()

    series = defaultdict(dict)
    for rec in read_timings(args.csv.read_text()):
        series[(rec.algorithm, rec.instance_kind)][rec.n] = rec.mean_seconds

    print(f"{'algorithm':>12} {'kind':>9} {'sizes':>12} {'slope':>7}")
    for (algorithm, kind), by_n in sorted(series.items()):
        if len(by_n) < args.min_points:
            continue
        slope = fit_log2_slope(sorted(by_n.items()))
        sizes = f"{min(by_n)}..{max(by_n)}"
        print(f"{algorithm:>12} {kind:>9} {sizes:>12} {slope:7.3f}")

    for (algorithm, kind), by_n in sorted(series.items()):
        if kind != "diagonal":
            continue
        dense = series.get((algorithm, "dense"), {})
        for n in sorted(set(by_n) & set(dense)):
            ratio = by_n[n] / dense[n]
            print(f"{algorithm:>12} n={n}: diagonal/dense mean ratio {ratio:.3f}")


if __name__ == "__main__":
    main()
