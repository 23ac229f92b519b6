#!/usr/bin/env python3
"""Run the standard dense/diagonal timing sweep and merge it into a CSV.

Typical session:

    python3 scripts/run_benchmarks.py --qubits 1..6 --csv runs/timings.csv
    python3 scripts/fit_scaling.py runs/timings.csv
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ptmkit.bench import ALGORITHMS, BenchConfig, run_bench, upsert_records  # noqa: E402
from ptmkit.bundles import read_timings, write_timings  # noqa: E402


def parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("..")
    return (int(lo), int(hi or lo))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--algorithms", default="all",
                    help="comma-separated names, or 'all' (default)")
    ap.add_argument("--qubits", type=parse_range, default=(1, 5), metavar="LO..HI")
    ap.add_argument("--kinds", default="dense,diagonal")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repetitions", type=int, default=3)
    ap.add_argument("--warmup", type=int, default=1)
    ap.add_argument("--csv", type=Path, default=None,
                    help="merge records into this file (stdout if omitted)")
    args = ap.parse_args()

    names = ALGORITHMS if args.algorithms == "all" else tuple(args.algorithms.split(","))
    records = []
    for kind in args.kinds.split(","):
        config = BenchConfig(
            algorithms=names,
            qubits=args.qubits,
            instance_kind=kind,
            seed=args.seed,
            repetitions=args.repetitions,
            warmup=args.warmup,
        )
        for rec in run_bench(config):
            records.append(rec)
            print(
                f"{rec.algorithm:>10}  n={rec.n}  {rec.instance_kind:>8}  "
                f"mean {rec.mean_seconds:.6f}s  std {rec.std_seconds:.6f}s",
                file=sys.stderr,
            )

    if args.csv is None:
        print(write_timings(records), end="")
        return
    existing = read_timings(args.csv.read_text()) if args.csv.exists() else []
    merged = upsert_records(existing, records)
    args.csv.parent.mkdir(parents=True, exist_ok=True)
    args.csv.write_text(write_timings(merged))
    print(f"{len(merged)} record(s) in {args.csv}", file=sys.stderr)


if __name__ == "__main__":
    main()
