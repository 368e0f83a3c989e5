"""Time closed forms against direct summation and print the CSV table.

    python scripts/bench_closed_vs_direct.py --sizes 1000,10000,100000
"""

import argparse
import sys

from fibnorm import bench


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1000,10000,100000")
    ap.add_argument("--quantities", default=",".join(bench.QUANTITIES))
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    reports = bench.run_many(args.quantities.split(","), sizes, repetitions=args.reps, seed=args.seed)
    sys.stdout.write(bench.to_csv(reports))
    for rep in reports:
        print(f"# {rep.case.quantity} n={rep.case.n}: direct/closed = {rep.speedup:.1f}",
              file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
