"""Run every registered identity over the default ranges and write a JSON report.

    python scripts/run_identity_suite.py --out results/identities.json
"""

import argparse
import json
import sys
import time
from pathlib import Path

from fibnorm import identities


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=None)
    ap.add_argument("--max-n", type=int, default=None, help="shrink the n range for a quick run")
    args = ap.parse_args()

    ranges = {"n": range(1, args.max_n + 1)} if args.max_n else None
    t0 = time.perf_counter()
    reports = identities.verify_all(ranges)
    elapsed = time.perf_counter() - t0

    for r in reports:
        print(f"{r.id:<24} {r.status:<22} {r.checked:>7} checked")
    refuted = [r.id for r in reports if r.status == identities.REFUTED]
    print(f"\n{len(reports)} identities in {elapsed:.1f}s; refuted: {refuted or 'none'}")

    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps({"elapsed_s": elapsed,
                                        "reports": [r.to_json() for r in reports]}, indent=1))
    return 1 if refuted else 0


if __name__ == "__main__":
    sys.exit(main())
