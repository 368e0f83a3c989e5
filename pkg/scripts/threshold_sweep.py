"""Sufficient exponent versus the smallest exponent that actually works.

Writes CSV: n,epsilon,p_bound,p_empirical,ratio,gap_at_bound
"""

import argparse
import csv
import sys

import mpmath

from fibnorm.threshold import verify_threshold


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=60)
    ap.add_argument("--eps", default="1e-1,1e-3,1e-6")
    args = ap.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(("n", "epsilon", "p_bound", "p_empirical", "ratio", "gap_at_bound"))
    for n in range(2, args.n_max + 1):
        for eps in args.eps.split(","):
            rep = verify_threshold(n, eps, with_minimal=True)
            with mpmath.workprec(128):
                ratio = rep.p_bound / rep.p_empirical
            w.writerow((n, eps, mpmath.nstr(rep.p_bound, 12), mpmath.nstr(rep.p_empirical, 8),
                        mpmath.nstr(ratio, 6), mpmath.nstr(rep.gap_at_bound, 6)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
