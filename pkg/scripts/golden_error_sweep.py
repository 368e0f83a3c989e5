"""Error of the phi * F_m^2 stand-in for F_m F_{m+1} in the parallelogram sum.

Writes CSV: n,r,d,exact_digits,abs_err,rel_err.  The absolute error hovers
near a constant while the exact value grows like phi^(2n), so the relative
error falls off geometrically.
"""

import argparse
import csv
import sys

import mpmath

from fibnorm.distances import golden_approx


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r", type=int, default=3)
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--n-min", type=int, default=1)
    ap.add_argument("--n-max", type=int, default=80)
    args = ap.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(("n", "r", "d", "exact_digits", "abs_err", "rel_err"))
    for n in range(args.n_min, args.n_max + 1):
        g = golden_approx(n, args.r, args.d)
        w.writerow((n, args.r, args.d, len(str(g.exact)),
                    mpmath.nstr(g.abs_err, 10), mpmath.nstr(g.rel_err, 6)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
