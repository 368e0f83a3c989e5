"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line in RESULTS; conftest prints them at the
end of the run.  ``python tests/test_acceptance.py`` runs the same checks
without pytest and prints the lines directly.
"""

import json
import math
import subprocess
import sys
import time

import mpmath
import pytest

from fibnorm import bench, distances
from fibnorm.core import binet_approx, fib, fib_fast_doubling, nearest_int
from fibnorm.norms import POS_INF_ORDER, NormOrder, pnorm
from fibnorm.structs import build_F, build_Q, build_q, build_S
from fibnorm.threshold import gap, threshold_p

RESULTS: dict[int, tuple[bool, str]] = {}

ERRATA = {"Eq6.cubes", "P21.F-one", "P34.S-zero", "Eq11.Q"}
GRID = (0.5, 1, 1.5, 2, 3, 5, 10, 50)
REL = 1e-9


def record(key: int, ok: bool, detail: str) -> None:
    RESULTS[key] = (ok, detail)
    print(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
    assert ok, detail


def _order(p):
    return NormOrder.integer(p) if float(p).is_integer() else NormOrder.real(p)


# 1 ------------------------------------------------------------------------

_SUITE = """
import json, time
t = time.perf_counter()
from fibnorm import identities as I
reports = I.verify_all()
elapsed = time.perf_counter() - t
print(json.dumps({"elapsed": elapsed,
                  "status": {r.id: r.status for r in reports}}))
"""


def test_1_identity_suite():
    # a fresh interpreter so no cache warmed by other tests flatters the time
    res = subprocess.run([sys.executable, "-c", _SUITE], capture_output=True, text=True,
                         timeout=600, check=True)
    doc = json.loads(res.stdout.strip().splitlines()[-1])
    status, elapsed = doc["status"], doc["elapsed"]
    refuted = sorted(i for i, s in status.items() if s == "refuted")
    errata = {i for i, s in status.items() if s == "verified-with-erratum"}
    ok = elapsed < 60 and not refuted and errata == ERRATA
    record(1, ok, f"{len(status)} identities in {elapsed:.1f}s, refuted={refuted}, "
                  f"errata={sorted(errata)}")


# 2 ------------------------------------------------------------------------

def test_2_worked_matrices():
    f5 = ((1, 0, 0, 0, 0), (1, 1, 0, 0, 0), (2, 1, 1, 0, 0), (3, 2, 1, 1, 0), (5, 3, 2, 1, 1))
    q5 = ((1, 1, 2, 3, 5), (1, 2, 3, 5, 8), (2, 3, 6, 9, 15), (3, 5, 9, 15, 24),
          (5, 8, 15, 24, 40))
    counts: dict[int, int] = {}
    for row in build_S(2, 5).entries:
        for x in row:
            counts[x] = counts.get(x, 0) + 1
    # F_1 = F_2 = 1 share a value, so their weights 1 and 2 merge
    pattern = {1: 1 + 2, 2: 3, 3: 4, 5: 5, 8: 4, 13: 3, 21: 2, 34: 1}
    ok_f = build_F(2, 5).entries == f5
    ok_q = build_Q(2, 5).entries == q5
    ok_s = counts == pattern
    record(2, ok_f and ok_q and ok_s, f"F(2)_5 {ok_f}, Q(2)_5 {ok_q}, S(2)_5 pattern {ok_s}")


# 3 ------------------------------------------------------------------------

def test_3_threshold_gap():
    t0 = time.perf_counter()
    worst, bad = 0.0, []
    for n in range(2, 61):
        q = build_q(n)
        for eps in ("1e-1", "1e-3", "1e-6"):
            g = gap(q, threshold_p(n, eps))
            with mpmath.workprec(128):
                ratio = g / mpmath.mpf(eps)
            worst = max(worst, float(ratio))
            if ratio > 1 + REL:
                bad.append((n, eps))
    elapsed = time.perf_counter() - t0
    record(3, not bad and elapsed < 10,
           f"177 cases in {elapsed:.2f}s, max gap/eps = {worst:.6f}, violations={bad}")


# 4 ------------------------------------------------------------------------

def test_4_monotonicity_and_holder():
    bad = []
    with mpmath.workprec(128):
        for n in range(1, 51):
            q = build_q(n)
            norms = [pnorm(q, _order(p)).float_value for p in GRID] + [pnorm(q, POS_INF_ORDER).float_value]
            orders = list(GRID) + [math.inf]
            for a, b in zip(norms, norms[1:]):
                if b > a * (1 + REL):
                    bad.append(("monotone", n))
            for i, p in enumerate(orders):
                for j in range(i + 1, len(orders)):
                    s = orders[j]
                    expo = mpmath.mpf(1) / p - (0 if s == math.inf else mpmath.mpf(1) / s)
                    if norms[i] > mpmath.mpf(n) ** expo * norms[j] * (1 + REL):
                        bad.append(("holder", n, p, s))
    record(4, not bad, f"n = 1..50 on the p grid plus inf, violations={bad[:5]}")


# 5 ------------------------------------------------------------------------

def test_5_distance_closed_forms():
    bad = []
    for n in range(0, 61):
        for r in range(1, 21):
            for p in (1, 2, 3):
                for d in (2, 3):
                    if distances.distance_closed(n, r, d, p) != distances.distance_direct(n, r, d, p):
                        bad.append(("closed", n, r, d, p))
            for d in range(1, 6):
                if not distances.parallelogram_check(n, r, d).holds:
                    bad.append(("parallelogram", n, r, d))
                if not distances.sum_diff_one_norm(n, r, d).agree:
                    bad.append(("sum-diff", n, r, d))
    record(5, not bad, f"n 0..60, r 1..20, p 1..3, d 1..5: mismatches={bad[:5]}")


# 6 ------------------------------------------------------------------------

def test_6_golden_approximation():
    errs = {n: abs(distances.golden_approx(n, 3, 2).rel_err) for n in range(5, 81)}
    monotone = all(errs[n + 1] < errs[n] for n in range(5, 80))
    small = all(errs[n] < 1e-3 for n in range(10, 81))
    g = distances.golden_approx(1, 3, 2)
    # the worked value is quoted as "approximately 220.07"; read that at the
    # criterion's own 1e-3 relative scale
    worked = g.exact == 224 and abs(g.approx - mpmath.mpf("220.07")) / 220.07 < 1e-3
    record(6, monotone and small and worked,
           f"monotone {monotone}, below 1e-3 for n >= 10 {small} (err at n=10: {float(errs[10]):.2e}), "
           f"(1,3,2): exact {g.exact}, approx {mpmath.nstr(g.approx, 10)}")


# 7 ------------------------------------------------------------------------

def test_7_core_cross_checks():
    doubling = all(fib(n) == fib_fast_doubling(n) for n in range(0, 10_001))
    cassini = all(fib(n - 1) * fib(n + 1) - fib(n) ** 2 == (-1) ** n for n in range(1, 301))
    binet = all(nearest_int(binet_approx(n, 128)) == fib(n) for n in range(0, 91))
    record(7, doubling and cassini and binet,
           f"doubling n<=10000 {doubling}, Cassini n<=300 {cassini}, Binet n<=90 {binet}")


# 8 ------------------------------------------------------------------------

@pytest.mark.slow
def test_8_benchmark():
    n = 100_000
    parts, ok = [], True
    for quantity in ("q1norm", "q2norm_sq"):
        rep = bench.run_bench(bench.BenchCase(quantity, n, repetitions=3))
        same = len({r.digest for r in rep.rows}) == 1
        faster = rep.median(bench.CLOSED) < rep.median(bench.DIRECT)
        ok = ok and same and faster
        target = "meets" if rep.speedup >= 5 else "below"
        parts.append(f"{quantity} x{rep.speedup:.0f} ({target} 5x target, digests equal {same})")
    record(8, ok, f"n = {n}: " + "; ".join(parts))


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
