"""Closed-form versus direct evaluation of a few Fibonacci norms.

Both strategies work on gmpy2 integers so the comparison is about the
algorithm, not about CPython's multiplication.  Every repetition starts
from nothing: the direct strategy re-runs the recurrence and the closed
form re-runs fast doubling, so no cache is shared between runs.
"""

from __future__ import annotations

import csv
import hashlib
import io
import random
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import gmpy2

from .core import fib_pair, int_str

QUANTITIES = ("q1norm", "q2norm_sq", "s1norm")
DIRECT, CLOSED = "direct_sum", "closed_form"
STRATEGIES = (DIRECT, CLOSED)
CSV_COLUMNS = ("quantity", "n", "strategy", "median_ns", "digest")


class StrategyDisagreement(AssertionError):
    """Two strategies returned different exact values for the same case."""


def _walk(n: int):
    a, b = gmpy2.mpz(0), gmpy2.mpz(1)
    for _ in range(n):
        a, b = b, a + b
        yield a


def direct_q1(n: int) -> int:
    s = gmpy2.mpz(0)
    for f in _walk(n):
        s += f
    return int(s)


def direct_q2(n: int) -> int:
    s = gmpy2.mpz(0)
    for f in _walk(n):
        s += f * f
    return int(s)


def direct_s1(n: int) -> int:
    # F_i appears n - |n - i| times in S(2)_n, i = 1 .. 2n-1
    s = gmpy2.mpz(0)
    for i, f in enumerate(_walk(2 * n - 1), start=1):
        s += (n - abs(n - i)) * f
    return int(s)


def closed_q1(n: int) -> int:
    """F_{n+2} - 1."""
    a, b = fib_pair(n + 1, gmp=True)
    return int(b - 1)


def closed_q2(n: int) -> int:
    """F_n F_{n+1}."""
    a, b = fib_pair(n, gmp=True)
    return int(a * b)


def closed_s1(n: int) -> int:
    """F_{2n+3} - 2 F_{n+3} + 2, from summing the rows of S(2)_n."""
    _, big = fib_pair(2 * n + 2, gmp=True)
    _, small = fib_pair(n + 2, gmp=True)
    return int(big - 2 * small + 2)


IMPLEMENTATIONS: dict[str, dict[str, Callable[[int], int]]] = {
    "q1norm": {DIRECT: direct_q1, CLOSED: closed_q1},
    "q2norm_sq": {DIRECT: direct_q2, CLOSED: closed_q2},
    "s1norm": {DIRECT: direct_s1, CLOSED: closed_s1},
}


def digest(value: int) -> str:
    return hashlib.sha256(int_str(value).encode()).hexdigest()


@dataclass(frozen=True)
class BenchCase:
    quantity: str
    n: int
    strategies: tuple[str, ...] = STRATEGIES
    repetitions: int = 3

    def __post_init__(self):
        if self.quantity not in QUANTITIES:
            raise ValueError(f"unknown quantity {self.quantity!r}; choose from {QUANTITIES}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.repetitions < 3:
            raise ValueError(f"need at least 3 repetitions, got {self.repetitions}")
        if not self.strategies or any(s not in STRATEGIES for s in self.strategies):
            raise ValueError(f"strategies must be drawn from {STRATEGIES}, got {self.strategies}")


@dataclass(frozen=True)
class BenchRow:
    quantity: str
    n: int
    strategy: str
    median_ns: int
    digest: str
    samples_ns: tuple[int, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class BenchReport:
    case: BenchCase
    rows: tuple[BenchRow, ...]
    value: int = field(repr=False)

    def median(self, strategy: str) -> int:
        return next(r.median_ns for r in self.rows if r.strategy == strategy)

    @property
    def speedup(self) -> float | None:
        """direct / closed median ratio, when both strategies ran."""
        names = {r.strategy for r in self.rows}
        if names != set(STRATEGIES):
            return None
        return self.median(DIRECT) / max(self.median(CLOSED), 1)


def run_bench(case: BenchCase, seed: int | None = 0) -> BenchReport:
    """Cross-check all strategies, then time them.

    Raises StrategyDisagreement before any timing if the values differ.
    The seed only shuffles the order in which strategies run inside a
    repetition; values never depend on it.
    """
    impls = IMPLEMENTATIONS[case.quantity]
    values = {s: impls[s](case.n) for s in case.strategies}
    digests = {s: digest(v) for s, v in values.items()}
    if len(set(values.values())) != 1:
        raise StrategyDisagreement(
            f"{case.quantity} at n={case.n}: strategies disagree, digests {digests}")

    rng = random.Random(seed)
    samples: dict[str, list[int]] = {s: [] for s in case.strategies}
    for _ in range(case.repetitions):
        order = list(case.strategies)
        rng.shuffle(order)
        for s in order:
            t0 = time.monotonic_ns()
            impls[s](case.n)
            samples[s].append(time.monotonic_ns() - t0)

    rows = tuple(
        BenchRow(case.quantity, case.n, s, int(statistics.median(samples[s])), digests[s],
                 tuple(samples[s]))
        for s in case.strategies
    )
    return BenchReport(case, rows, next(iter(values.values())))


def run_many(quantities: Sequence[str], sizes: Sequence[int],
             strategies: Sequence[str] = STRATEGIES, repetitions: int = 3,
             seed: int | None = 0) -> list[BenchReport]:
    return [run_bench(BenchCase(q, n, tuple(strategies), repetitions), seed)
            for q in quantities for n in sizes]


def to_csv(reports: Sequence[BenchReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rep in reports:
        for r in rep.rows:
            w.writerow((r.quantity, r.n, r.strategy, r.median_ns, r.digest))
    return buf.getvalue()
