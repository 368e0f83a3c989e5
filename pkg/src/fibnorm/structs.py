"""Fibonacci vectors q_n, q_{n,r} and the matrix families F(k)_n, Q(k)_n, S(k)_n."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import lru_cache

from .core import fib, int_str, sequence
from .norms import ExactVector

LOWER_F = "F"
SYMMETRIC_Q = "Q"
HANKEL_S = "S"
KINDS = (LOWER_F, SYMMETRIC_Q, HANKEL_S)


def build_q(n: int) -> ExactVector:
    """(F_1, ..., F_n)."""
    if n < 1:
        raise ValueError(f"q_n needs n >= 1, got {n}")
    return ExactVector(tuple(sequence(2).terms(1, n)))


def build_q_nr(n: int, r: int) -> ExactVector:
    """(F_{n+1}, ..., F_{n+r})."""
    if n < 0 or r < 1:
        raise ValueError(f"q_(n,r) needs n >= 0 and r >= 1, got ({n}, {r})")
    return ExactVector(tuple(sequence(2).terms(n + 1, n + r)))


@dataclass(frozen=True)
class FibMatrix:
    kind: str
    k: int
    n: int
    entries: tuple[tuple[int, ...], ...]

    def entry(self, i: int, j: int) -> int:
        """1-based access."""
        return self.entries[i - 1][j - 1]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j - 1] for row in self.entries)

    def is_symmetric(self) -> bool:
        e = self.entries
        return all(e[i][j] == e[j][i] for i in range(self.n) for j in range(i))

    def to_json(self) -> str:
        return json.dumps({
            "kind": self.kind,
            "k": self.k,
            "n": self.n,
            "entries": [[int_str(x) for x in row] for row in self.entries],
        })

    @classmethod
    def from_json(cls, text: str) -> "FibMatrix":
        d = json.loads(text)
        entries = tuple(tuple(int(x) for x in row) for row in d["entries"])
        return cls(d["kind"], d["k"], d["n"], entries)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in self.entries:
            w.writerow(int_str(x) for x in row)
        return buf.getvalue()


def _check(k: int, n: int) -> None:
    if k < 2:
        raise ValueError(f"k-Fibonacci order must be >= 2, got {k}")
    if n < 1:
        raise ValueError(f"matrix order must be >= 1, got {n}")


@lru_cache(maxsize=256)
def build_F(k: int, n: int) -> FibMatrix:
    """Lower triangular: f_ij = g(k)_{i-j+1} on and below the diagonal."""
    _check(k, n)
    g = sequence(k).terms(0, n)
    rows = tuple(tuple(g[i - j + 1] if i >= j else 0 for j in range(1, n + 1))
                 for i in range(1, n + 1))
    return FibMatrix(LOWER_F, k, n, rows)


@lru_cache(maxsize=64)
def build_Q(k: int, n: int) -> FibMatrix:
    """Symmetric Q(k)_n.

    q_ii = g_1^2 + ... + g_i^2, and to the right of the diagonal each entry
    is the sum of the k entries to its left in the same row (columns <= 0
    count as 0).  Entries left of the diagonal come from symmetry, so rows
    are filled top to bottom.
    """
    _check(k, n)
    g = sequence(k).terms(0, n)
    q = [[0] * n for _ in range(n)]
    diag = 0
    for i in range(n):
        diag += g[i + 1] ** 2
        row = q[i]
        for j in range(i):
            row[j] = q[j][i]
        row[i] = diag
        for j in range(i + 1, n):
            row[j] = sum(row[j - l] for l in range(1, k + 1) if j - l >= 0)
    return FibMatrix(SYMMETRIC_Q, k, n, tuple(tuple(r) for r in q))


@lru_cache(maxsize=256)
def build_S(k: int, n: int) -> FibMatrix:
    """Hankel: s_ij = g(k)_{i+j-1}."""
    _check(k, n)
    g = sequence(k).terms(0, 2 * n - 1)
    rows = tuple(tuple(g[i:i + n]) for i in range(1, n + 1))
    return FibMatrix(HANKEL_S, k, n, rows)


@dataclass(frozen=True)
class MultiplicityPattern:
    """How often F_i (i = 1..2n-1) occurs in S(2)_n: weights[i-1] = n - |n - i|."""

    n: int
    weights: tuple[int, ...]

    def items(self):
        return ((i, w) for i, w in enumerate(self.weights, start=1))


def multiplicities(n: int) -> MultiplicityPattern:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return MultiplicityPattern(n, tuple(n - abs(n - i) for i in range(1, 2 * n)))


def s_norm_power_sum(n: int, p: int) -> int:
    """||S(2)_n||_p^p = sum_i F_i^p (n - |n - i|)."""
    if p < 1:
        raise ValueError(f"p must be a positive integer, got {p}")
    return sum(w * fib(i) ** p for i, w in multiplicities(n).items())
