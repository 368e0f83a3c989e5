"""Fibonacci and k-Fibonacci numbers as exact Python integers.

Two independent routes to F_n are provided: the defining recurrence
(cached in :class:`KFibSequence`) and fast doubling.  They are kept
separate on purpose so that one can serve as an oracle for the other.
"""

from __future__ import annotations

import heapq
import math
import os
import sys
import threading
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import gmpy2
import mpmath

DEFAULT_PRECISION = 128
PRECISION_ENV = "FIBNORM_PRECISION"

# fib() serves indices up to this bound from the shared cache; beyond it a
# sliding window is used so huge n does not pin O(n^2) bits of memory.
_CACHE_LIMIT = 20_000

LOG2_PHI = math.log2((1 + math.sqrt(5)) / 2)


class PrecisionLossError(ArithmeticError):
    """Requested float result cannot be guaranteed at the working precision."""


def resolve_precision(prec: int | None = None) -> int:
    """Working precision in bits: explicit value, else $FIBNORM_PRECISION, else 128."""
    if prec is None:
        prec = int(os.environ.get(PRECISION_ENV, DEFAULT_PRECISION))
    if prec < 16:
        raise ValueError(f"precision must be at least 16 bits, got {prec}")
    return prec


@contextmanager
def unlimited_int_str():
    # Python >= 3.10.7 caps int<->str conversion at 4300 digits by default.
    get = getattr(sys, "get_int_max_str_digits", None)
    if get is None:
        yield
        return
    old = get()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(old)


def int_str(x: int) -> str:
    """Decimal string of an arbitrarily large integer."""
    with unlimited_int_str():
        return str(x)


def exact_product(values: Iterable[int]) -> int:
    """Exact product: repeated factors become powers, then smallest-first GMP multiplication."""
    xs = list(values)
    if len(xs) < 64:
        return int(math.prod(xs))
    counts = Counter(xs)
    if 0 in counts:
        return 0
    # multiply the two smallest factors first, so that operand sizes stay balanced
    heap = [(f.bit_length(), i, f) for i, f in
            enumerate(gmpy2.mpz(v) ** c for v, c in counts.items())]
    heapq.heapify(heap)
    tick = len(heap)
    while len(heap) > 1:
        _, _, a = heapq.heappop(heap)
        _, _, b = heapq.heappop(heap)
        c = a * b
        heapq.heappush(heap, (c.bit_length(), tick, c))
        tick += 1
    return int(heap[0][2])


class KFibSequence:
    """Lazily extended cache of g(k)_1, g(k)_2, ...

    ``cache[0]`` holds 0 so that the non-positive-index convention of the
    recurrence is a plain list lookup.  Extension happens under a lock;
    readers only ever see a fully written prefix.
    """

    def __init__(self, k: int = 2):
        if k < 2:
            raise ValueError(f"k-Fibonacci order must be >= 2, got {k}")
        self.k = k
        seed = [0] * (k - 2) + [1, 1]
        self._cache: list[int] = [0] + seed
        self._window_sum = sum(seed)
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._cache) - 1

    def _extend_to(self, n: int) -> None:
        with self._lock:
            cache, k = self._cache, self.k
            s = self._window_sum
            while len(cache) <= n:
                m = len(cache)
                # s is sum of cache[m-k .. m-1]; indices <= 0 count as 0
                cache.append(s)
                s += s - (cache[m - k] if m - k >= 1 else 0)
            self._window_sum = s

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise IndexError("negative indices are not part of the sequence")
        if n >= len(self._cache):
            self._extend_to(n)
        return self._cache[n]

    def terms(self, start: int, stop: int) -> list[int]:
        """g(k)_start .. g(k)_stop inclusive."""
        if start < 0 or stop < start - 1:
            raise ValueError(f"bad index window [{start}, {stop}]")
        if stop >= len(self._cache):
            self._extend_to(stop)
        return self._cache[start : stop + 1]


_SEQUENCES: dict[int, KFibSequence] = {}
_SEQ_LOCK = threading.Lock()


def sequence(k: int = 2) -> KFibSequence:
    """Shared cache for order k."""
    seq = _SEQUENCES.get(k)
    if seq is None:
        with _SEQ_LOCK:
            seq = _SEQUENCES.setdefault(k, KFibSequence(k))
    return seq


def fib(n: int) -> int:
    """F_n by the defining recurrence, with F_0 = 0 and F_1 = F_2 = 1."""
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")
    if n <= _CACHE_LIMIT:
        return sequence(2)[n]
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def _doubling(n: int, one=1) -> tuple[int, int]:
    if n == 0:
        return one - one, one
    a, b = _doubling(n >> 1, one)
    c = a * (2 * b - a)
    d = a * a + b * b
    if n & 1:
        return d, c + d
    return c, d


@lru_cache(maxsize=4096)
def fib_fast_doubling(n: int) -> int:
    """F_n via F_2m = F_m(2F_{m+1} - F_m), F_2m+1 = F_m^2 + F_{m+1}^2."""
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")
    return _doubling(n)[0]


def fib_pair(n: int, gmp: bool = False) -> tuple[int, int]:
    """(F_n, F_{n+1}) in one fast-doubling pass.

    With ``gmp=True`` the arithmetic runs on gmpy2.mpz and mpz values come back.
    """
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")
    return _doubling(n, gmpy2.mpz(1) if gmp else 1)


def kfib(k: int, n: int) -> int:
    """g(k)_n: k-2 zeros, two ones, then each term sums the previous k."""
    if k < 2:
        raise ValueError(f"k-Fibonacci order must be >= 2, got {k}")
    if n < 1:
        raise ValueError(f"k-Fibonacci index starts at 1, got {n}")
    return sequence(k)[n]


@dataclass(frozen=True)
class GoldenConstants:
    phi: mpmath.mpf
    sqrt5: mpmath.mpf
    prec: int


def golden_constants(prec: int | None = None) -> GoldenConstants:
    prec = resolve_precision(prec)
    with mpmath.workprec(prec):
        sqrt5 = mpmath.sqrt(5)
        phi = (1 + sqrt5) / 2
    return GoldenConstants(phi=phi, sqrt5=sqrt5, prec=prec)


def nearest_int(x: mpmath.mpf) -> int:
    """Exact round-half-up of a finite mpf, independent of the ambient precision."""
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
    if not mpmath.isfinite(x):
        raise ValueError(f"cannot round {x}")
    sign, man, exp, _ = x._mpf_
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return man << exp
    return (man + (1 << (-exp - 1))) >> -exp


def binet_bits_required(n: int) -> int:
    return math.ceil(n * LOG2_PHI) + 32


def binet_approx(n: int, prec: int | None = None) -> mpmath.mpf:
    """(phi^n - (1 - phi)^n) / sqrt(5) at the working precision.

    Raises PrecisionLossError when the precision cannot carry
    n*log2(phi) + 32 bits, i.e. when rounding to F_n is no longer assured.
    """
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")
    prec = resolve_precision(prec)
    need = binet_bits_required(n)
    if need > prec:
        raise PrecisionLossError(
            f"Binet value for n={n} needs {need} bits, working precision is {prec}"
        )
    g = golden_constants(prec)
    with mpmath.workprec(prec):
        return (g.phi**n - (1 - g.phi) ** n) / g.sqrt5
