"""p-distances between shifted (n,r)-Fibonacci vectors.

x = q_{n+d,r} and y = q_{n,r}.  Closed forms exist for the shifts d = 2
and d = 3 only: F_{m+d} - F_m = F_d F_{m+1} holds for those two shifts and
fails for the others, so general d is evaluated directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import mpmath

from .core import fib as F, golden_constants, resolve_precision
from .norms import ExactVector, power_sum
from .structs import build_q_nr

CLOSED_FORM_SHIFTS = (2, 3)


@dataclass(frozen=True)
class ShiftedPair:
    n: int
    r: int
    d: int

    def __post_init__(self):
        if self.n < 0 or self.r < 1 or self.d < 1:
            raise ValueError(f"need n >= 0, r >= 1, d >= 1, got {self}")

    @cached_property
    def x(self) -> ExactVector:
        return build_q_nr(self.n + self.d, self.r)

    @cached_property
    def y(self) -> ExactVector:
        return build_q_nr(self.n, self.r)

    @property
    def dominates(self) -> bool:
        """x_i >= y_i for every i, so |x_i - y_i| = x_i - y_i."""
        return all(a >= b for a, b in zip(self.x, self.y))


def _check(n: int, r: int, p: int) -> None:
    if n < 0 or r < 1 or p < 1:
        raise ValueError(f"need n >= 0, r >= 1, p >= 1, got ({n}, {r}, {p})")


def distance_direct(n: int, r: int, d: int, p: int) -> int:
    """||q_{n+d,r} - q_{n,r}||_p^p by entrywise subtraction."""
    pair = ShiftedPair(n, r, d)
    if p < 1:
        raise ValueError(f"need p >= 1, got {p}")
    return power_sum(pair.x - pair.y, p)


def distance_closed_d2(n: int, r: int, p: int) -> int:
    _check(n, r, p)
    return sum(F(n + i + 1) ** p for i in range(1, r + 1))


def distance_closed_d3(n: int, r: int, p: int) -> int:
    _check(n, r, p)
    return F(3) ** p * sum(F(n + i + 1) ** p for i in range(1, r + 1))


def distance_closed(n: int, r: int, d: int, p: int) -> int | None:
    if d == 2:
        return distance_closed_d2(n, r, p)
    if d == 3:
        return distance_closed_d3(n, r, p)
    return None


def shift_identity_holds(m: int, d: int) -> bool:
    """F_{m+d} - F_m == F_d * F_{m+1}."""
    return F(m + d) - F(m) == F(d) * F(m + 1)


@dataclass(frozen=True)
class SumDiffReport:
    n: int
    r: int
    d: int
    sum_norm: int
    diff_norm: int
    closed_form: int

    @property
    def direct(self) -> int:
        return self.sum_norm + self.diff_norm

    @property
    def agree(self) -> bool:
        return self.direct == self.closed_form


def sum_diff_one_norm(n: int, r: int, d: int) -> SumDiffReport:
    """||x+y||_1 + ||x-y||_1 directly and as 2(F_{n+r+d+2} - F_{n+d+2})."""
    pair = ShiftedPair(n, r, d)
    s = power_sum(pair.x + pair.y, 1)
    t = power_sum(pair.x - pair.y, 1)
    closed = 2 * (F(n + r + d + 2) - F(n + d + 2))
    return SumDiffReport(n, r, d, s, t, closed)


@dataclass(frozen=True)
class ParallelogramReport:
    n: int
    r: int
    d: int
    sum_sq: int
    diff_sq: int
    norm_x_sq: int
    norm_y_sq: int
    norm_x_sq_closed: int
    norm_y_sq_closed: int

    @property
    def lhs(self) -> int:
        return self.sum_sq + self.diff_sq

    @property
    def rhs(self) -> int:
        return 2 * (self.norm_x_sq + self.norm_y_sq)

    @property
    def rhs_closed(self) -> int:
        return 2 * (self.norm_x_sq_closed + self.norm_y_sq_closed)

    @property
    def holds(self) -> bool:
        return (self.lhs == self.rhs == self.rhs_closed
                and self.norm_x_sq == self.norm_x_sq_closed
                and self.norm_y_sq == self.norm_y_sq_closed)


def parallelogram_check(n: int, r: int, d: int) -> ParallelogramReport:
    pair = ShiftedPair(n, r, d)
    sq = lambda v: power_sum(v, 2)  # noqa: E731
    a, b = n + r + d, n + d
    return ParallelogramReport(
        n, r, d,
        sum_sq=sq(pair.x + pair.y),
        diff_sq=sq(pair.x - pair.y),
        norm_x_sq=sq(pair.x),
        norm_y_sq=sq(pair.y),
        norm_x_sq_closed=F(a) * F(a + 1) - F(b) * F(b + 1),
        norm_y_sq_closed=F(n + r) * F(n + r + 1) - F(n) * F(n + 1),
    )


@dataclass(frozen=True)
class GoldenReport:
    n: int
    r: int
    d: int
    exact: int
    approx: mpmath.mpf
    abs_err: mpmath.mpf
    rel_err: mpmath.mpf


def golden_approx(n: int, r: int, d: int, prec: int | None = None) -> GoldenReport:
    """2(||x||^2 + ||y||^2) against 2 phi (F_{n+r+d}^2 - F_{n+d}^2 + F_{n+r}^2 - F_n^2).

    Uses F_m F_{m+1} ~ phi F_m^2.  Errors are signed: exact - approx.
    """
    prec = resolve_precision(prec)
    ShiftedPair(n, r, d)
    a, b = n + r + d, n + d
    # exact side through the F-product forms of ||x||^2 and ||y||^2
    exact = 2 * (F(a) * F(a + 1) - F(b) * F(b + 1) + F(n + r) * F(n + r + 1) - F(n) * F(n + 1))
    phi = golden_constants(prec).phi
    core = F(n + r + d) ** 2 - F(n + d) ** 2 + F(n + r) ** 2 - F(n) ** 2
    with mpmath.workprec(prec):
        approx = 2 * phi * core
        abs_err = mpmath.mpf(exact) - approx
        rel_err = abs_err / exact
    return GoldenReport(n, r, d, exact, approx, abs_err, rel_err)
