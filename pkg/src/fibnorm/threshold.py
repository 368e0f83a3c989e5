"""Exponent p that brings ||q_n||_p within epsilon of ||q_n||_inf = F_n.

From ||x||_p <= n^(1/p) ||x||_inf the sufficient exponent is
    p >= ln n / ln(epsilon / F_n + 1).
That bound is conservative; :func:`minimal_p` bisects for the smallest p
that actually achieves the gap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import mpmath

from .core import fib, resolve_precision
from .norms import ExactVector, VectorLike
from .structs import build_q

Real = Union[float, str, mpmath.mpf]

BISECTION_TOL = 1e-6


@dataclass(frozen=True)
class ThresholdQuery:
    n: int
    epsilon: Real

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"threshold needs n >= 2 (ln 1 = 0 makes the bound vacuous), got {self.n}")
        if not mpmath.mpf(self.epsilon) > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")


def threshold_p(n: int, epsilon: Real, prec: int | None = None) -> mpmath.mpf:
    """ln n / ln(epsilon / F_n + 1)."""
    ThresholdQuery(n, epsilon)
    prec = resolve_precision(prec)
    with mpmath.workprec(prec):
        eps = mpmath.mpf(epsilon)
        return mpmath.log(n) / mpmath.log1p(eps / mpmath.mpf(fib(n)))


def gap(v: VectorLike, p: Real, prec: int | None = None) -> mpmath.mpf:
    """||v||_p - max|v_i| for p > 0.

    Evaluated as m * expm1(log1p(t) / p) with t = sum of (x_i/m)^p over all
    but one maximal entry; this neither overflows for huge p nor cancels.
    """
    prec = resolve_precision(prec)
    xs = sorted((abs(x) for x in ExactVector.of(v)), reverse=True)
    m = xs[0]
    if m == 0:
        return mpmath.mpf(0)
    with mpmath.workprec(prec + 16):
        p = mpmath.mpf(p)
        if p <= 0:
            raise ValueError("gap is defined for p > 0")
        mm = mpmath.mpf(m)
        cutoff = mpmath.mpf(2) ** -(prec + 32)
        terms = []
        for x in xs[1:]:
            if not x:
                break
            term = (mpmath.mpf(x) / mm) ** p
            terms.append(term)
            # entries are sorted, so every later term is at most this one
            if term * len(xs) < cutoff * terms[0]:
                break
        t = mpmath.fsum(terms)
        g = mm * mpmath.expm1(mpmath.log1p(t) / p)
    with mpmath.workprec(prec):
        return +g


def holder_gap_bound(n: int, p: Real, prec: int | None = None) -> mpmath.mpf:
    """n^(1/p) F_n - F_n."""
    prec = resolve_precision(prec)
    with mpmath.workprec(prec):
        return mpmath.mpf(fib(n)) * mpmath.expm1(mpmath.log(n) / mpmath.mpf(p))


def minimal_p(n: int, epsilon: Real, prec: int | None = None, tol: float = BISECTION_TOL) -> mpmath.mpf:
    """Smallest p (to within tol) with gap(q_n, p) <= epsilon."""
    prec = resolve_precision(prec)
    q = build_q(n)
    hi = threshold_p(n, epsilon, prec)
    with mpmath.workprec(prec):
        eps = mpmath.mpf(epsilon)
        lo = hi / 2
        while gap(q, lo, prec) <= eps:
            hi, lo = lo, lo / 2
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if gap(q, mid, prec) <= eps:
                hi = mid
            else:
                lo = mid
        return hi


@dataclass(frozen=True)
class ThresholdReport:
    n: int
    epsilon: mpmath.mpf
    p_bound: mpmath.mpf
    gap_at_bound: mpmath.mpf
    holder_at_bound: mpmath.mpf
    grid: tuple[mpmath.mpf, ...] = ()
    gaps: tuple[mpmath.mpf, ...] = ()
    p_empirical: mpmath.mpf | None = None
    rel_tol: float = field(default=1e-9, compare=False)

    @property
    def gap_within_epsilon(self) -> bool:
        return self.gap_at_bound <= self.epsilon * (1 + self.rel_tol)

    @property
    def holder_tight(self) -> bool:
        """The Hoelder bound equals epsilon at p_bound."""
        return abs(self.holder_at_bound - self.epsilon) <= self.epsilon * self.rel_tol

    @property
    def gaps_nonincreasing(self) -> bool:
        return all(b <= a * (1 + self.rel_tol) for a, b in zip(self.gaps, self.gaps[1:]))

    @property
    def holds(self) -> bool:
        return self.gap_within_epsilon and self.holder_tight and self.gaps_nonincreasing


def verify_threshold(n: int, epsilon: Real, offsets: Sequence[float] = (0, 1, 10),
                   prec: int | None = None, with_minimal: bool = False) -> ThresholdReport:
    """Gap at the bound, tightness of the Hoelder step and gaps at p_bound + offsets."""
    prec = resolve_precision(prec)
    q = build_q(n)
    p_star = threshold_p(n, epsilon, prec)
    with mpmath.workprec(prec):
        eps = mpmath.mpf(epsilon)
        grid = tuple(p_star + off for off in sorted(offsets))
    return ThresholdReport(
        n=n,
        epsilon=eps,
        p_bound=p_star,
        gap_at_bound=gap(q, p_star, prec),
        holder_at_bound=holder_gap_bound(n, p_star, prec),
        grid=grid,
        gaps=tuple(gap(q, p, prec) for p in grid),
        p_empirical=minimal_p(n, epsilon, prec) if with_minimal else None,
    )
