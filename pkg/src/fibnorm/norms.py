"""Entrywise p-norms and p-distances over exact integer vectors and matrices.

Integer orders keep the power sum exact (``int`` for p > 0, ``Fraction``
for p < 0) and only the final p-th root is taken in floating point.
p = 0 is the product convention: the exact product and its geometric mean.
That quantity is not a norm (it fails homogeneity) but is reported here
because the Fibonacci identities use it.
"""

from __future__ import annotations

import math
import operator
from collections import Counter
from itertools import chain, repeat
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

import mpmath

from .core import exact_product, resolve_precision

INTEGER, REAL, POS_INF, NEG_INF, ZERO = "integer", "real", "+inf", "-inf", "zero"


_INT_TYPES = {int}


@dataclass(frozen=True)
class ExactVector:
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        if not entries:
            raise ValueError("vector must have at least one entry")
        if not set(map(type, entries)) <= _INT_TYPES:
            for x in entries:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise TypeError(f"entries must be exact integers, got {type(x).__name__}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, values: "VectorLike") -> "ExactVector":
        if isinstance(values, ExactVector):
            return values
        return cls(tuple(operator.index(v) for v in values))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __add__(self, other: "ExactVector") -> "ExactVector":
        _check_same_length(self, other)
        return ExactVector(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "ExactVector") -> "ExactVector":
        _check_same_length(self, other)
        return ExactVector(tuple(a - b for a, b in zip(self, other)))

    def scale(self, c: int) -> "ExactVector":
        return ExactVector(tuple(c * a for a in self.entries))


VectorLike = Union[ExactVector, Sequence[int]]


def _check_same_length(x: ExactVector, y: ExactVector) -> None:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")


@dataclass(frozen=True)
class NormOrder:
    """The order p: Integer, Real, +inf, -inf or the Zero product convention."""

    kind: str
    p: Union[int, float, None] = None

    def __post_init__(self):
        if self.kind == INTEGER:
            if isinstance(self.p, bool) or not isinstance(self.p, int) or self.p == 0:
                raise ValueError(f"integer order must be a non-zero int, got {self.p!r}")
        elif self.kind == REAL:
            p = float(self.p)
            if p == 0 or not math.isfinite(p):
                raise ValueError(f"real order must be finite and non-zero, got {self.p!r}")
            object.__setattr__(self, "p", p)
        elif self.kind in (POS_INF, NEG_INF, ZERO):
            if self.p is not None:
                raise ValueError(f"{self.kind} order takes no exponent")
        else:
            raise ValueError(f"unknown order kind {self.kind!r}")

    @classmethod
    def integer(cls, p: int) -> "NormOrder":
        return cls(INTEGER, p)

    @classmethod
    def real(cls, p: float) -> "NormOrder":
        return cls(REAL, p)

    @classmethod
    def parse(cls, text: str) -> "NormOrder":
        """'1', '-1', '0', 'inf', '-inf', '2.5'; a decimal point or exponent means Real."""
        t = text.strip().lower()
        if t in ("inf", "+inf", "infinity", "+infinity"):
            return POS_INF_ORDER
        if t in ("-inf", "-infinity"):
            return NEG_INF_ORDER
        if any(c in t for c in ".e"):
            return cls.real(float(t))
        p = int(t)
        return ZERO_ORDER if p == 0 else cls.integer(p)

    @property
    def negative(self) -> bool:
        return self.kind in (INTEGER, REAL) and self.p < 0

    def __str__(self) -> str:
        if self.kind in (INTEGER, REAL):
            return str(self.p)
        return {POS_INF: "inf", NEG_INF: "-inf", ZERO: "0"}[self.kind]


POS_INF_ORDER = NormOrder(POS_INF)
NEG_INF_ORDER = NormOrder(NEG_INF)
ZERO_ORDER = NormOrder(ZERO)


@dataclass(frozen=True)
class PNormResult:
    """Outcome of a p-norm evaluation.

    exact_power_sum: sum |x_i|^p for Integer orders (Fraction when p < 0,
        infinite when p < 0 meets a zero entry), the product for Zero.
    exact_value: the norm itself when it is exact (p = +-1, +-inf).
    float_value: the norm at working precision (geometric mean for Zero).
    degenerate: a negative exponent met a zero entry.
    """

    order: NormOrder
    float_value: mpmath.mpf
    exact_power_sum: Union[int, Fraction, float, None] = None
    exact_value: Union[int, Fraction, float, None] = None
    degenerate: bool = False
    prec: int = field(default=128, compare=False)

    @property
    def is_infinite(self) -> bool:
        return mpmath.isinf(self.float_value)


def _root(value, p, prec: int) -> mpmath.mpf:
    """value^(1/p) for exact int/Fraction value."""
    with mpmath.workprec(prec + 16):
        if isinstance(value, Fraction):
            v = mpmath.mpf(value.numerator) / value.denominator
        else:
            v = mpmath.mpf(value)
        if v == 0:
            r = mpmath.mpf(0)
        elif p == 1:
            r = v
        elif p == 2:
            r = mpmath.sqrt(v)
        elif isinstance(p, int) and p > 0:
            r = mpmath.root(v, p)
        else:
            r = v ** (mpmath.mpf(1) / p)
    with mpmath.workprec(prec):
        return +r


def _reciprocal_power_sum(abs_entries: list[int], q: int) -> Fraction:
    """sum 1/x^q over non-zero entries, one gcd at the end."""
    num, den = 0, 1
    for x, c in Counter(abs_entries).items():
        xq = x**q
        num, den = num * xq + c * den, den * xq
    return Fraction(num, den)


def _half_integer_norm(counts: Counter, twice: int, prec: int) -> mpmath.mpf:
    """(sum x^(twice/2))^(2/twice) with the power sum done in fixed point.

    Each term is floor(sqrt(x^twice * 4^e)), so every rounding error is below
    one unit of 2^-e while the largest term keeps more than prec + 32 bits.
    """
    target = prec + 32 + sum(counts.values()).bit_length()
    top = max(counts) ** twice
    e = max(target - top.bit_length() // 2 + 1, -(top.bit_length() // 2))
    total = 0
    for x, c in counts.items():
        if x:
            y = x**twice
            total += c * math.isqrt(y << (2 * e) if e >= 0 else y >> (-2 * e))
    with mpmath.workprec(prec):
        s = mpmath.ldexp(mpmath.mpf(total), -e)
        return mpmath.root(s * s, twice) if twice > 1 else s * s


def _real_norm(abs_entries: list[int], p: float, prec: int) -> mpmath.mpf:
    # Factor out the extreme entry so that huge |p| never forms x^p directly.
    with mpmath.workprec(prec + 16):
        mp_p = mpmath.mpf(p)
        counts = Counter(abs_entries)
        mm = mpmath.mpf(max(counts) if p > 0 else min(counts))
        if mm == 0:
            return mpmath.mpf(0)
        if (2 * p).is_integer() and p > 0:
            r = _half_integer_norm(counts, int(2 * p), prec + 16)
            with mpmath.workprec(prec):
                return +r
        s = mpmath.fsum(c * (mpmath.mpf(x) / mm) ** mp_p for x, c in counts.items() if x)
        r = mm * s ** (1 / mp_p)
        if not mpmath.isfinite(r):
            raise OverflowError(f"norm of order {p} left the representable range")
    with mpmath.workprec(prec):
        return +r


def pnorm(v: VectorLike, order: NormOrder, prec: int | None = None) -> PNormResult:
    """Entrywise p-norm of an exact vector."""
    v = ExactVector.of(v)
    prec = resolve_precision(prec)
    xs = list(map(abs, v.entries))
    has_zero = 0 in xs
    inf = mpmath.mpf("inf")

    if order.kind == POS_INF:
        m = max(xs)
        return PNormResult(order, _as_mpf(m, prec), exact_value=m, prec=prec)
    if order.kind == NEG_INF:
        m = min(xs)
        return PNormResult(order, _as_mpf(m, prec), exact_value=m, degenerate=has_zero, prec=prec)
    if order.kind == ZERO:
        prod = exact_product(xs)
        return PNormResult(order, _root(prod, len(xs), prec), exact_power_sum=prod, prec=prec)

    p = order.p
    if p < 0 and has_zero:
        # A zero entry makes sum |x_i|^p infinite; reported as an infinite norm.
        return PNormResult(order, inf,
                           exact_power_sum=math.inf if order.kind == INTEGER else None,
                           exact_value=math.inf, degenerate=True, prec=prec)
    if order.kind == REAL:
        return PNormResult(order, _real_norm(xs, p, prec), prec=prec)

    if p > 0:
        s = sum(xs) if p == 1 else sum(map(pow, xs, repeat(p)))
        exact = s if p == 1 else None
    else:
        s = _reciprocal_power_sum(xs, -p)
        exact = 1 / s if p == -1 else None
    return PNormResult(order, _root(s, p, prec), exact_power_sum=s, exact_value=exact, prec=prec)


def power_sum(v: VectorLike, p: int):
    """Exact sum |v_i|^p for a non-zero integer p, without taking the root.

    Int for p > 0, Fraction for p < 0 (math.inf if an entry is zero).
    """
    if isinstance(p, bool) or not isinstance(p, int) or p == 0:
        raise ValueError(f"power sums need a non-zero integer order, got {p!r}")
    xs = list(map(abs, ExactVector.of(v).entries))
    if p == 1:
        return sum(xs)
    if p > 0:
        return sum(map(pow, xs, repeat(p)))
    if 0 in xs:
        return math.inf
    return _reciprocal_power_sum(xs, -p)


def _as_mpf(x: int, prec: int) -> mpmath.mpf:
    with mpmath.workprec(prec):
        return mpmath.mpf(x)


def vec_rowmajor(m: Iterable[Sequence[int]]) -> ExactVector:
    """Row-major vectorization: output[(i-1)*cols + j] = m[i][j]."""
    rows = [tuple(r) for r in getattr(m, "entries", m)]
    if not rows or not rows[0]:
        raise ValueError("matrix must be non-empty")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    return ExactVector(tuple(chain.from_iterable(rows)))


def matrix_pnorm(m, order: NormOrder, prec: int | None = None) -> PNormResult:
    """Entrywise matrix p-norm; p = 2 is the Frobenius norm."""
    return pnorm(vec_rowmajor(m), order, prec)


def pdistance(x: VectorLike, y: VectorLike, order: NormOrder, prec: int | None = None) -> PNormResult:
    x, y = ExactVector.of(x), ExactVector.of(y)
    _check_same_length(x, y)
    return pnorm(x - y, order, prec)
