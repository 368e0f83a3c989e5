"""Registry of Fibonacci norm identities with brute-force oracles.

Every entry pairs a closed form with an oracle that computes the same
quantity the slow way: build the vector or matrix, then run the norm engine
over its entries.  Closed forms take F_n from fast doubling, oracles take it
from the recurrence cache, so the two sides share no arithmetic path.

A handful of formulas circulate in a misprinted form.  For those the
entry carries the printed form as well; verification then has to refute the
printed form and confirm the corrected one, which yields the status
``verified-with-erratum``.
"""

from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Mapping, Sequence

import mpmath

from . import distances, threshold
from .core import (
    binet_approx,
    binet_bits_required,
    exact_product,
    fib,
    fib_fast_doubling as F,
    golden_constants,
    int_str,
    kfib,
    nearest_int,
    resolve_precision,
)
from .norms import (
    NEG_INF_ORDER,
    POS_INF_ORDER,
    ZERO_ORDER,
    NormOrder,
    matrix_pnorm,
    pnorm,
    power_sum,
    vec_rowmajor,
)
from .structs import FibMatrix, build_F, build_Q, build_q, build_q_nr, build_S, multiplicities

VERIFIED = "verified"
REFUTED = "refuted"
VERIFIED_WITH_ERRATUM = "verified-with-erratum"

INFINITE = math.inf

HOLDER_GRID = (0.5, 1, 1.5, 2, 3, 5, 10, 50)
FLOAT_REL_TOL = 1e-9
BINET_REL_TOL = mpmath.mpf("1e-20")

DEFAULT_RANGES: dict[str, tuple] = {
    "n": tuple(range(1, 201)),
    "r": tuple(range(1, 51)),
    "p": (1, 2, 3),
    "k": tuple(range(2, 6)),
    "d": (1, 2, 3, 4, 5),
    "eps": ("1e-1", "1e-3", "1e-6"),
}


def _exact_half(num: int) -> int | Fraction:
    return num // 2 if num % 2 == 0 else Fraction(num, 2)


def _order(p) -> NormOrder:
    return NormOrder.integer(p) if isinstance(p, int) else NormOrder.real(p)


# --------------------------------------------------------------- closed forms

def closed_sum(n: int) -> int:
    """F_1 + ... + F_n = F_{n+2} - 1."""
    return F(n + 2) - 1


def closed_sum_squares(n: int) -> int:
    """F_1^2 + ... + F_n^2 = F_n F_{n+1}."""
    return F(n) * F(n + 1)


def closed_sum_cubes(n: int) -> int | Fraction:
    """F_1^3 + ... + F_n^3 = (F_n F_{n+1}^2 - (-1)^n F_{n-1} + 1) / 2.  Zero for n = 0."""
    if n == 0:
        return 0
    return _exact_half(F(n) * F(n + 1) ** 2 - (-1) ** n * F(n - 1) + 1)


def printed_sum_cubes_eq6(n: int) -> int | Fraction:
    return _exact_half(F(n) * F(n + 1) ** 2 + (-1) ** n * F(n - 1) + 1)


def printed_sum_cubes_p4(n: int) -> int | Fraction:
    return _exact_half(F(n) * F(n + 1) ** 2 + (-1) ** n * F(n - 1) - 1)


@lru_cache(maxsize=4096)
def _binet_reciprocal(i: int, prec: int) -> mpmath.mpf:
    g = golden_constants(prec)
    with mpmath.workprec(prec):
        return 1 / (g.phi**i - (1 - g.phi) ** i)


def binet_reciprocal_norm(indices: Sequence[int], prec: int | None = None) -> mpmath.mpf:
    """(sqrt5 * sum 1/(phi^i - (1-phi)^i))^-1, the -1-norm written through phi."""
    g = golden_constants(prec)
    with mpmath.workprec(g.prec):
        s = mpmath.fsum(_binet_reciprocal(i, g.prec) for i in indices)
        return 1 / (g.sqrt5 * s)


NR_IDS = ("sum", "squares", "cubes", "inf", "neginf", "minus1", "zero")
MATRIX_IDS = ("one", "two", "three", "inf", "neginf", "minus1", "zero")


def closed_nr(which: str, n: int, r: int):
    """Closed forms for the (n,r)-vector (F_{n+1}, ..., F_{n+r})."""
    if n < 0 or r < 1:
        raise ValueError(f"need n >= 0 and r >= 1, got ({n}, {r})")
    m = n + r
    if which == "sum":
        return F(m + 2) - F(n + 2)
    if which == "squares":
        return F(m) * F(m + 1) - F(n) * F(n + 1)
    if which == "cubes":
        return closed_sum_cubes(m) - closed_sum_cubes(n)
    if which == "inf":
        return F(m)
    if which == "neginf":
        return F(n + 1)
    if which == "minus1":
        return 1 / sum(Fraction(1, F(i)) for i in range(n + 1, m + 1))
    if which == "zero":
        return exact_product(F(i) for i in range(n + 1, m + 1))
    raise ValueError(f"unknown (n,r) identity {which!r}; expected one of {NR_IDS}")


def closed_Fmatrix(which: str, n: int):
    """Closed forms for F(2)_n.  Power sums for one/two/three, product for zero."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if which == "one":
        return F(n + 4) - 3 - n
    if which == "two":
        return sum(F(i) * F(i + 1) for i in range(1, n + 1))
    if which == "three":
        return sum(closed_sum_cubes(i) for i in range(1, n + 1))
    if which == "inf":
        return F(n)
    # F(2)_1 = [[1]] is the only order without zeros above the diagonal.
    if which == "neginf":
        return 0 if n >= 2 else 1
    if which == "minus1":
        return INFINITE if n >= 2 else 1
    if which == "zero":
        return 0 if n >= 2 else 1
    raise ValueError(f"unknown F-matrix identity {which!r}; expected one of {MATRIX_IDS}")


def printed_Fmatrix_one(n: int) -> int:
    """||q_{2,n+2}||_1 - n taken literally: F_{n+6} - F_4 - n."""
    return closed_nr("sum", 2, n + 2) - n


def closed_Smatrix(which: str, n: int):
    """Closed forms for S(2)_n from the multiplicities n - |n - i| of F_i."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    w = multiplicities(n).weights
    idx = range(1, 2 * n)
    powers = {"one": 1, "two": 2, "three": 3}
    if which in powers:
        p = powers[which]
        return sum(wi * F(i) ** p for i, wi in zip(idx, w))
    if which == "inf":
        return F(2 * n - 1)
    if which == "neginf":
        return F(1)
    if which == "minus1":
        return 1 / sum(Fraction(wi, F(i)) for i, wi in zip(idx, w))
    if which == "zero":
        return _power_product(idx, w)
    raise ValueError(f"unknown S-matrix identity {which!r}; expected one of {MATRIX_IDS}")


def _power_product(idx, weights) -> int:
    import gmpy2

    return exact_product(gmpy2.mpz(F(i)) ** wi for i, wi in zip(idx, weights))


def printed_Smatrix_zero(n: int) -> int:
    """The printed form: sum of F_i^(n - |n - i|)."""
    return sum(F(i) ** wi for i, wi in multiplicities(n).items())


def printed_Q(k: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Q(k)_n with the indices exactly as printed.

    Diagonal sum_{l=1}^{i} g_i^2 = i * g_i^2; right of the diagonal
    q_ij = sum_{l=1}^{k} q_{i,i-l}, which does not depend on j.
    """
    q = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        row = q[i - 1]
        for j in range(1, i):
            row[j - 1] = q[j - 1][i - 1]
        row[i - 1] = i * kfib(k, i) ** 2
        off = sum(row[i - l - 1] for l in range(1, k + 1) if i - l >= 1)
        for j in range(i + 1, n + 1):
            row[j - 1] = off
    return tuple(tuple(r) for r in q)


# -------------------------------------------------------------------- oracles

def _power_sum(v, p: int):
    return power_sum(v, p)


@lru_cache(maxsize=2048)
def _matrix_power_sum(kind: str, n: int, p: int):
    m = build_F(2, n) if kind == "F" else build_S(2, n)
    return power_sum(vec_rowmajor(m), p)


@lru_cache(maxsize=4096)
def _q_power_sum(n: int, p: int):
    return _power_sum(build_q(n), p)


def _norm_exact(v, order: NormOrder):
    res = matrix_pnorm(v, order) if isinstance(v, FibMatrix) else pnorm(v, order)
    if res.degenerate and res.is_infinite:
        return INFINITE
    if order.kind == ZERO_ORDER.kind:
        return res.exact_power_sum
    return res.exact_value if res.exact_value is not None else res.exact_power_sum


def _naive_kfib(k: int, n: int) -> int:
    g = [0] * (k - 2) + [1, 1]
    while len(g) < n:
        g.append(sum(g[-k:]))
    return g[n - 1]


def _fft_entry(F_rows, i: int, j: int) -> int:
    return sum(map(operator.mul, F_rows[i], F_rows[j]))


def oracle_Q(k: int, n: int) -> tuple[tuple[int, ...], ...]:
    """F(k)_n times its transpose, by plain row-by-row dot products."""
    rows = build_F(k, n).entries
    upper = {(i, j): _fft_entry(rows, i, j) for i in range(n) for j in range(i, n)}
    return tuple(tuple(upper[min(i, j), max(i, j)] for j in range(n)) for i in range(n))


@lru_cache(maxsize=1 << 15)
def _grid_norms(kind: str, a: int, b: int = 0, grid: tuple = HOLDER_GRID) -> tuple[mpmath.mpf, ...]:
    v = build_q(a) if kind == "q" else build_q_nr(a, b)
    return tuple(pnorm(v, _order(p)).float_value for p in grid)


def _holder_pairs(grid=HOLDER_GRID):
    return [(i, j) for i in range(len(grid)) for j in range(i + 1, len(grid))]


# ------------------------------------------------------------------- registry

def _exact_eq(a, b) -> bool:
    return a == b


def _ge_all(a, b) -> bool:
    return all(x >= y * (1 - FLOAT_REL_TOL) for x, y in zip(a, b))


def _le_all(a, b) -> bool:
    return all(x <= y * (1 + FLOAT_REL_TOL) for x, y in zip(a, b))


def _binet_close(a, b) -> bool:
    b = mpmath.mpf(b.numerator) / b.denominator if isinstance(b, Fraction) else mpmath.mpf(b)
    return abs(a - b) <= BINET_REL_TOL * abs(b)


@dataclass(frozen=True)
class IdentityEntry:
    id: str
    title: str
    params: tuple[str, ...]
    closed_form: Callable[..., Any]
    oracle: Callable[..., Any]
    relation: Callable[[Any, Any], bool] = _exact_eq
    kind: str = "equality"
    covers: tuple[str, ...] = ()
    printed_forms: Mapping[str, Callable[..., Any]] = field(default_factory=dict)
    erratum_note: str | None = None
    pinned: Mapping[str, tuple] = field(default_factory=dict)
    domain: Callable[..., bool] | None = None
    # Matrices whose (i, j) entry does not depend on n: one comparison at the
    # largest n covers every smaller n, since the smaller matrix is a block.
    nested: bool = False

    def ranges(self, overrides: Mapping[str, Sequence] | None = None) -> dict[str, tuple]:
        out = {}
        for name in self.params:
            if name in self.pinned:
                out[name] = tuple(self.pinned[name])
            elif overrides and name in overrides:
                out[name] = tuple(overrides[name])
            else:
                out[name] = DEFAULT_RANGES[name]
        return out


@dataclass
class IdentityReport:
    id: str
    range: dict[str, list]
    status: str
    counterexample: dict | None = None
    erratum_note: str | None = None
    checked: int = 0

    def to_json(self) -> dict:
        d = {"id": self.id, "range": self.range, "status": self.status, "checked": self.checked}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        if self.erratum_note is not None:
            d["erratum_note"] = self.erratum_note
        return d


REGISTRY: dict[str, IdentityEntry] = {}
# "<id>-as-printed" -> (entry id, printed form)
AS_PRINTED: dict[str, tuple[str, Callable[..., Any]]] = {}


def register(entry: IdentityEntry) -> IdentityEntry:
    if entry.id in REGISTRY:
        raise ValueError(f"duplicate identity id {entry.id!r}")
    REGISTRY[entry.id] = entry
    for printed_id, form in entry.printed_forms.items():
        AS_PRINTED[printed_id] = (entry.id, form)
    return entry


def _reg(id, title, params, closed_form, oracle, **kw):
    return register(IdentityEntry(id, title, tuple(params), closed_form, oracle, **kw))


# core sequence
_reg("Eq1.fast-doubling", "fast doubling agrees with the recurrence", ["n"],
     lambda n: F(n), lambda n: fib(n), covers=("Eq1", "Eq2"))
_reg("Eq2.initial", "F_0 = 0, F_1 = F_2 = 1 and the listed terms", [],
     lambda: tuple(F(i) for i in range(13)),
     lambda: (0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144), covers=("Eq2",))
_reg("Eq3.binet", "Binet value rounds to F_n", ["n"],
     lambda n: nearest_int(binet_approx(n)), lambda n: fib(n), covers=("Eq3",),
     domain=lambda n: binet_bits_required(n) <= resolve_precision())
_reg("Eq8.kfib", "k-Fibonacci cache agrees with the definition", ["k", "n"],
     lambda k, n: kfib(k, n), _naive_kfib, covers=("Eq7", "Eq8"))
_reg("Cassini", "F_{n+1} F_{n-1} - F_n^2 = (-1)^n", ["n"],
     lambda n: F(n + 1) * F(n - 1) - F(n) ** 2, lambda n: (-1) ** n,
     domain=lambda n: n >= 1)

# q_n
_reg("P1.positive", "||q_n||_p > 0", ["n", "p"],
     lambda n, p: pnorm(build_q(n), NormOrder.integer(p)).float_value, lambda n, p: 0,
     relation=operator.gt, kind="inequality", covers=("P1",))
_reg("P2.sum", "||q_n||_1 = F_{n+2} - 1", ["n"],
     closed_sum, lambda n: _power_sum(build_q(n), 1), covers=("Eq4", "P2"))
_reg("P3.squares", "||q_n||_2^2 = F_n F_{n+1}", ["n"],
     closed_sum_squares, lambda n: _power_sum(build_q(n), 2), covers=("Eq5", "P3"))
_reg("Eq6.cubes", "||q_n||_3^3 = (F_n F_{n+1}^2 - (-1)^n F_{n-1} + 1) / 2", ["n"],
     closed_sum_cubes, lambda n: _power_sum(build_q(n), 3), covers=("Eq6", "P4"),
     printed_forms={"Eq6.cubes-as-printed": printed_sum_cubes_eq6,
                    "P4.cubes-as-printed": printed_sum_cubes_p4},
     erratum_note="sign of the (-1)^n F_{n-1} term is flipped in the printed sum-of-cubes "
                  "formula, and a second variant also changes +1 to -1; "
                  "brute force confirms (F_n F_{n+1}^2 - (-1)^n F_{n-1} + 1)/2")
_reg("P5.inf", "||q_n||_inf = F_n", ["n"],
     lambda n: F(n), lambda n: _norm_exact(build_q(n), POS_INF_ORDER), covers=("P5",))
_reg("P6.neginf", "||q_n||_-inf = F_1", ["n"],
     lambda n: F(1), lambda n: _norm_exact(build_q(n), NEG_INF_ORDER), covers=("P6",))
_reg("P7.minus1-binet", "||q_n||_-1 through phi matches the exact rational", ["n"],
     lambda n: binet_reciprocal_norm(range(1, n + 1)),
     lambda n: _norm_exact(build_q(n), NormOrder.integer(-1)),
     relation=_binet_close, kind="float", covers=("P7",))
_reg("P8.zero", "||q_n||_0^n = F_1 F_2 ... F_n", ["n"],
     lambda n: exact_product(F(i) for i in range(1, n + 1)),
     lambda n: _norm_exact(build_q(n), ZERO_ORDER), covers=("P8",))
_reg("P9.holder-order", "||q_n||_p >= ||q_n||_s for p < s", ["n"],
     lambda n: tuple(_grid_norms("q", n)[i] for i, _ in _holder_pairs()),
     lambda n: tuple(_grid_norms("q", n)[j] for _, j in _holder_pairs()),
     relation=_ge_all, kind="inequality", covers=("P9",))
_reg("P10.decreasing", "||q_n||_p is non-increasing along the p grid", ["n"],
     lambda n: _grid_norms("q", n)[:-1], lambda n: _grid_norms("q", n)[1:],
     relation=_ge_all, kind="inequality", covers=("P10",))


def _holder_upper(a: int, b: int = 0, kind: str = "q"):
    norms = _grid_norms(kind, a, b)
    size = a if kind == "q" else b
    out = []
    with mpmath.workprec(resolve_precision()):
        for i, j in _holder_pairs():
            p, s = HOLDER_GRID[i], HOLDER_GRID[j]
            out.append(mpmath.mpf(size) ** (mpmath.mpf(1) / p - mpmath.mpf(1) / s) * norms[j])
        # s = inf
        mx = max(build_q(a) if kind == "q" else build_q_nr(a, b))
        out.extend(mpmath.mpf(size) ** (mpmath.mpf(1) / p) * mx for p in HOLDER_GRID)
    return tuple(out)


_reg("Eq16.holder", "||q_n||_p <= n^(1/p - 1/s) ||q_n||_s for 0 < p < s <= inf", ["n"],
     lambda n: tuple(_grid_norms("q", n)[i] for i, _ in _holder_pairs()) + _grid_norms("q", n),
     lambda n: _holder_upper(n), relation=_le_all, kind="inequality", covers=("Eq15", "Eq16"))
_reg("Thm1.threshold", "gap at p = ln n / ln(eps/F_n + 1) is at most eps", ["n", "eps"],
     lambda n, eps: threshold.gap(build_q(n), threshold.threshold_p(n, eps)),
     lambda n, eps: mpmath.mpf(eps), relation=lambda a, b: a <= b * (1 + FLOAT_REL_TOL),
     kind="inequality", covers=("Thm1", "Eq17", "Eq18", "Eq19"),
     domain=lambda n, eps: n >= 2)

# q_{n,r}
_reg("P11.nr-positive", "||q_{n,r}||_p > 0", ["n", "r", "p"],
     lambda n, r, p: pnorm(build_q_nr(n, r), NormOrder.integer(p)).float_value,
     lambda n, r, p: 0, relation=operator.gt, kind="inequality", covers=("P11",))
_reg("P12.nr-sum", "||q_{n,r}||_1 = F_{n+r+2} - F_{n+2}", ["n", "r"],
     lambda n, r: closed_nr("sum", n, r), lambda n, r: _power_sum(build_q_nr(n, r), 1),
     covers=("P12",))
_reg("P13.nr-squares", "||q_{n,r}||_2^2 = F_{n+r} F_{n+r+1} - F_n F_{n+1}", ["n", "r"],
     lambda n, r: closed_nr("squares", n, r), lambda n, r: _power_sum(build_q_nr(n, r), 2),
     covers=("P13",))
_reg("P14.nr-cubes", "||q_{n,r}||_3^3 as a difference of sum-of-cubes closed forms", ["n", "r"],
     lambda n, r: closed_nr("cubes", n, r), lambda n, r: _power_sum(build_q_nr(n, r), 3),
     covers=("P14",))
_reg("P15.nr-minus1-binet", "||q_{n,r}||_-1 through phi matches the exact rational", ["n", "r"],
     lambda n, r: binet_reciprocal_norm(range(n + 1, n + r + 1)),
     lambda n, r: _norm_exact(build_q_nr(n, r), NormOrder.integer(-1)),
     relation=_binet_close, kind="float", covers=("P15",))
_reg("P16.nr-inf", "||q_{n,r}||_inf = F_{n+r}", ["n", "r"],
     lambda n, r: closed_nr("inf", n, r), lambda n, r: _norm_exact(build_q_nr(n, r), POS_INF_ORDER),
     covers=("P16",))
_reg("P17.nr-neginf", "||q_{n,r}||_-inf = F_{n+1}", ["n", "r"],
     lambda n, r: closed_nr("neginf", n, r), lambda n, r: _norm_exact(build_q_nr(n, r), NEG_INF_ORDER),
     covers=("P17",))
_reg("P18.nr-zero", "||q_{n,r}||_0 product = F_{n+1} ... F_{n+r}", ["n", "r"],
     lambda n, r: closed_nr("zero", n, r), lambda n, r: _norm_exact(build_q_nr(n, r), ZERO_ORDER),
     covers=("P18",))
_reg("P19.nr-holder-order", "||q_{n,r}||_p >= ||q_{n,r}||_s for p < s", ["n", "r"],
     lambda n, r: tuple(_grid_norms("nr", n, r)[i] for i, _ in _holder_pairs()),
     lambda n, r: tuple(_grid_norms("nr", n, r)[j] for _, j in _holder_pairs()),
     relation=_ge_all, kind="inequality", covers=("P19",))
_reg("P20.nr-decreasing", "||q_{n,r}||_p is non-increasing along the p grid", ["n", "r"],
     lambda n, r: _grid_norms("nr", n, r)[:-1], lambda n, r: _grid_norms("nr", n, r)[1:],
     relation=_ge_all, kind="inequality", covers=("P20",))

# F(2)_n
_reg("Eq10.F-example", "F(2)_5 reference matrix", [],
     lambda: build_F(2, 5).entries,
     lambda: ((1, 0, 0, 0, 0), (1, 1, 0, 0, 0), (2, 1, 1, 0, 0), (3, 2, 1, 1, 0), (5, 3, 2, 1, 1)),
     covers=("Eq9", "Eq10", "Eq20"))
_reg("Eq22.F-concat", "||F(2)_n||_p^p = sum_i ||q_i||_p^p", ["n", "p"],
     lambda n, p: sum(_q_power_sum(i, p) for i in range(1, n + 1)),
     lambda n, p: _matrix_power_sum("F", n, p), covers=("Eq21", "Eq22", "Eq23"))
_reg("P21.F-one", "||F(2)_n||_1 = sum (F_{i+2} - 1) = F_{n+4} - 3 - n", ["n"],
     lambda n: closed_Fmatrix("one", n),
     lambda n: _matrix_power_sum("F", n, 1), covers=("P21",),
     printed_forms={"P21.F-one-as-printed": printed_Fmatrix_one},
     erratum_note="the rewriting as ||q_{2,n+2}||_1 - n gives F_{n+6} - 3 - n; "
                  "the sum it rewrites equals F_{n+4} - 3 - n")
for _p, _which, _pid in ((2, "two", "P22"), (3, "three", "P23")):
    _reg(f"{_pid}.F-{_which}", f"||F(2)_n||_{_p}^{_p} as a sum over column norms", ["n"],
         lambda n, w=_which: closed_Fmatrix(w, n),
         lambda n, p=_p: _matrix_power_sum("F", n, p), covers=(_pid,))
for _which, _order_, _pid in (("inf", POS_INF_ORDER, "P24"), ("neginf", NEG_INF_ORDER, "P25"),
                              ("minus1", NormOrder.integer(-1), "P26"), ("zero", ZERO_ORDER, "P27")):
    _reg(f"{_pid}.F-{_which}", f"||F(2)_n|| of order {_order_}", ["n"],
         lambda n, w=_which: closed_Fmatrix(w, n),
         lambda n, o=_order_: _norm_exact(build_F(2, n), o),
         covers=(_pid,))

# Q(k)_n
_reg("Eq12.Q-example", "Q(2)_5 reference matrix", [],
     lambda: build_Q(2, 5).entries,
     lambda: ((1, 1, 2, 3, 5), (1, 2, 3, 5, 8), (2, 3, 6, 9, 15), (3, 5, 9, 15, 24), (5, 8, 15, 24, 40)),
     covers=("Eq12",))
_reg("Eq11.Q", "Q(k)_n by row recurrence equals F(k)_n F(k)_n^T", ["k", "n"],
     lambda k, n: build_Q(k, n).entries, oracle_Q, covers=("Eq11",), nested=True,
     printed_forms={"Eq11.Q-as-printed": printed_Q},
     erratum_note="printed indices give q_ii = i g_i^2 and a j-independent off-diagonal "
                  "sum of q_{i,i-l}; the reference Q(2)_5 is reproduced by "
                  "q_ii = sum_l g_l^2, q_ij = sum_{l=1}^k q_{i,j-l}")

# S(k)_n
_reg("Eq30.S-pattern", "entries of S(2)_n occur with multiplicity n - |n - i|", ["n"],
     lambda n: _value_counts((F(i), w) for i, w in multiplicities(n).items()),
     lambda n: _value_counts((x, 1) for row in build_S(2, n).entries for x in row),
     covers=("Eq28", "Eq29", "Eq30"))


def _value_counts(pairs) -> dict[int, int]:
    # Keyed by value: F_1 = F_2 = 1 merge, which both sides do alike.
    counts: dict[int, int] = {}
    for x, w in pairs:
        counts[x] = counts.get(x, 0) + w
    return counts


for _p, _which, _pid in ((1, "one", "P28"), (2, "two", "P29"), (3, "three", "P30")):
    _reg(f"{_pid}.S-{_which}", f"||S(2)_n||_{_p}^{_p} = sum F_i^{_p} (n - |n - i|)", ["n"],
         lambda n, w=_which: closed_Smatrix(w, n),
         lambda n, p=_p: _matrix_power_sum("S", n, p), covers=(_pid, "Eq31"))
for _which, _order_, _pid in (("inf", POS_INF_ORDER, "P31"), ("neginf", NEG_INF_ORDER, "P32"),
                              ("minus1", NormOrder.integer(-1), "P33")):
    _reg(f"{_pid}.S-{_which}", f"||S(2)_n|| of order {_order_}", ["n"],
         lambda n, w=_which: closed_Smatrix(w, n),
         lambda n, o=_order_: _norm_exact(build_S(2, n), o),
         covers=(_pid,))
_reg("P34.S-zero", "||S(2)_n||_0 product = prod F_i^(n - |n - i|)", ["n"],
     lambda n: closed_Smatrix("zero", n),
     lambda n: _norm_exact(build_S(2, n), ZERO_ORDER), covers=("P34",),
     printed_forms={"P34.S-zero-as-printed": printed_Smatrix_zero},
     erratum_note="printed as a sum of F_i^(n-|n-i|); the product convention of the "
                  "0-order makes it a product")

# distances
_reg("Eq38.shift", "F_{m+d} - F_m = F_d F_{m+1} for d = 2, 3", ["n", "d"],
     lambda n, d: F(n + d) - F(n), lambda n, d: F(d) * fib(n + 1),
     pinned={"d": (2, 3)}, covers=("Eq36", "Eq37", "Eq38"))
_reg("Eq39.d2", "d = 2 distance: sum_i F_{n+i+1}^p", ["n", "r", "p"],
     distances.distance_closed_d2, lambda n, r, p: distances.distance_direct(n, r, 2, p),
     covers=("Eq39",))
_reg("Eq40.d3", "d = 3 distance: F_3^p sum_i F_{n+i+1}^p", ["n", "r", "p"],
     distances.distance_closed_d3, lambda n, r, p: distances.distance_direct(n, r, 3, p),
     covers=("Eq40",))


def _sum_diff_direct(n, r, d):
    pair = distances.ShiftedPair(n, r, d)
    return _power_sum(pair.x + pair.y, 1) + _power_sum(pair.x - pair.y, 1)


def _parallelogram_closed(n, r, d):
    a, b = n + r + d, n + d
    return 2 * (F(a) * F(a + 1) - F(b) * F(b + 1) + F(n + r) * F(n + r + 1) - F(n) * F(n + 1))


def _parallelogram_direct(n, r, d):
    pair = distances.ShiftedPair(n, r, d)
    return _power_sum(pair.x + pair.y, 2) + _power_sum(pair.x - pair.y, 2)


_reg("Eq43.sum-diff", "||x+y||_1 + ||x-y||_1 = 2(F_{n+r+d+2} - F_{n+d+2})", ["n", "r", "d"],
     lambda n, r, d: 2 * (F(n + r + d + 2) - F(n + d + 2)), _sum_diff_direct,
     covers=("Eq41", "Eq42", "Eq43"))
_reg("Eq44.parallelogram", "||x+y||_2^2 + ||x-y||_2^2 = 2(||x||^2 + ||y||^2) via F products",
     ["n", "r", "d"], _parallelogram_closed, _parallelogram_direct,
     covers=("Eq44", "Eq45", "Eq46", "Eq47", "Eq48"))
_reg("Eq51.golden", "F_m F_{m+1} ~ phi F_m^2 approximation within 1e-3 relative", ["n", "r", "d"],
     lambda n, r, d: abs(distances.golden_approx(n, r, d).rel_err), lambda n, r, d: mpmath.mpf("1e-3"),
     relation=operator.lt, kind="inequality", covers=("Eq49", "Eq50", "Eq51"),
     domain=lambda n, r, d: n >= 10)


# ------------------------------------------------------------- verification

def _render(x) -> Any:
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return int_str(x)
    if isinstance(x, Fraction):
        return f"{int_str(x.numerator)}/{int_str(x.denominator)}"
    if isinstance(x, float):
        return "inf" if math.isinf(x) else repr(x)
    if isinstance(x, mpmath.mpf):
        return mpmath.nstr(x, 25)
    if isinstance(x, dict):
        return {str(k): _render(v) for k, v in x.items()}
    if isinstance(x, (tuple, list)):
        return [_render(v) for v in x]
    return str(x)


def _grid(entry: IdentityEntry, ranges: dict[str, tuple]):
    names = entry.params
    for combo in itertools.product(*(ranges[n] for n in names)):
        params = dict(zip(names, combo))
        if entry.domain is None or entry.domain(**params):
            yield params


def _first_mismatch(entry: IdentityEntry, form: Callable, ranges: dict[str, tuple]):
    """(checked, counterexample or None) for form vs oracle, lexicographic order."""
    if entry.nested:
        return _first_mismatch_nested(entry, form, ranges)
    checked = 0
    for params in _grid(entry, ranges):
        checked += 1
        a, b = form(**params), entry.oracle(**params)
        if not entry.relation(a, b):
            return checked, {"params": params, "closed_form": _render(a), "oracle": _render(b)}
    return checked, None


def _first_mismatch_nested(entry: IdentityEntry, form: Callable, ranges: dict[str, tuple]):
    outer = [p for p in entry.params if p != "n"]
    ns = sorted(ranges["n"])
    checked = 0
    for combo in itertools.product(*(ranges[p] for p in outer)):
        params = dict(zip(outer, combo))
        N = ns[-1]
        a, b = form(**params, n=N), entry.oracle(**params, n=N)
        bad = [(max(i, j) + 1, i + 1, j + 1) for i in range(N) for j in range(N) if a[i][j] != b[i][j]]
        checked += len(ns)
        if bad:
            first_n, i, j = min(bad)
            n = next(m for m in ns if m >= first_n)
            return checked, {"params": {**params, "n": n}, "entry": [i, j],
                             "closed_form": _render(a[i - 1][j - 1]), "oracle": _render(b[i - 1][j - 1])}
    return checked, None


def _range_summary(ranges: dict[str, tuple]) -> dict[str, list]:
    out = {}
    for name, vals in ranges.items():
        vals = list(vals)
        ints = all(isinstance(v, int) for v in vals)
        if ints and len(vals) > 3 and vals == list(range(vals[0], vals[-1] + 1)):
            out[name] = [vals[0], vals[-1]]
        else:
            out[name] = [_render(v) for v in vals]
    return out


def verify(identity_id: str, param_ranges: Mapping[str, Sequence] | None = None) -> IdentityReport:
    """Compare closed form and oracle over the parameter grid.

    Ids of the form ``<id>-as-printed`` check the misprinted form instead
    and are expected to come back refuted.
    """
    with mpmath.workprec(resolve_precision()):
        return _verify(identity_id, param_ranges)


def _verify(identity_id: str, param_ranges: Mapping[str, Sequence] | None) -> IdentityReport:
    if identity_id in AS_PRINTED:
        base_id, form = AS_PRINTED[identity_id]
        entry = REGISTRY[base_id]
        ranges = entry.ranges(param_ranges)
        checked, cex = _first_mismatch(entry, form, ranges)
        return IdentityReport(identity_id, _range_summary(ranges), REFUTED if cex else VERIFIED,
                              cex, entry.erratum_note, checked)
    try:
        entry = REGISTRY[identity_id]
    except KeyError:
        raise KeyError(f"unknown identity {identity_id!r}") from None

    ranges = entry.ranges(param_ranges)
    checked, cex = _first_mismatch(entry, entry.closed_form, ranges)
    if cex is not None:
        return IdentityReport(entry.id, _range_summary(ranges), REFUTED, cex, entry.erratum_note, checked)
    if not entry.printed_forms:
        return IdentityReport(entry.id, _range_summary(ranges), VERIFIED, None, None, checked)

    printed_cex = {}
    for printed_id, form in entry.printed_forms.items():
        _, pc = _first_mismatch(entry, form, ranges)
        if pc is not None:
            printed_cex[printed_id] = pc
    # Erratum confirmed only if every printed variant is refuted on this grid.
    status = VERIFIED_WITH_ERRATUM if len(printed_cex) == len(entry.printed_forms) else VERIFIED
    cex = {"printed": printed_cex} if printed_cex else None
    return IdentityReport(entry.id, _range_summary(ranges), status, cex, entry.erratum_note, checked)


def verify_all(param_ranges: Mapping[str, Sequence] | None = None,
               ids: Sequence[str] | None = None) -> list[IdentityReport]:
    return [verify(i, param_ranges) for i in (ids or list(REGISTRY))]


def covered_items() -> set[str]:
    return {c for e in REGISTRY.values() for c in e.covers}


def errata() -> list[str]:
    return [e.id for e in REGISTRY.values() if e.printed_forms]
