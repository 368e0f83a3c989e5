import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from fibnorm import core
from fibnorm.core import (
    KFibSequence,
    PrecisionLossError,
    binet_approx,
    binet_bits_required,
    exact_product,
    fib,
    fib_fast_doubling,
    fib_pair,
    int_str,
    kfib,
    nearest_int,
    resolve_precision,
)


def test_first_terms():
    assert [fib(n) for n in range(10)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]


def test_k3_starts_with_zero():
    assert [kfib(3, n) for n in range(1, 9)] == [0, 1, 1, 2, 4, 7, 13, 24]


def test_k4_tetranacci():
    assert [kfib(4, n) for n in range(1, 10)] == [0, 0, 1, 1, 2, 4, 8, 15, 29]


@pytest.mark.parametrize("k", [2, 3, 5, 7])
def test_window_sum_against_naive(k):
    seq = KFibSequence(k)
    g = [0] * (k - 2) + [1, 1]
    while len(g) < 300:
        g.append(sum(g[-k:]))
    assert seq.terms(1, 300) == g


def test_kfib_rejects_bad_arguments():
    with pytest.raises(ValueError):
        kfib(1, 5)
    with pytest.raises(ValueError):
        kfib(2, 0)
    with pytest.raises(ValueError):
        fib(-1)
    with pytest.raises(ValueError):
        fib_fast_doubling(-3)


@given(st.integers(min_value=0, max_value=5000))
def test_recurrence_matches_doubling(n):
    assert fib(n) == fib_fast_doubling(n)


def test_beyond_cache_limit():
    n = core._CACHE_LIMIT + 17
    assert fib(n) == fib_fast_doubling(n)


@given(st.integers(min_value=0, max_value=3000))
def test_fib_pair(n):
    a, b = fib_pair(n)
    assert (a, b) == (fib(n), fib(n + 1))
    ga, gb = fib_pair(n, gmp=True)
    assert (int(ga), int(gb)) == (a, b)


@given(st.integers(min_value=1, max_value=1500))
def test_cassini(n):
    assert fib(n - 1) * fib(n + 1) - fib(n) ** 2 == (-1) ** n


@given(st.integers(min_value=0, max_value=800), st.integers(min_value=0, max_value=800))
def test_addition_formula(m, n):
    # F_{m+n+1} = F_{m+1} F_{n+1} + F_m F_n
    assert fib(m + n + 1) == fib(m + 1) * fib(n + 1) + fib(m) * fib(n)


def test_binet_rounds_to_exact_values():
    for n in range(0, 91):
        assert nearest_int(binet_approx(n, 128)) == fib(n)


def test_binet_refuses_when_precision_is_short():
    n = 200
    assert binet_bits_required(n) > 128
    with pytest.raises(PrecisionLossError):
        binet_approx(n, 128)
    assert nearest_int(binet_approx(n, binet_bits_required(n))) == fib(n)


def test_nearest_int_ignores_ambient_precision():
    with mpmath.workprec(300):
        x = mpmath.mpf(2) ** 200 + mpmath.mpf("0.75")
        y = -x
    assert nearest_int(x) == 2**200 + 1
    assert nearest_int(y) == -(2**200) - 1
    assert nearest_int(mpmath.mpf(5)) == 5
    with pytest.raises(ValueError):
        nearest_int(mpmath.inf)


def test_precision_env(monkeypatch):
    monkeypatch.delenv(core.PRECISION_ENV, raising=False)
    assert resolve_precision() == 128
    monkeypatch.setenv(core.PRECISION_ENV, "256")
    assert resolve_precision() == 256
    assert resolve_precision(64) == 64
    with pytest.raises(ValueError):
        resolve_precision(4)


def test_int_str_past_the_digit_limit():
    x = fib(30_000)
    s = int_str(x)
    assert len(s) > 4300 and int(s[:5]) > 0
    with core.unlimited_int_str():
        assert int(s) == x


@given(st.lists(st.integers(min_value=-50, max_value=10**6), max_size=300))
def test_exact_product(xs):
    assert exact_product(xs) == math.prod(xs)
