import mpmath
import pytest
from hypothesis import given, strategies as st

from fibnorm.structs import build_q
from fibnorm.threshold import (
    ThresholdQuery,
    gap,
    holder_gap_bound,
    minimal_p,
    threshold_p,
    verify_threshold,
)


def test_known_values():
    assert abs(threshold_p(5, "0.5") - mpmath.mpf("16.886317030755")) < 1e-9
    assert threshold_p(2, 1) == 1


def test_cancellation_case_n2():
    # q_2 = (1, 1): the gap at p = 1 is exactly 1
    rep = verify_threshold(2, 1)
    assert rep.p_bound == 1
    assert abs(rep.gap_at_bound - 1) < mpmath.mpf(10) ** -30
    assert rep.holds


def test_n10():
    rep = verify_threshold(10, "1e-3")
    assert rep.gap_at_bound <= mpmath.mpf("1e-3")


def test_query_validation():
    with pytest.raises(ValueError):
        ThresholdQuery(1, 0.1)
    with pytest.raises(ValueError):
        ThresholdQuery(5, 0)
    with pytest.raises(ValueError):
        gap(build_q(4), 0)


@given(st.integers(min_value=2, max_value=120), st.sampled_from(["1e-1", "1e-3", "1e-6", "2", "1e-12"]))
def test_gap_within_epsilon(n, eps):
    rep = verify_threshold(n, eps)
    assert rep.holds, rep


@given(st.integers(min_value=3, max_value=40), st.sampled_from(["1e-1", "1e-4"]))
def test_minimal_p_is_not_above_bound(n, eps):
    p_min = minimal_p(n, eps)
    p_star = threshold_p(n, eps)
    assert p_min <= p_star
    assert gap(build_q(n), p_min) <= mpmath.mpf(eps)


def test_gap_matches_direct_formula():
    q = build_q(12)
    with mpmath.workprec(300):
        direct = mpmath.fsum(mpmath.mpf(x) ** 3 for x in q) ** (mpmath.mpf(1) / 3) - max(q)
    assert abs(gap(q, 3) - direct) < mpmath.mpf(2) ** -110 * direct


def test_holder_bound_is_tight_at_threshold():
    p = threshold_p(30, "1e-3")
    with mpmath.workprec(128):
        eps = mpmath.mpf("1e-3")
        assert abs(holder_gap_bound(30, p) - eps) < eps * mpmath.mpf(2) ** -100
