import mpmath
import pytest
from hypothesis import given, strategies as st

from fibnorm import distances as D

ns = st.integers(min_value=0, max_value=120)
rs = st.integers(min_value=1, max_value=30)
ps = st.integers(min_value=1, max_value=4)


def test_worked_case():
    assert D.distance_direct(1, 3, 2, 1) == 10
    assert D.distance_closed(1, 3, 2, 1) == 10
    pg = D.parallelogram_check(1, 3, 2)
    assert pg.lhs == pg.rhs == 224 and pg.holds
    g = D.golden_approx(1, 3, 2)
    assert g.exact == 224
    assert abs(g.approx - mpmath.mpf("220.0526224699857")) < 1e-10


def test_shift_identity_only_for_two_and_three():
    for d in (2, 3):
        assert all(D.shift_identity_holds(m, d) for m in range(200))
    for d in (1, 4, 5, 6):
        assert not all(D.shift_identity_holds(m, d) for m in range(10))
    assert D.distance_closed(4, 3, 5, 2) is None


@given(ns, rs, ps, st.sampled_from([2, 3]))
def test_closed_forms(n, r, p, d):
    assert D.distance_closed(n, r, d, p) == D.distance_direct(n, r, d, p)


@given(ns, rs, st.integers(min_value=1, max_value=8))
def test_dominance_and_sum_diff(n, r, d):
    assert D.ShiftedPair(n, r, d).dominates
    assert D.sum_diff_one_norm(n, r, d).agree


def test_sum_diff_smallest_case():
    rep = D.sum_diff_one_norm(1, 1, 1)
    assert rep.direct == rep.closed_form == 4


@given(ns, rs, st.integers(min_value=1, max_value=8))
def test_parallelogram(n, r, d):
    assert D.parallelogram_check(n, r, d).holds


def test_golden_error_shrinks():
    errs = [abs(D.golden_approx(n, 3, 2).rel_err) for n in range(5, 81)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_validation():
    with pytest.raises(ValueError):
        D.ShiftedPair(-1, 2, 2)
    with pytest.raises(ValueError):
        D.distance_closed_d2(0, 0, 1)
    with pytest.raises(ValueError):
        D.distance_direct(1, 2, 2, 0)
