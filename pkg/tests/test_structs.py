import pytest
from hypothesis import given, strategies as st

from fibnorm.core import fib, kfib
from fibnorm.structs import (
    FibMatrix,
    build_F,
    build_Q,
    build_q,
    build_q_nr,
    build_S,
    multiplicities,
    s_norm_power_sum,
)

F5 = ((1, 0, 0, 0, 0), (1, 1, 0, 0, 0), (2, 1, 1, 0, 0), (3, 2, 1, 1, 0), (5, 3, 2, 1, 1))
Q5 = ((1, 1, 2, 3, 5), (1, 2, 3, 5, 8), (2, 3, 6, 9, 15), (3, 5, 9, 15, 24), (5, 8, 15, 24, 40))


def test_vectors():
    assert build_q(6).entries == (1, 1, 2, 3, 5, 8)
    assert build_q_nr(3, 4).entries == (3, 5, 8, 13)
    assert build_q_nr(0, 2).entries == (1, 1)
    with pytest.raises(ValueError):
        build_q(0)
    with pytest.raises(ValueError):
        build_q_nr(-1, 3)


def test_worked_matrices():
    assert build_F(2, 5).entries == F5
    assert build_Q(2, 5).entries == Q5
    s = build_S(2, 5)
    assert s.entries[0] == (1, 1, 2, 3, 5) and s.entries[4] == (5, 8, 13, 21, 34)


def _matmul_t(a):
    n = len(a)
    return tuple(tuple(sum(a[i][l] * a[j][l] for l in range(n)) for j in range(n)) for i in range(n))


@pytest.mark.parametrize("k", [2, 3, 4, 5])
@pytest.mark.parametrize("n", [1, 2, 7, 15])
def test_q_is_gram_matrix_of_f(k, n):
    assert build_Q(k, n).entries == _matmul_t(build_F(k, n).entries)


@given(st.integers(min_value=2, max_value=6), st.integers(min_value=1, max_value=25))
def test_shapes_and_symmetry(k, n):
    f, q, s = build_F(k, n), build_Q(k, n), build_S(k, n)
    assert all(len(r) == n for m in (f, q, s) for r in m.entries)
    assert q.is_symmetric() and s.is_symmetric()
    assert all(f.entry(i, j) == 0 for i in range(1, n + 1) for j in range(i + 1, n + 1))
    assert all(s.entry(i, j) == kfib(k, i + j - 1) for i in range(1, n + 1) for j in range(1, n + 1))


@given(st.integers(min_value=1, max_value=40))
def test_multiplicities_match_entry_counts(n):
    s = build_S(2, n)
    counts = {}
    for row in s.entries:
        for x in row:
            counts[x] = counts.get(x, 0) + 1
    expected = {}
    for i, w in multiplicities(n).items():
        expected[fib(i)] = expected.get(fib(i), 0) + w
    assert counts == expected
    assert sum(multiplicities(n).weights) == n * n


def test_s_power_sum():
    assert s_norm_power_sum(5, 1) == 193
    assert s_norm_power_sum(5, 2) == sum(x * x for r in build_S(2, 5).entries for x in r)


def test_json_round_trip_keeps_big_entries():
    m = build_S(2, 60)
    back = FibMatrix.from_json(m.to_json())
    assert back == m
    assert m.to_csv().splitlines()[0].split(",")[:3] == ["1", "1", "2"]


def test_bad_orders():
    with pytest.raises(ValueError):
        build_F(1, 3)
    with pytest.raises(ValueError):
        build_S(2, 0)
