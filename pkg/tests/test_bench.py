import csv
import io

import pytest
from hypothesis import given, strategies as st

from fibnorm import bench as B
from fibnorm.core import fib


@given(st.integers(min_value=1, max_value=400))
def test_strategies_agree(n):
    for q, impl in B.IMPLEMENTATIONS.items():
        assert impl[B.DIRECT](n) == impl[B.CLOSED](n), (q, n)


def test_trivial_case():
    rep = B.run_bench(B.BenchCase("q1norm", 1))
    assert rep.value == 1
    assert len({r.digest for r in rep.rows}) == 1


def test_q2_digest_matches_product():
    n = 10_000
    rep = B.run_bench(B.BenchCase("q2norm_sq", n))
    assert {r.digest for r in rep.rows} == {B.digest(fib(n) * fib(n + 1))}


def test_disagreement_aborts(monkeypatch):
    broken = dict(B.IMPLEMENTATIONS["q1norm"])
    broken[B.CLOSED] = lambda n: 7
    monkeypatch.setitem(B.IMPLEMENTATIONS, "q1norm", broken)
    with pytest.raises(B.StrategyDisagreement):
        B.run_bench(B.BenchCase("q1norm", 50))


def test_case_validation():
    with pytest.raises(ValueError):
        B.BenchCase("q1norm", 0)
    with pytest.raises(ValueError):
        B.BenchCase("q1norm", 10, repetitions=2)
    with pytest.raises(ValueError):
        B.BenchCase("q9", 10)
    with pytest.raises(ValueError):
        B.BenchCase("q1norm", 10, strategies=("fast",))


def test_csv_layout():
    reps = B.run_many(["q1norm", "s1norm"], [200], repetitions=3)
    rows = list(csv.reader(io.StringIO(B.to_csv(reps))))
    assert tuple(rows[0]) == B.CSV_COLUMNS
    assert len(rows) == 5
    assert all(int(r[3]) >= 0 for r in rows[1:])
    assert all(len(r[0].split()) == 1 for r in rows)


def test_timings_have_requested_repetitions():
    rep = B.run_bench(B.BenchCase("s1norm", 300, repetitions=5), seed=3)
    assert all(len(r.samples_ns) == 5 for r in rep.rows)
    assert rep.speedup is not None
