import json

import pytest
from hypothesis import given, strategies as st

from fibnorm import identities as I
from fibnorm.core import fib

SMALL = {"n": range(1, 31), "r": range(1, 8), "k": range(2, 5), "d": range(1, 4)}
ERRATA = {"Eq6.cubes", "P21.F-one", "P34.S-zero", "Eq11.Q"}


def test_registry_shape():
    assert len(I.REGISTRY) >= 34
    assert set(I.errata()) == ERRATA
    for base in ERRATA:
        assert any(I.AS_PRINTED[a][0] == base for a in I.AS_PRINTED)


@pytest.mark.parametrize("identity_id", sorted(I.REGISTRY))
def test_each_identity_on_small_ranges(identity_id):
    rep = I.verify(identity_id, SMALL)
    expected = I.VERIFIED_WITH_ERRATUM if identity_id in ERRATA else I.VERIFIED
    assert rep.status == expected, rep
    assert rep.checked > 0


@pytest.mark.parametrize("printed_id", sorted(I.AS_PRINTED))
def test_printed_forms_are_refuted(printed_id):
    rep = I.verify(printed_id, SMALL)
    assert rep.status == I.REFUTED
    assert rep.counterexample["params"]


def test_counterexamples_are_minimal():
    assert I.verify("Eq6.cubes-as-printed").counterexample["params"] == {"n": 2}
    assert I.verify("P4.cubes-as-printed").counterexample["params"] == {"n": 1}
    assert I.verify("P34.S-zero-as-printed").counterexample["params"] == {"n": 2}
    cex = I.verify("Eq11.Q-as-printed", {"k": [2], "n": range(1, 10)}).counterexample
    assert cex["params"] == {"k": 2, "n": 2} and cex["entry"] == [1, 2]


def test_corrected_cubes_formula():
    for n in range(0, 60):
        assert I.closed_sum_cubes(n) == sum(fib(i) ** 3 for i in range(1, n + 1))


@given(st.integers(min_value=1, max_value=150))
def test_corrected_f_one_norm(n):
    assert I.closed_Fmatrix("one", n) == fib(n + 4) - 3 - n


def test_report_json_is_plain_data():
    rep = I.verify("Eq6.cubes", {"n": range(1, 20)})
    doc = rep.to_json()
    assert json.loads(json.dumps(doc)) == doc
    assert doc["status"] == I.VERIFIED_WITH_ERRATUM and "erratum_note" in doc


def test_unknown_id():
    with pytest.raises(KeyError):
        I.verify("no-such-identity")


def test_coverage_lists_every_erratum_item():
    covered = I.covered_items()
    assert {"P21", "P34", "Eq11", "Eq6"} <= covered
