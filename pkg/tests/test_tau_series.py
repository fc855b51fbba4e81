from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tau_euler.error import RejectedInputError, TableLookupError
from tau_euler.primes import primes_upto
from tau_euler.tau_series import (
    PowerSeriesZ,
    TauTable,
    direct_expansion,
    eta_cubed,
    expand_delta,
)

KNOWN = [
    1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920,
    534612, -370944, -577738,
]


def test_first_values_are_known(table):
    assert table.values[: len(KNOWN)] == KNOWN


def test_matches_direct_expansion(table):
    assert table.values[:200] == direct_expansion(200)


def test_hecke_relation_at_prime_squares(table):
    for p in primes_upto(100):
        assert table.tau(p * p) == table.tau(p) ** 2 - p**11


def test_hecke_recursion_at_prime_powers(table):
    for p in (2, 3, 5, 7):
        k = 1
        while p ** (k + 1) <= table.limit:
            expected = table.tau(p) * table.tau(p**k) - p**11 * table.tau(p ** (k - 1))
            assert table.tau(p ** (k + 1)) == expected
            k += 1


def test_coprime_multiplicativity(table):
    for m in range(2, 100):
        for n in range(m + 1, table.limit // m + 1):
            if gcd(m, n) == 1:
                assert table.tau(m * n) == table.tau(m) * table.tau(n)


def test_truncation_stability():
    assert expand_delta(50).values == expand_delta(500).values[:50]


def test_multiplication_method_does_not_change_result():
    # given
    schoolbook_only = expand_delta(700, threshold=10**6)

    # when
    kronecker_only = expand_delta(700, threshold=1)

    # then
    assert kronecker_only == schoolbook_only


@pytest.mark.parametrize("limit", [0, -5])
def test_limit_must_be_positive(limit):
    with pytest.raises(RejectedInputError):
        expand_delta(limit)


def test_limit_beyond_memory_budget_is_rejected():
    with pytest.raises(RejectedInputError):
        expand_delta(101, max_limit=100)


@pytest.mark.parametrize("n", [0, 101])
def test_lookup_outside_table(n):
    with pytest.raises(TableLookupError):
        expand_delta(100).tau(n)


def test_table_rejects_wrong_length():
    with pytest.raises(ValueError):
        TauTable(limit=3, values=[1, -24])


def test_restrict():
    table = expand_delta(100)
    assert table.restrict(10).values == KNOWN[:10]
    with pytest.raises(TableLookupError):
        table.restrict(101)


def test_eta_cubed_is_sparse():
    series = eta_cubed(30)
    nonzero = {k: c for k, c in enumerate(series.coeffs) if c}
    assert nonzero == {0: 1, 1: -3, 3: 5, 6: -7, 10: 9, 15: -11, 21: 13, 28: -15}


def test_mismatched_truncation_orders_are_rejected():
    with pytest.raises(RejectedInputError):
        PowerSeriesZ([1, 2], 3).multiply(PowerSeriesZ([1, 2], 4))


def test_unknown_multiplication_method():
    series = PowerSeriesZ([1, 2], 3)
    with pytest.raises(RejectedInputError):
        series.multiply(series, method="fft")


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.integers(-(10**30), 10**30), min_size=1, max_size=40),
    st.lists(st.integers(-(10**30), 10**30), min_size=1, max_size=40),
    st.integers(0, 45),
)
def test_kronecker_agrees_with_schoolbook(a, b, order):
    left, right = PowerSeriesZ(a, order), PowerSeriesZ(b, order)
    assert left.multiply(right, method="kronecker") == left.multiply(
        right, method="schoolbook"
    )


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-(10**6), 10**6), min_size=1, max_size=40))
def test_kronecker_squaring_agrees_with_schoolbook(a):
    series = PowerSeriesZ(a, len(a) + 3)
    assert series.square(method="kronecker") == series.square(method="schoolbook")


def test_shift_drops_terms_past_truncation():
    assert PowerSeriesZ([1, 2, 3], 2).shift(1).coeffs == [0, 1, 2]
