import itertools
import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tau_euler.chebyshev_gate import (
    NonUnitary,
    Unitary,
    classify,
    dilated_chebyshev,
    rescaled_sup,
    sup_norm,
    witness_search,
)
from tau_euler.error import RejectedInputError, WitnessExhausted
from tau_euler.euler_products import example_family_verdict
from tau_euler.polynomial import IntPolynomial

UNITARY = {"x", "x^2-2", "x^3-3x", "x^4-4x^2+2"}


def monic_family(max_degree: int, bound: int):
    for degree in range(1, max_degree + 1):
        for lower in itertools.product(range(-bound, bound + 1), repeat=degree):
            yield IntPolynomial(list(lower) + [1])


@pytest.mark.parametrize(
    "m, expected",
    [(0, "2"), (1, "x"), (2, "x^2-2"), (3, "x^3-3x"), (4, "x^4-4x^2+2"), (5, "x^5-5x^3+5x")],
)
def test_dilated_chebyshev(m, expected):
    assert str(dilated_chebyshev(m)) == expected


def test_classify_exhaustively_up_to_degree_four():
    # given
    unitary = set()
    checked = 0

    # when
    for f in monic_family(4, 6):
        verdict = classify(f)
        checked += 1
        if isinstance(verdict, Unitary):
            unitary.add(str(f))
            assert verdict.m == f.degree
        else:
            x0, value = verdict.witness.x0, verdict.witness.value
            assert -2 <= x0 <= 2
            assert abs(value) > 2
            assert f(x0) == value

    # then
    assert checked == 13 + 13**2 + 13**3 + 13**4
    assert unitary == UNITARY


@pytest.mark.parametrize("m", range(-3, 6))
def test_example_family_is_unitary_only_at_one(m):
    verdict = example_family_verdict("zex", m)
    assert isinstance(verdict, Unitary) == (m == 1)


@pytest.mark.parametrize("m", range(-4, 5))
def test_shifted_family_is_unitary_only_at_zero(m):
    verdict = example_family_verdict("zshift", m)
    assert isinstance(verdict, Unitary) == (m == 0)


def test_witness_prefers_largest_violation_at_extremal_nodes():
    # x^2 - 1 takes 3 at both endpoints and -1 at 0; the first node wins
    witness = witness_search(IntPolynomial.parse("x^2-1"))
    assert witness.x0 == 2
    assert witness.value == 3


def test_no_witness_for_chebyshev():
    assert witness_search(dilated_chebyshev(3)) is None


@pytest.mark.parametrize("text", ["3", "2x^2-2", "0"])
def test_rejects_constant_or_non_monic(text):
    with pytest.raises(RejectedInputError):
        classify(IntPolynomial.parse(text))


def test_exhausted_search_is_an_inconsistency(mocker):
    # given
    mocker.patch("tau_euler.chebyshev_gate.witness_search", return_value=None)

    # when / then
    with pytest.raises(WitnessExhausted):
        classify(IntPolynomial.parse("x^2-1"))


def test_witness_serializes_rationals_as_strings():
    verdict = classify(IntPolynomial.parse("x^3-3x+1"))
    assert isinstance(verdict, NonUnitary)
    document = json.loads(verdict.json())
    assert document["verdict"] == "non-unitary"
    assert Fraction(document["witness"]["x0"]) == verdict.witness.x0
    assert Fraction(document["witness"]["value"]) == verdict.witness.value


@pytest.mark.parametrize(
    "text, expected",
    [("x", 2.0), ("x^2-2", 2.0), ("x^3-3x", 2.0), ("x^2-1", 3.0), ("x-5", 7.0), ("x^3", 8.0)],
)
def test_sup_norm(text, expected):
    assert sup_norm(IntPolynomial.parse(text)) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("m", range(1, 7))
def test_rescaled_chebyshev_meets_the_extremal_bound(m):
    assert rescaled_sup(dilated_chebyshev(m)) == pytest.approx(2.0 ** (1 - m), rel=1e-9)


def test_rescaled_non_unitary_exceeds_the_bound():
    f = IntPolynomial.parse("x^2-1")
    assert rescaled_sup(f) > 2.0 ** (1 - f.degree)


def _meets_rescaled_bound(f: IntPolynomial) -> bool:
    return rescaled_sup(f) <= 2.0 ** (1 - f.degree) * (1 + 1e-12)


def test_rescaled_bound_matches_classify_up_to_degree_four():
    for f in monic_family(4, 6):
        assert _meets_rescaled_bound(f) == isinstance(classify(f), Unitary), str(f)


@pytest.mark.slow
def test_gate_equivalences_at_degree_five():
    # given
    chebyshev = dilated_chebyshev(5)
    unitary = []

    # when
    for lower in itertools.product(range(-6, 7), repeat=5):
        f = IntPolynomial(list(lower) + [1])
        is_unitary = isinstance(classify(f), Unitary)
        assert is_unitary == (witness_search(f) is None), str(f)
        assert is_unitary == (f == chebyshev), str(f)
        assert is_unitary == _meets_rescaled_bound(f), str(f)
        if is_unitary:
            unitary.append(f)

    # then
    assert unitary == [chebyshev]


@given(st.integers(0, 5), st.floats(0.0, 2 * np.pi))
def test_dilated_chebyshev_is_twice_cosine_of_multiple(m, theta):
    value = dilated_chebyshev(m)(2 * np.cos(theta))
    assert abs(value - 2 * np.cos(m * theta)) <= 1e-12


def test_dilated_chebyshev_at_random_angles():
    # Horner rounding grows with the coefficients of the higher degrees
    theta = np.random.default_rng(7).uniform(0.0, np.pi, 100)
    for m in range(0, 11):
        values = dilated_chebyshev(m)(2 * np.cos(theta))
        assert np.max(np.abs(values - 2 * np.cos(m * theta))) <= 1e-12 * 2**m
