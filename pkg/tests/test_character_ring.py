import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tau_euler.character_ring import (
    BoundaryAmbiguous,
    DegreeTwoFamily,
    NonUnitaryResult,
    UnitaryResult,
    VirtualCharacter,
    cos_character,
    from_polynomial,
    mul,
    unitarity_test,
)
from tau_euler.chebyshev_gate import Unitary, classify, dilated_chebyshev
from tau_euler.config import UnitarityConfig
from tau_euler.error import RejectedInputError
from tau_euler.polynomial import IntPolynomial

characters = st.dictionaries(st.integers(0, 6), st.integers(-5, 5), max_size=4).map(
    VirtualCharacter
)
thetas = st.floats(0.0, math.pi)


def chi(m, mult=1):
    return VirtualCharacter.chi(m, mult)


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (1, 1, {0: 1, 2: 1}),
        (2, 3, {1: 1, 3: 1, 5: 1}),
        (0, 4, {4: 1}),
        (3, 3, {0: 1, 2: 1, 4: 1, 6: 1}),
    ],
)
def test_clebsch_gordan(a, b, expected):
    assert mul(chi(a), chi(b)) == VirtualCharacter(expected)


def test_decomposition_of_cubic():
    h = from_polynomial(IntPolynomial.parse("x^3-3x"))
    assert h == chi(3) - chi(1)
    assert str(h) == "chi_3 - chi_1"


@pytest.mark.parametrize("m", range(0, 9))
def test_cos_character_is_the_dilated_chebyshev(m):
    assert cos_character(m) == from_polynomial(dilated_chebyshev(m))


def test_evaluate_matches_sine_ratio():
    theta = 0.7
    for m in range(8):
        expected = math.sin((m + 1) * theta) / math.sin(theta)
        assert chi(m).evaluate(theta) == pytest.approx(expected, rel=1e-12)


def test_evaluate_scalar_returns_float():
    assert isinstance(chi(2).evaluate(1.0), float)


def test_negative_index_is_rejected():
    with pytest.raises(RejectedInputError):
        VirtualCharacter({-1: 1})


def test_zero_coefficients_are_dropped():
    assert VirtualCharacter({2: 0, 1: 3}).coeffs == {1: 3}
    assert chi(1) - chi(1) == VirtualCharacter.zero()


@settings(deadline=None)
@given(characters, characters, thetas)
def test_evaluation_is_a_ring_homomorphism(x, y, theta):
    product = x.evaluate(theta) * y.evaluate(theta)
    assert (x * y).evaluate(theta) == pytest.approx(product, rel=1e-9, abs=1e-7)
    total = x.evaluate(theta) + y.evaluate(theta)
    assert (x + y).evaluate(theta) == pytest.approx(total, rel=1e-9, abs=1e-9)


@given(st.lists(st.integers(-9, 9), max_size=6))
def test_to_polynomial_inverts_from_polynomial(coeffs):
    f = IntPolynomial(coeffs)
    assert from_polynomial(f).to_polynomial() == f


@pytest.mark.parametrize(
    "h, certified_by",
    [
        (chi(1), "chebyshev-gate"),
        (chi(2) - chi(0), "chebyshev-gate"),
        (chi(0), "grid"),
        (chi(0, 2), "constant"),
        (VirtualCharacter.zero(), "grid"),
    ],
)
def test_unitary_families(h, certified_by):
    result = unitarity_test(DegreeTwoFamily(sign=1, h=h))
    assert isinstance(result, UnitaryResult)
    assert result.certified_by == certified_by


def test_non_unitary_family_reports_location():
    # given
    fam = DegreeTwoFamily(sign=-1, h=chi(2))

    # when
    result = unitarity_test(fam)

    # then
    assert isinstance(result, NonUnitaryResult)
    assert abs(result.value) == pytest.approx(3.0)
    assert result.theta0 in (pytest.approx(0.0, abs=1e-6), pytest.approx(math.pi, abs=1e-6))


def test_non_monic_boundary_case_is_ambiguous():
    # given
    wide_band = UnitarityConfig(ambiguity_band=10.0)

    # when
    result = unitarity_test(DegreeTwoFamily(sign=1, h=chi(1, 2)), config=wide_band)

    # then
    assert isinstance(result, BoundaryAmbiguous)


def test_grid_must_not_be_tiny():
    with pytest.raises(RejectedInputError):
        unitarity_test(DegreeTwoFamily(sign=1, h=chi(1)), grid=8)


def _agrees_with_gate(f: IntPolynomial):
    result = unitarity_test(DegreeTwoFamily(sign=1, h=from_polynomial(f)))
    assert not isinstance(result, BoundaryAmbiguous), str(f)
    assert isinstance(result, UnitaryResult) == isinstance(classify(f), Unitary), str(f)


def _monic(max_degree: int, bound: int):
    for degree in range(1, max_degree + 1):
        for lower in itertools.product(range(-bound, bound + 1), repeat=degree):
            yield IntPolynomial(list(lower) + [1])


def test_unitarity_test_agrees_with_gate_on_small_family():
    for f in _monic(3, 3):
        _agrees_with_gate(f)


@pytest.mark.slow
def test_unitarity_test_agrees_with_gate_on_full_family():
    for f in _monic(4, 6):
        _agrees_with_gate(f)


@pytest.mark.parametrize("m", range(0, 11))
def test_cos_character_is_unitary(m):
    # when
    result = unitarity_test(DegreeTwoFamily(sign=-1, h=cos_character(m)))

    # then
    assert isinstance(result, UnitaryResult)
    assert result.max_abs == pytest.approx(2.0)
    assert result.certified_by == ("constant" if m == 0 else "chebyshev-gate")


@pytest.mark.parametrize(
    "text", ["x^3-3x+1", "x^5-4x^2+7", "-2x^4+x-3", "x^6-6x^4+9x^2-2", "5"]
)
def test_from_polynomial_evaluates_like_the_polynomial(text):
    # given
    f = IntPolynomial.parse(text)
    theta = np.random.default_rng(20).uniform(0.0, math.pi, 100)

    # when
    values = from_polynomial(f).evaluate(theta)

    # then
    assert np.max(np.abs(values - f(2 * np.cos(theta)))) <= 1e-10


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=6))
def test_from_polynomial_is_monic_at_the_top(lower):
    # given
    f = IntPolynomial(lower + [1])

    # when
    h = from_polynomial(f)

    # then
    assert set(h.coeffs) <= set(range(f.degree + 1))
    assert h.coeffs[f.degree] == 1
