from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tau_euler.error import RejectedInputError
from tau_euler.polynomial import IntPolynomial

coefficients = st.lists(st.integers(-20, 20), max_size=7)


@pytest.mark.parametrize(
    "text, coeffs, canonical",
    [
        ("x^3-3x", (0, -3, 0, 1), "x^3-3x"),
        ("x^2 - 2", (-2, 0, 1), "x^2-2"),
        ("x**4-4*x**2+2", (2, 0, -4, 0, 1), "x^4-4x^2+2"),
        ("-x+5", (5, -1), "-x+5"),
        ("3", (3,), "3"),
        ("x-x", (), "0"),
        ("2x^2+x^2", (0, 0, 3), "3x^2"),
    ],
)
def test_parse(text, coeffs, canonical):
    f = IntPolynomial.parse(text)
    assert f.coeffs == coeffs
    assert str(f) == canonical


@pytest.mark.parametrize("text", ["", "x^", "x+", "2^3", "x^2--2", "y", "(x+1)", "x^1.5"])
def test_parse_rejects_malformed_text(text):
    with pytest.raises(RejectedInputError):
        IntPolynomial.parse(text)


def test_degree_leading_and_monic():
    f = IntPolynomial.parse("x^2-1")
    assert (f.degree, f.leading, f.is_monic()) == (2, 1, True)
    assert IntPolynomial([]).degree == -1
    assert not IntPolynomial.parse("2x+1").is_monic()


def test_exact_evaluation_at_fractions():
    f = IntPolynomial.parse("x^3-3x")
    assert f(Fraction(1, 2)) == Fraction(-11, 8)


def test_derivative():
    assert IntPolynomial.parse("x^4-4x^2+2").derivative() == IntPolynomial.parse(
        "4x^3-8x"
    )


@given(coefficients, coefficients, st.integers(-5, 5))
def test_arithmetic_agrees_with_evaluation(a, b, x):
    f, g = IntPolynomial(a), IntPolynomial(b)
    assert (f + g)(x) == f(x) + g(x)
    assert (f - g)(x) == f(x) - g(x)
    assert (f * g)(x) == f(x) * g(x)


@given(coefficients)
def test_canonical_text_parses_back(a):
    f = IntPolynomial(a)
    assert IntPolynomial.parse(str(f)) == f


@pytest.mark.parametrize("text", ["x^1000000000", "x^65-1", "1+x^99999999999999999999"])
def test_parse_rejects_huge_degree(text):
    with pytest.raises(RejectedInputError, match="exceeds the limit"):
        IntPolynomial.parse(text)


def test_parse_accepts_the_degree_limit():
    assert IntPolynomial.parse("x^64-x").degree == 64
