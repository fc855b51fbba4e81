import numpy as np
import pytest

from tau_euler.error import RejectedInputError
from tau_euler.euler_products import EulerProductSpec, truncated_product
from tau_euler.euler_products.dirichlet import (
    _integer_root,
    dirichlet_expand,
    dirichlet_sum,
    hecke_power,
    moment_coefficients,
    normalized_coefficients,
)
from tau_euler.primes import primes_upto
from tau_euler.satotate import normalize


def test_sym_one_expansion_recovers_normalized_tau(angles, table):
    # when
    c = dirichlet_expand(EulerProductSpec.sym(1), 100, angles)

    # then
    expected = normalized_coefficients(table, 100)
    assert np.allclose(c.real[1:], expected[1:], rtol=0, atol=1e-9)
    assert np.allclose(c.imag, 0, atol=1e-9)
    assert c[0] == 0


def test_sym_one_expansion_at_desk_scale(angles, table):
    c = dirichlet_expand(EulerProductSpec.sym(1), 10_000, angles)
    expected = normalized_coefficients(table, 10_000)
    assert np.max(np.abs(c.real - expected)) < 1e-9


def test_zeta_expansion_is_all_ones(angles):
    c = dirichlet_expand(EulerProductSpec.zeta(), 500, angles)
    assert np.allclose(c[1:], 1)


def test_partial_sum_tracks_truncated_product(angles, table):
    # given
    spec = EulerProductSpec.sym(1)

    # when
    partial = dirichlet_sum(normalized_coefficients(table, 10_000), 2)
    product = truncated_product(spec, 2, 10_000, angles)

    # then
    assert abs(partial - product.value) <= 2 * product.tail_hint


def test_expansion_beyond_angle_table_is_rejected(angles):
    with pytest.raises(RejectedInputError):
        dirichlet_expand(EulerProductSpec.zeta(), 20_000, angles)


def test_power_moments(table):
    a = normalized_coefficients(table, 1000)
    assert np.allclose(moment_coefficients("power", 1, 1000, table), a)
    assert np.allclose(moment_coefficients("power", 3, 1000, table), a**3)


def test_argument_moment_matches_character_expansion(angles, table):
    # when
    c = moment_coefficients("argument", 2, 10_000, table)

    # then
    assert len(c) == 101
    for p in primes_upto(100):
        assert c[p] == pytest.approx(hecke_power(angles, p, 2), abs=1e-9)


@pytest.mark.parametrize("p, k", [(2, 3), (2, 13), (3, 8), (5, 5), (7, 4), (97, 2)])
def test_hecke_power_matches_exact_tau(angles, table, p, k):
    a = normalize(table.tau(p**k), p**k)
    assert hecke_power(angles, p, k) == pytest.approx(a, abs=1e-9)


@pytest.mark.parametrize(
    "kind, m", [("power", 0), ("argument", -1), ("cube", 2)]
)
def test_moment_rejects_bad_arguments(table, kind, m):
    with pytest.raises(RejectedInputError):
        moment_coefficients(kind, m, 100, table)


@pytest.mark.parametrize(
    "limit, m, root", [(10_000, 2, 100), (10_000, 3, 21), (10_000, 4, 10), (9999, 2, 99), (1, 5, 1)]
)
def test_integer_root(limit, m, root):
    assert _integer_root(limit, m) == root


def test_sym_one_expansion_obeys_hecke_recursion(angles):
    # given
    c = dirichlet_expand(EulerProductSpec.sym(1), 10_000, angles)

    # when / then
    for p in primes_upto(100):
        a = angles.get(p).a
        assert c[p * p] == pytest.approx(a * a - 1, abs=1e-10)
        previous, current = 1, p
        while current * p <= 10_000:
            assert abs(c[current * p] - (a * c[current] - c[previous])) <= 1e-10
            previous, current = current, current * p
