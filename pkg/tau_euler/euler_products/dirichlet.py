"""Dirichlet coefficients from Euler products and the tau moment series."""

import logging
from math import isqrt
from typing import Literal

import numpy as np

from ..character_ring import VirtualCharacter
from ..error import RejectedInputError
from ..primes import primes_upto
from ..satotate import AngleTable, normalize
from ..tau_series import TauTable
from . import EulerProductSpec, factor_at

LOGGER = logging.getLogger(__name__)


def dirichlet_expand(
    spec: EulerProductSpec, limit: int, angles: AngleTable
) -> np.ndarray:
    """Coefficients c(0..limit) of prod_p F_p(p^-s)^-1 = sum c(n) n^-s; c(0) = 0.

    Primes are folded in one at a time: for n free of p, c(n p^k) = b_k c(n),
    where b_k are the power-series coefficients of 1 / F_p(T).
    """
    if limit < 1:
        raise RejectedInputError(f"limit must be at least 1, got {limit}")
    if limit > angles.cutoff:
        raise RejectedInputError(
            f"limit {limit} exceeds angle table cutoff {angles.cutoff}"
        )
    c = np.zeros(limit + 1, dtype=complex)
    c[1] = 1
    for p in primes_upto(limit):
        powers = []
        power = p
        while power <= limit:
            powers.append(power)
            power *= p
        b = factor_at(spec, angles.get(p)).inverse_series(len(powers) + 1)
        for k, pk in enumerate(powers, start=1):
            sources = np.arange(1, limit // pk + 1)
            sources = sources[sources % p != 0]
            c[sources * pk] = b[k] * c[sources]
    return c


def dirichlet_sum(coeffs: np.ndarray, s: complex) -> complex:
    """Partial sum of c(n) n^-s over the given coefficients."""
    n = np.arange(1, len(coeffs))
    return complex(np.sum(coeffs[1:] * n.astype(float) ** (-complex(s))))


def normalized_coefficients(table: TauTable, limit: int) -> np.ndarray:
    """a(0..limit) with a(n) = tau(n) n^-11/2; a(0) = 0."""
    if limit > table.limit:
        raise RejectedInputError(f"limit {limit} exceeds tau table {table.limit}")
    a = np.zeros(limit + 1)
    for n in range(1, limit + 1):
        a[n] = normalize(table.tau(n), n)
    return a


def moment_coefficients(
    kind: Literal["power", "argument"], m: int, limit: int, table: TauTable
) -> np.ndarray:
    """Coefficients of sum a(n)^m n^-s ("power") or sum a(n^m) n^-s ("argument").

    The argument series is returned for n^m <= limit only.
    """
    if m < 1:
        raise RejectedInputError(f"moment order must be at least 1, got {m}")
    if kind == "power":
        return normalized_coefficients(table, limit) ** m
    if kind == "argument":
        top = limit if m == 1 else _integer_root(limit, m)
        c = np.zeros(top + 1)
        for n in range(1, top + 1):
            c[n] = normalize(table.tau(n**m), n**m)
        return c
    raise RejectedInputError(f"Unknown moment kind: {kind}")


def _integer_root(limit: int, m: int) -> int:
    root = isqrt(limit) if m == 2 else int(round(limit ** (1 / m)))
    while root**m > limit:
        root -= 1
    while (root + 1) ** m <= limit:
        root += 1
    return root


def hecke_power(angles: AngleTable, p: int, k: int) -> float:
    """a(p^k) from theta(p) alone: the value of chi_k at theta(p)."""
    return VirtualCharacter.chi(k).evaluate(angles.get(p).theta)
