"""Chebyshev characterization of monic integer polynomials bounded by 2 on [-2, 2].

A monic f in Z[x] of degree m satisfies |f(x)| <= 2 on [-2, 2] exactly when
f(x) = 2 T_m(x/2). The unitary branch is decided by coefficient equality;
every other polynomial gets an exact rational witness x0 with |f(x0)| > 2.
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Optional, Union

import numpy as np
from numpy.polynomial import polynomial as P
from pydantic import BaseModel

from .error import RejectedInputError, WitnessExhausted
from .polynomial import IntPolynomial

LOGGER = logging.getLogger(__name__)

MAX_SUBDIVISION_LEVEL = 20
NODE_DENOMINATOR = 10**12


@lru_cache(maxsize=None)
def dilated_chebyshev(m: int) -> IntPolynomial:
    """2 T_m(x/2) via S_0 = 2, S_1 = x, S_(k+1) = x S_k - S_(k-1)."""
    if m < 0:
        raise RejectedInputError(f"degree must be non-negative, got {m}")
    previous, current = IntPolynomial.constant(2), IntPolynomial.x()
    if m == 0:
        return previous
    for _ in range(m - 1):
        previous, current = current, IntPolynomial.x() * current - previous
    return current


class Witness(BaseModel):
    x0: Fraction
    value: Fraction

    class Config:
        arbitrary_types_allowed = True
        json_encoders = {Fraction: str}


class Unitary(BaseModel):
    verdict: Literal["unitary"] = "unitary"
    m: int


class NonUnitary(BaseModel):
    verdict: Literal["non-unitary"] = "non-unitary"
    witness: Witness

    class Config:
        json_encoders = {Fraction: str}


Verdict = Union[Unitary, NonUnitary]


def _check_input(f: IntPolynomial):
    if f.degree < 1:
        raise RejectedInputError(f"polynomial {f} is constant")
    if not f.is_monic():
        raise RejectedInputError(f"polynomial {f} is not monic")


def _violates(f: IntPolynomial, x0: Fraction) -> Optional[Witness]:
    value = f(x0)
    if abs(value) > 2:
        return Witness(x0=x0, value=value)
    return None


def _extremal_nodes(m: int):
    """Rational approximations of 2cos(k pi / m), k = 0..m, clamped to [-2, 2]."""
    for k in range(m + 1):
        node = Fraction(2 * math.cos(k * math.pi / m)).limit_denominator(
            NODE_DENOMINATOR
        )
        yield min(Fraction(2), max(Fraction(-2), node))


def witness_search(f: IntPolynomial) -> Optional[Witness]:
    """Exact rational x0 in [-2, 2] with |f(x0)| > 2, or None when none is found.

    The extremal nodes of 2T_m(x/2) are scanned first and the largest violation
    among them wins (ties go to the earlier node). Failing that, [-2, 2] is
    bisected level by level up to 2^20 subintervals.
    """
    _check_input(f)
    best = None
    for node in _extremal_nodes(f.degree):
        found = _violates(f, node)
        if found and (best is None or abs(found.value) > abs(best.value)):
            best = found
    if best:
        return best

    for level in range(1, MAX_SUBDIVISION_LEVEL + 1):
        denominator = 2**level
        for j in range(1, denominator, 2):
            found = _violates(f, Fraction(-2) + Fraction(4 * j, denominator))
            if found:
                LOGGER.debug("Witness for %s found at subdivision level %d", f, level)
                return found
    return None


def classify(f: IntPolynomial) -> Verdict:
    """Unitary(m) iff f = 2T_m(x/2); otherwise a certified rational witness."""
    _check_input(f)
    m = f.degree
    if f == dilated_chebyshev(m):
        return Unitary(m=m)
    witness = witness_search(f)
    if witness is None:
        raise WitnessExhausted(f"no witness found for {f} although f != 2T_{m}(x/2)")
    return NonUnitary(witness=witness)


def sup_norm(f: IntPolynomial) -> float:
    """max |f| on [-2, 2] from the endpoints and the real critical points."""
    candidates = [-2.0, 2.0]
    if f.degree >= 2:
        for root in P.polyroots(f.derivative().as_array()):
            if abs(root.imag) < 1e-9 and -2 <= root.real <= 2:
                candidates.append(float(root.real))
    return float(np.max(np.abs(P.polyval(np.array(candidates), f.as_array()))))


def rescaled_sup(f: IntPolynomial, grid: int = 4096) -> float:
    """max over a grid on [-1, 1] of |g|, g(x) = f(2x) / 2^m.

    f is bounded by 2 on [-2, 2] exactly when this stays below 2^(1-m).
    """
    x = np.linspace(-1.0, 1.0, grid + 1)
    return float(np.max(np.abs(f(2 * x)))) / 2**f.degree
