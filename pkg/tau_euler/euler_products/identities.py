"""Factorization identities between the degree-two products and symmetric powers.

Each identity is an equality of polynomials in T at a single prime; where one
side is taken at 2s, the factor is written in T^2. A quotient of products
A / B becomes the local statement (factor of quotient) * F_B = F_A.

    zeta-square   1 - 2T + T^2 = (1 - T)^2  and  (1 + 2T + T^2)(1 - T)^2 = (1 - T^2)^2
    z1-plus       Z_1^+(T) Sym^1(T) Sym^0(T^2) = Sym^2(T^2)
    sym-minus     Z_m^-(T) Sym^(m-2)(T) = Sym^m(T)
    sym-plus      Z_m^+(T) Sym^(2m-2)(T^2) Sym^m(T) = Sym^(2m)(T^2) Sym^(m-2)(T)
    shimura       (1 - T)(1 - (a(p^2) - 1)T + T^2) = 1 - a(p^2)T + a(p^2)T^2 - T^3
                  = Sym^2(T)
"""

import logging
from functools import partial
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel

from ..config import WorkersConfig
from ..error import RejectedInputError
from ..satotate import AngleTable, PrimeAngle, normalized_square
from ..tau_series import TauTable
from ..workers import map_chunks
from . import EulerProductSpec, LocalFactor, factor_at, sym_factor, truncated_product

LOGGER = logging.getLogger(__name__)

IDENTITIES = ("zeta-square", "z1-plus", "sym-minus", "sym-plus", "shimura")
INDEXED = ("sym-minus", "sym-plus")
MAX_M = 10
COEFFICIENT_TOLERANCE = 1e-12
RELATIVE_TOLERANCE = 1e-10
TRUNCATED_POINTS = (2, 3, 2 + 1j)


Pairs = List[Tuple[LocalFactor, LocalFactor]]


class IdentityReport(BaseModel):
    identity: str
    p: int
    m: Optional[int] = None
    max_coefficient_error: float
    max_relative_error: float
    square_crosscheck_error: Optional[float] = None


class IdentityRow(BaseModel):
    identity: str
    m: Optional[int] = None
    primes: int
    max_error: float
    max_relative_error: float
    passed: bool


class TruncatedIdentityRow(BaseModel):
    identity: str
    m: int
    s: str
    cutoff: int
    relative_error: float
    passed: bool


def _zpm(m: int, sign: int, angle: PrimeAngle) -> LocalFactor:
    return factor_at(EulerProductSpec.zpm(m, sign), angle)


def _zeta_square(angle: PrimeAngle, m: Optional[int]) -> Pairs:
    zeta = LocalFactor([1, -1])
    return [
        (_zpm(0, -1, angle), zeta**2),
        (_zpm(0, 1, angle) * zeta**2, zeta.squared_argument() ** 2),
    ]


def _z1_plus(angle: PrimeAngle, m: Optional[int]) -> Pairs:
    theta = angle.theta
    lhs = (
        _zpm(1, 1, angle)
        * sym_factor(1, theta)
        * sym_factor(0, theta).squared_argument()
    )
    return [(lhs, sym_factor(2, theta).squared_argument())]


def _sym_minus(angle: PrimeAngle, m: int) -> Pairs:
    lhs = _zpm(m, -1, angle) * sym_factor(m - 2, angle.theta)
    return [(lhs, sym_factor(m, angle.theta))]


def _sym_plus(angle: PrimeAngle, m: int) -> Pairs:
    theta = angle.theta
    lhs = (
        _zpm(m, 1, angle)
        * sym_factor(2 * m - 2, theta).squared_argument()
        * sym_factor(m, theta)
    )
    rhs = sym_factor(2 * m, theta).squared_argument() * sym_factor(m - 2, theta)
    return [(lhs, rhs)]


def _shimura(angle: PrimeAngle, m: Optional[int]) -> Pairs:
    a_p2 = angle.a**2 - 1
    quadratic = factor_at(EulerProductSpec(kind="zex", m=1), angle)
    cubic = LocalFactor([1, -a_p2, a_p2, -1])
    product = LocalFactor([1, -1]) * quadratic
    return [(product, cubic), (cubic, sym_factor(2, angle.theta))]


CHECKS = {
    "zeta-square": _zeta_square,
    "z1-plus": _z1_plus,
    "sym-minus": _sym_minus,
    "sym-plus": _sym_plus,
    "shimura": _shimura,
}


def _errors(identity_id: str, angle: PrimeAngle, m: Optional[int]):
    """(absolute, relative) coefficient error of identity_id at one prime."""
    pairs = CHECKS[identity_id](angle, m)
    return (
        max(left.distance(right) for left, right in pairs),
        max(left.relative_distance(right) for left, right in pairs),
    )


def _check_arguments(identity_id: str, m: Optional[int]):
    if identity_id not in CHECKS:
        raise RejectedInputError(f"Unknown identity: {identity_id}")
    if identity_id in INDEXED and (m is None or not 1 <= m <= MAX_M):
        raise RejectedInputError(f"{identity_id} needs 1 <= m <= {MAX_M}, got {m}")


def verify_local_identity(
    identity_id: str,
    p: int,
    angles: AngleTable,
    m: Optional[int] = None,
    table: Optional[TauTable] = None,
) -> IdentityReport:
    """Expand both sides at p and report the largest coefficient difference.

    For shimura, a table covering p^2 adds an independent check of
    a(p^2) = a(p)^2 - 1 against tau(p^2) p^-11.
    """
    _check_arguments(identity_id, m)
    angle = angles.get(p)
    absolute, relative = _errors(identity_id, angle, m)
    report = IdentityReport(
        identity=identity_id,
        p=p,
        m=m if identity_id in INDEXED else None,
        max_coefficient_error=absolute,
        max_relative_error=relative,
    )
    if identity_id == "shimura" and table is not None and p * p <= table.limit:
        crosscheck = abs(normalized_square(table, p) - (angle.a**2 - 1))
        report = report.copy(update={"square_crosscheck_error": crosscheck})
    return report


def _errors_chunk(chunk: Sequence[PrimeAngle], identity_id: str, m: Optional[int]):
    return [_errors(identity_id, angle, m) for angle in chunk]


def verify_suite(
    identity_ids: Sequence[str],
    cutoff: int,
    max_m: int,
    angles: AngleTable,
    table: Optional[TauTable] = None,
    workers: Optional[WorkersConfig] = None,
) -> List[IdentityRow]:
    """Run each identity over every prime <= cutoff (and every m <= max_m)."""
    if cutoff > angles.cutoff:
        raise RejectedInputError(
            f"cutoff {cutoff} exceeds angle table cutoff {angles.cutoff}"
        )
    chunk = [angles.get(p) for p in angles.primes(cutoff)]
    rows = []
    for identity_id in identity_ids:
        indices = range(1, max_m + 1) if identity_id in INDEXED else [None]
        for m in indices:
            _check_arguments(identity_id, m)
            errors = map_chunks(
                partial(_errors_chunk, identity_id=identity_id, m=m), chunk, workers
            )
            if identity_id == "shimura" and table is not None:
                crosschecks = [
                    abs(normalized_square(table, angle.p) - (angle.a**2 - 1))
                    for angle in chunk
                    if angle.p**2 <= table.limit
                ]
                errors = errors + [(error, error) for error in crosschecks]
            worst = max((absolute for absolute, _ in errors), default=0.0)
            worst_relative = max((relative for _, relative in errors), default=0.0)
            LOGGER.info(
                "%s m=%s: max error %.3e (relative %.3e) over %d primes",
                identity_id,
                m,
                worst,
                worst_relative,
                len(chunk),
            )
            rows.append(
                IdentityRow(
                    identity=identity_id,
                    m=m,
                    primes=len(chunk),
                    max_error=worst,
                    max_relative_error=worst_relative,
                    passed=worst_relative <= COEFFICIENT_TOLERANCE,
                )
            )
    return rows


def _sym(m: int, argument: int):
    # Sym^-1 is the empty product
    return [(EulerProductSpec.sym(m), argument)] if m >= 0 else []


def _product(specs_at, s: complex, cutoff: int, angles: AngleTable) -> complex:
    total = 1 + 0j
    for spec, argument in specs_at:
        total *= truncated_product(spec, argument * s, cutoff, angles).value
    return total


def verify_truncated(
    identity_id: str, m: int, s: complex, cutoff: int, angles: AngleTable
) -> TruncatedIdentityRow:
    """Truncated-product form of sym-minus or sym-plus with matched cutoffs.

    The 2s factors use the same primes, so per-prime identities carry over to
    the truncated products exactly up to rounding.
    """
    _check_arguments(identity_id, m)
    zpm = EulerProductSpec.zpm
    if identity_id == "sym-minus":
        lhs = [(zpm(m, -1), 1), *_sym(m - 2, 1)]
        rhs = [*_sym(m, 1)]
    elif identity_id == "sym-plus":
        lhs = [(zpm(m, 1), 1), *_sym(2 * m - 2, 2), *_sym(m, 1)]
        rhs = [*_sym(2 * m, 2), *_sym(m - 2, 1)]
    else:
        raise RejectedInputError(f"{identity_id} has no truncated form")

    left = _product(lhs, s, cutoff, angles)
    right = _product(rhs, s, cutoff, angles)
    relative = abs(left - right) / abs(right)
    return TruncatedIdentityRow(
        identity=identity_id,
        m=m,
        s=str(complex(s)),
        cutoff=cutoff,
        relative_error=relative,
        passed=relative <= RELATIVE_TOLERANCE,
    )
