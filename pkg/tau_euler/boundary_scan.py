"""Zero clouds of degree-two local factors in the s-plane.

For each prime p the roots r of 1 +- f(a(p)) T + T^2 are mapped through
r = p^-s to s = sigma + it on the principal branch t in (-pi/ln p, pi/ln p].
Unitary f keeps every point on Re(s) = 0. For other f the points leave the
axis but drift back towards it like 1/ln p, which is numerical evidence for
(not a proof of) a natural boundary at Re(s) = 0. The other branches,
s + 2 pi i k / ln p, are not emitted.
"""

import cmath
import logging
import math
from functools import partial
from typing import List, Optional, Sequence

from pydantic import BaseModel

from .config import WorkersConfig
from .error import RejectedInputError
from .polynomial import IntPolynomial
from .satotate import AngleTable, PrimeAngle
from .workers import map_chunks

LOGGER = logging.getLogger(__name__)

OFF_AXIS = 1e-9


class ZeroCloudPoint(BaseModel):
    p: int
    root_modulus: float
    sigma: float
    t: float

    class Config:
        allow_mutation = False


class CloudSummary(BaseModel):
    count: int
    count_offaxis: int
    min_positive_sigma: Optional[float]
    max_sigma: float


def quadratic_roots(middle: float):
    """Both roots of 1 + middle T + T^2; their product is 1."""
    if abs(middle) <= 2:
        imag = math.sqrt(4 - middle * middle) / 2
        return complex(-middle / 2, imag), complex(-middle / 2, -imag)
    # larger root first, the smaller one as its reciprocal
    big = (-middle - math.copysign(math.sqrt(middle * middle - 4), middle)) / 2
    return complex(big), complex(1 / big)


def _to_s_plane(p: int, root: complex) -> ZeroCloudPoint:
    log_p = math.log(p)
    modulus = abs(root)
    t = -cmath.phase(root) / log_p
    if t <= -math.pi / log_p:
        t = math.pi / log_p
    sigma = -math.log(modulus) / log_p
    return ZeroCloudPoint(p=p, root_modulus=modulus, sigma=sigma, t=t)


def _cloud_chunk(
    chunk: Sequence[PrimeAngle], f: IntPolynomial, sign: int
) -> List[ZeroCloudPoint]:
    points = []
    for angle in chunk:
        for root in quadratic_roots(sign * f(angle.a)):
            points.append(_to_s_plane(angle.p, root))
    return points


def zero_cloud(
    f: IntPolynomial,
    sign: int,
    cutoff: int,
    angles: AngleTable,
    workers: Optional[WorkersConfig] = None,
) -> List[ZeroCloudPoint]:
    """s-plane images of both roots of 1 +- f(a(p)) T + T^2 for every p <= cutoff."""
    if sign not in (1, -1):
        raise RejectedInputError(f"sign must be +1 or -1, got {sign}")
    if cutoff > angles.cutoff:
        raise RejectedInputError(
            f"cutoff {cutoff} exceeds angle table cutoff {angles.cutoff}"
        )
    chunk = [angles.get(p) for p in angles.primes(cutoff)]
    LOGGER.info("Zero cloud of %s over %d primes", f, len(chunk))
    return map_chunks(partial(_cloud_chunk, f=f, sign=sign), chunk, workers)


def cloud_summary(points: Sequence[ZeroCloudPoint]) -> CloudSummary:
    if not points:
        raise RejectedInputError("empty zero cloud")
    sigmas = [point.sigma for point in points]
    positive = [sigma for sigma in sigmas if sigma > OFF_AXIS]
    return CloudSummary(
        count=len(points),
        count_offaxis=sum(1 for sigma in sigmas if abs(sigma) > OFF_AXIS),
        min_positive_sigma=min(positive) if positive else None,
        max_sigma=max(sigmas),
    )


def sigma_bound(sup: float, p: int) -> float:
    """arccosh(sup / 2) / ln p, the largest |sigma| a prime p can produce."""
    return math.acosh(max(sup, 2.0) / 2) / math.log(p)
