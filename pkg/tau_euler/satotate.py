"""Normalized coefficients, Sato-Tate angles and the empirical angle test."""

import logging
import math
import threading
from functools import partial
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np
from pydantic import BaseModel, PrivateAttr, validator

from .config import WorkersConfig
from .error import DeligneViolation, RejectedInputError, TableLookupError
from .primes import primes_upto
from .tau_series import TauTable
from .workers import map_chunks

LOGGER = logging.getLogger(__name__)

DELIGNE_SLACK = 1e-9
DEFAULT_PRECISION_BITS = 128


class PrimeAngle(BaseModel):
    p: int
    a: float
    theta: float

    class Config:
        allow_mutation = False


class AngleTable(BaseModel):
    """Angles for every prime up to cutoff, in increasing prime order."""

    cutoff: int
    entries: List[PrimeAngle]

    _index: Dict[int, int] = PrivateAttr()

    class Config:
        allow_mutation = False

    @validator("entries")
    @classmethod
    def increasing_primes(cls, v):
        if any(left.p >= right.p for left, right in zip(v, v[1:])):
            raise ValueError("primes must be strictly increasing")
        return v

    def __init__(self, **data):
        super().__init__(**data)
        self._index = {entry.p: i for i, entry in enumerate(self.entries)}

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, p: int) -> bool:
        return p in self._index

    def get(self, p: int) -> PrimeAngle:
        try:
            return self.entries[self._index[p]]
        except KeyError:
            raise TableLookupError(
                f"p={p} not in angle table (cutoff {self.cutoff})"
            ) from None

    def primes(self, cutoff: Optional[int] = None) -> List[int]:
        cutoff = self.cutoff if cutoff is None else cutoff
        return [entry.p for entry in self.entries if entry.p <= cutoff]

    def restrict(self, cutoff: int) -> "AngleTable":
        return AngleTable(
            cutoff=cutoff, entries=[e for e in self.entries if e.p <= cutoff]
        )

    def thetas(self) -> np.ndarray:
        return np.array([entry.theta for entry in self.entries])


_CONTEXTS = threading.local()


def _context(bits: int) -> mpmath.MPContext:
    # one context per thread and precision; mpmath.mp is process-global
    contexts = _CONTEXTS.__dict__.setdefault("by_bits", {})
    if bits not in contexts:
        ctx = mpmath.MPContext()
        ctx.prec = bits
        contexts[bits] = ctx
    return contexts[bits]


def normalize(tau_n: int, n: int, weight: int = 11, bits: int = DEFAULT_PRECISION_BITS):
    """tau(n) * n^(-weight/2), computed at `bits` of working precision."""
    ctx = _context(bits)
    return float(ctx.mpf(tau_n) / ctx.sqrt(ctx.mpf(n) ** weight))


def angle_of(a: float) -> float:
    """theta in [0, pi] with a = 2 cos(theta); a must already satisfy |a| <= 2."""
    return math.acos(min(1.0, max(-1.0, a / 2)))


def _angles_chunk(chunk: Sequence[Tuple[int, int]], bits: int) -> List[PrimeAngle]:
    angles = []
    for p, tau_p in chunk:
        a = normalize(tau_p, p, bits=bits)
        if abs(a) > 2 + DELIGNE_SLACK:
            raise DeligneViolation(p, a)
        angles.append(PrimeAngle(p=p, a=a, theta=angle_of(a)))
    return angles


def build_angles(
    table: TauTable,
    cutoff: int,
    bits: int = DEFAULT_PRECISION_BITS,
    workers: Optional[WorkersConfig] = None,
) -> AngleTable:
    """Normalize tau(p) and compute theta(p) for every prime p <= cutoff."""
    if cutoff > table.limit:
        raise RejectedInputError(
            f"prime cutoff {cutoff} exceeds tau table limit {table.limit}"
        )
    pairs = [(p, table.tau(p)) for p in primes_upto(cutoff)]
    LOGGER.info("Normalizing %d primes up to %d", len(pairs), cutoff)
    entries = map_chunks(partial(_angles_chunk, bits=bits), pairs, workers)
    return AngleTable(cutoff=cutoff, entries=entries)


def normalized_square(table: TauTable, p: int, bits: int = DEFAULT_PRECISION_BITS):
    """a(p^2) = tau(p^2) p^-11 straight from the exact table."""
    return normalize(table.tau(p * p), p * p, bits=bits)


def satotate_cdf(theta: float) -> float:
    """Mass of (2/pi) sin^2 on [0, theta]."""
    if not 0 <= theta <= math.pi:
        raise RejectedInputError(f"theta={theta} outside [0, pi]")
    return (theta - math.sin(theta) * math.cos(theta)) / math.pi


class HistogramBin(BaseModel):
    lower: float
    upper: float
    count: int
    model_mass: float


class SatoTateReport(BaseModel):
    count: int
    sup_distance: float
    histogram: List[HistogramBin]


def satotate_test(angles: AngleTable, bins: int) -> SatoTateReport:
    """Kolmogorov-style distance between empirical angles and Sato-Tate at bin edges."""
    if bins < 2:
        raise RejectedInputError(f"need at least 2 bins, got {bins}")
    if not len(angles):
        raise RejectedInputError("angle table is empty")

    thetas = np.sort(angles.thetas())
    edges = np.linspace(0.0, math.pi, bins + 1)
    edges[-1] = math.pi
    model = np.array([satotate_cdf(float(edge)) for edge in edges])
    empirical = np.searchsorted(thetas, edges, side="right") / len(thetas)
    counts, _ = np.histogram(thetas, bins=edges)

    histogram = [
        HistogramBin(
            lower=float(edges[i]),
            upper=float(edges[i + 1]),
            count=int(counts[i]),
            model_mass=float(model[i + 1] - model[i]),
        )
        for i in range(bins)
    ]
    return SatoTateReport(
        count=len(thetas),
        sup_distance=float(np.max(np.abs(empirical - model))),
        histogram=histogram,
    )
