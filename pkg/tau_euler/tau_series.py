"""Exact q-expansion of the discriminant form and Ramanujan's tau.

Delta = q * prod(1 - q^n)^24 is expanded as q * (eta^3)^8, where the cube of
prod(1 - q^n) has Jacobi's sparse expansion sum (-1)^k (2k+1) q^(k(k+1)/2).
Three exact squarings then give the 24th power.
"""

import logging
from typing import Iterable, List, Sequence

from pydantic import BaseModel, validator

from .error import RejectedInputError, TableLookupError

LOGGER = logging.getLogger(__name__)

SCHOOLBOOK_THRESHOLD = 512
DEFAULT_MAX_LIMIT = 1_000_000


def _schoolbook(a: Sequence[int], b: Sequence[int], size: int) -> List[int]:
    out = [0] * size
    for i, x in enumerate(a[:size]):
        if not x:
            continue
        for j, y in enumerate(b[: size - i]):
            if y:
                out[i + j] += x * y
    return out


def _pack(coeffs: Sequence[int], width: int) -> int:
    positive = b"".join((c if c > 0 else 0).to_bytes(width, "little") for c in coeffs)
    negative = b"".join((-c if c < 0 else 0).to_bytes(width, "little") for c in coeffs)
    return int.from_bytes(positive, "little") - int.from_bytes(negative, "little")


def _unpack(value: int, count: int, width: int) -> List[int]:
    negative = value < 0
    if negative:
        value = -value
    bits = 8 * width
    value &= (1 << (bits * count)) - 1
    raw = value.to_bytes(width * count, "little")
    half, base = 1 << (bits - 1), 1 << bits
    out = []
    carry = 0
    for i in range(count):
        digit = int.from_bytes(raw[i * width : (i + 1) * width], "little") + carry
        if digit >= half:
            digit -= base
            carry = 1
        else:
            carry = 0
        out.append(-digit if negative else digit)
    return out


def _max_abs(coeffs: Iterable[int]) -> int:
    return max((abs(c) for c in coeffs), default=0)


def _kronecker(a: Sequence[int], b: Sequence[int], size: int) -> List[int]:
    """Multiply by packing both operands into single integers.

    CPython multiplies large ints with Karatsuba, so one packed product
    replaces the quadratic coefficient loop.
    """
    squaring = a is b
    a, b = a[:size], b[:size]
    bound = min(len(a), len(b)) * _max_abs(a) * _max_abs(b)
    if not bound:
        return [0] * size
    width = (bound.bit_length() + 1 + 7) // 8
    packed_a = _pack(a, width)
    product = packed_a * packed_a if squaring else packed_a * _pack(b, width)
    return _unpack(product, size, width)


class PowerSeriesZ:
    """Integer power series in q truncated after q^N."""

    __slots__ = ("coeffs", "truncation_order")

    def __init__(self, coeffs: Iterable[int], truncation_order: int):
        if truncation_order < 0:
            raise RejectedInputError("truncation order must be non-negative")
        coeffs = [int(c) for c in coeffs][: truncation_order + 1]
        coeffs.extend([0] * (truncation_order + 1 - len(coeffs)))
        self.coeffs = coeffs
        self.truncation_order = truncation_order

    @classmethod
    def one(cls, truncation_order: int) -> "PowerSeriesZ":
        return cls([1], truncation_order)

    def _check(self, other: "PowerSeriesZ"):
        if self.truncation_order != other.truncation_order:
            raise RejectedInputError(
                "series truncation orders differ: "
                f"{self.truncation_order} != {other.truncation_order}"
            )

    def __add__(self, other: "PowerSeriesZ") -> "PowerSeriesZ":
        self._check(other)
        return PowerSeriesZ(
            [x + y for x, y in zip(self.coeffs, other.coeffs)], self.truncation_order
        )

    def __neg__(self) -> "PowerSeriesZ":
        return PowerSeriesZ([-c for c in self.coeffs], self.truncation_order)

    def __sub__(self, other: "PowerSeriesZ") -> "PowerSeriesZ":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeriesZ):
            return NotImplemented
        return (
            self.truncation_order == other.truncation_order
            and self.coeffs == other.coeffs
        )

    def __repr__(self) -> str:
        return f"PowerSeriesZ(order={self.truncation_order}, coeffs={self.coeffs[:6]}...)"

    def multiply(
        self,
        other: "PowerSeriesZ",
        method: str = "auto",
        threshold: int = SCHOOLBOOK_THRESHOLD,
    ) -> "PowerSeriesZ":
        """Truncated product; method is 'schoolbook', 'kronecker' or 'auto'."""
        self._check(other)
        size = self.truncation_order + 1
        if method == "auto":
            method = "schoolbook" if self.truncation_order <= threshold else "kronecker"
        if method == "schoolbook":
            coeffs = _schoolbook(self.coeffs, other.coeffs, size)
        elif method == "kronecker":
            coeffs = _kronecker(self.coeffs, other.coeffs, size)
        else:
            raise RejectedInputError(f"Unknown multiplication method: {method}")
        return PowerSeriesZ(coeffs, self.truncation_order)

    __mul__ = multiply

    def square(self, **kwargs) -> "PowerSeriesZ":
        return self.multiply(self, **kwargs)

    def shift(self, k: int) -> "PowerSeriesZ":
        """Multiply by q^k, dropping terms past the truncation order."""
        return PowerSeriesZ([0] * k + self.coeffs, self.truncation_order)


def eta_cubed(truncation_order: int) -> PowerSeriesZ:
    """prod(1 - q^n)^3 through Jacobi's triangular-number identity."""
    coeffs = [0] * (truncation_order + 1)
    k = 0
    while k * (k + 1) // 2 <= truncation_order:
        coeffs[k * (k + 1) // 2] = (-1) ** k * (2 * k + 1)
        k += 1
    return PowerSeriesZ(coeffs, truncation_order)


class TauTable(BaseModel):
    """Exact tau(1..limit); values[n - 1] holds tau(n)."""

    limit: int
    values: List[int]

    class Config:
        allow_mutation = False

    @validator("values")
    @classmethod
    def check_values(cls, v, values):
        limit = values.get("limit")
        if limit is not None and len(v) != limit:
            raise ValueError(f"expected {limit} values, got {len(v)}")
        if v and v[0] != 1:
            raise ValueError("tau(1) must be 1")
        return v

    def tau(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise TableLookupError(f"n={n} outside table 1..{self.limit}")
        return self.values[n - 1]

    def restrict(self, limit: int) -> "TauTable":
        if not 1 <= limit <= self.limit:
            raise TableLookupError(f"cannot restrict table of {self.limit} to {limit}")
        return TauTable(limit=limit, values=self.values[:limit])


def expand_delta(
    limit: int,
    threshold: int = SCHOOLBOOK_THRESHOLD,
    max_limit: int = DEFAULT_MAX_LIMIT,
) -> TauTable:
    """Compute tau(n) for 1 <= n <= limit."""
    if limit < 1:
        raise RejectedInputError(f"limit must be at least 1, got {limit}")
    if limit > max_limit:
        raise RejectedInputError(f"limit {limit} exceeds memory budget {max_limit}")

    # tau(n) is the coefficient of q^(n-1) in prod(1 - q^n)^24
    order = limit - 1
    LOGGER.info("Expanding Delta to q^%d", limit)
    series = eta_cubed(order)
    for step in range(3):
        series = series.square(threshold=threshold)
        LOGGER.debug("Squaring %d of 3 done", step + 1)
    return TauTable(limit=limit, values=series.coeffs)


def direct_expansion(limit: int) -> List[int]:
    """tau(1..limit) by multiplying out prod(1 - q^n)^24 factor by factor."""
    if limit < 1:
        raise RejectedInputError(f"limit must be at least 1, got {limit}")
    coeffs = [1] + [0] * (limit - 1)
    for n in range(1, limit):
        for _ in range(24):
            for i in range(limit - 1, n - 1, -1):
                coeffs[i] -= coeffs[i - n]
    return coeffs


def tau(table: TauTable, n: int) -> int:
    return table.tau(n)
