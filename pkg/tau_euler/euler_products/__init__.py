"""Degree-two Euler products attached to Ramanujan's tau.

Every family is evaluated only where it converges absolutely, Re(s) > 1.
Local factors are polynomials in T = p^-s with constant term 1.
"""

import cmath
import logging
import math
from functools import partial, reduce
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, root_validator

from ..chebyshev_gate import Unitary, classify, dilated_chebyshev
from ..config import ProductsConfig, WorkersConfig
from ..error import RejectedInputError
from ..polynomial import IntPolynomial
from ..satotate import AngleTable, PrimeAngle
from ..workers import map_chunks

LOGGER = logging.getLogger(__name__)

SpecKind = Literal["zeta", "sym", "zpm", "zf", "zex", "zshift"]
SIGNS = {"+": 1, "-": -1}


class LocalFactor:
    """Polynomial in T with complex coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.size == 0 or coeffs[0] != 1:
            raise RejectedInputError("local factor must have constant term 1")
        self.coeffs = coeffs

    @classmethod
    def one(cls) -> "LocalFactor":
        return cls([1])

    @classmethod
    def quadratic(cls, middle: complex) -> "LocalFactor":
        """1 + middle * T + T^2."""
        return cls([1, middle, 1])

    @classmethod
    def from_eigenvalues(cls, eigenvalues: Sequence[complex]) -> "LocalFactor":
        """prod (1 - e T) over the eigenvalues e."""
        coeffs = np.array([1], dtype=complex)
        for e in eigenvalues:
            coeffs = np.convolve(coeffs, [1, -e])
        return cls(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "LocalFactor") -> "LocalFactor":
        return LocalFactor(np.convolve(self.coeffs, other.coeffs))

    def __pow__(self, k: int) -> "LocalFactor":
        return reduce(LocalFactor.__mul__, [self] * k, LocalFactor.one())

    def squared_argument(self) -> "LocalFactor":
        """The factor in T^2, used where the product is taken at 2s."""
        coeffs = np.zeros(2 * self.degree + 1, dtype=complex)
        coeffs[::2] = self.coeffs
        return LocalFactor(coeffs)

    def __call__(self, t: complex) -> complex:
        return complex(np.polynomial.polynomial.polyval(t, self.coeffs))

    def roots(self) -> np.ndarray:
        if self.degree < 1:
            return np.array([], dtype=complex)
        return np.polynomial.polynomial.polyroots(self.coeffs)

    def inverse_series(self, terms: int) -> np.ndarray:
        """Coefficients b_0..b_(terms-1) of 1 / factor as a power series in T."""
        b = np.zeros(terms, dtype=complex)
        b[0] = 1
        for k in range(1, terms):
            span = min(k, self.degree)
            b[k] = -np.dot(self.coeffs[1 : span + 1], b[k - span : k][::-1])
        return b

    def _aligned(self, other: "LocalFactor") -> Tuple[np.ndarray, np.ndarray]:
        size = max(len(self.coeffs), len(other.coeffs))
        return (
            np.pad(self.coeffs, (0, size - len(self.coeffs))),
            np.pad(other.coeffs, (0, size - len(other.coeffs))),
        )

    def distance(self, other: "LocalFactor") -> float:
        """Largest absolute coefficient difference."""
        left, right = self._aligned(other)
        return float(np.max(np.abs(left - right)))

    def relative_distance(self, other: "LocalFactor") -> float:
        """distance over max(1, largest coefficient magnitude on either side)."""
        left, right = self._aligned(other)
        scale = max(1.0, float(np.max(np.abs(left))), float(np.max(np.abs(right))))
        return self.distance(other) / scale

    def __repr__(self) -> str:
        return f"LocalFactor({np.round(self.coeffs, 12).tolist()})"


class EulerProductSpec(BaseModel):
    """Which Euler product to evaluate.

    zeta            1 - T
    sym:M           prod_j (1 - e^(i(M-2j)theta) T), j = 0..M
    zpm:M:+-        1 +- 2cos(M theta) T + T^2
    zf:POLY:+-      1 +- f(a(p)) T + T^2
    zex:M           1 - (a(p^2) - M) T + T^2
    zshift:M        1 - (a(p) - M) T + T^2
    """

    kind: SpecKind
    m: Optional[int] = None
    sign: Optional[Literal[1, -1]] = None
    poly: Optional[str] = None

    class Config:
        allow_mutation = False

    @root_validator(skip_on_failure=True)
    @classmethod
    def check_fields(cls, values):
        kind, m, sign, poly = (values.get(k) for k in ("kind", "m", "sign", "poly"))
        if kind in ("sym", "zpm", "zex", "zshift") and m is None:
            raise ValueError(f"{kind} needs m")
        if kind in ("sym", "zpm") and m < 0:
            raise ValueError(f"{kind} needs m >= 0")
        if kind in ("zpm", "zf") and sign is None:
            raise ValueError(f"{kind} needs a sign")
        if kind == "zf":
            if not poly:
                raise ValueError("zf needs a polynomial")
            IntPolynomial.parse(poly)
        return values

    @classmethod
    def zeta(cls) -> "EulerProductSpec":
        return cls(kind="zeta")

    @classmethod
    def sym(cls, m: int) -> "EulerProductSpec":
        return cls(kind="sym", m=m)

    @classmethod
    def zpm(cls, m: int, sign: int) -> "EulerProductSpec":
        return cls(kind="zpm", m=m, sign=sign)

    @classmethod
    def zf(cls, f: IntPolynomial, sign: int) -> "EulerProductSpec":
        return cls(kind="zf", poly=str(f), sign=sign)

    @classmethod
    def parse(cls, text: str) -> "EulerProductSpec":
        """Parse zeta | sym:M | zpm:M:+- | zf:POLY:+- | zex:M | zshift:M."""
        kind, _, rest = text.strip().partition(":")
        try:
            if kind == "zeta" and not rest:
                return cls.zeta()
            if kind in ("sym", "zex", "zshift"):
                return cls(kind=kind, m=int(rest))
            if kind in ("zpm", "zf"):
                body, _, sign = rest.rpartition(":")
                body = body.strip().strip("\"'")
                if kind == "zpm":
                    return cls(kind=kind, m=int(body), sign=SIGNS[sign])
                return cls(kind=kind, poly=body, sign=SIGNS[sign])
        except (ValueError, KeyError) as err:
            raise RejectedInputError(f"invalid product spec {text!r}: {err}") from err
        raise RejectedInputError(f"invalid product spec {text!r}")

    def __str__(self) -> str:
        sign = {1: "+", -1: "-"}.get(self.sign, "")
        if self.kind == "zeta":
            return "zeta"
        if self.kind in ("zpm", "zf"):
            body = self.m if self.kind == "zpm" else self.poly
            return f"{self.kind}:{body}:{sign}"
        return f"{self.kind}:{self.m}"

    @property
    def degree(self) -> int:
        if self.kind == "zeta":
            return 1
        if self.kind == "sym":
            return self.m + 1
        return 2

    def polynomial(self) -> Optional[Tuple[IntPolynomial, int]]:
        """(f, sign) with local factor 1 + sign f(a(p)) T + T^2, if the family has one."""
        x = IntPolynomial.x()
        if self.kind == "zpm":
            return dilated_chebyshev(self.m), self.sign
        if self.kind == "zf":
            return IntPolynomial.parse(self.poly), self.sign
        if self.kind == "zex":
            # a(p^2) = a(p)^2 - 1
            return x * x - IntPolynomial.constant(1 + self.m), -1
        if self.kind == "zshift":
            return x - IntPolynomial.constant(self.m), -1
        return None


def is_unitary_spec(spec: EulerProductSpec) -> bool:
    """Whether every local factor of the family has all roots on the unit circle."""
    if spec.kind in ("zeta", "sym", "zpm"):
        return True
    f, _ = spec.polynomial()
    if f.degree < 1:
        return abs(f.leading) <= 2
    if abs(f.leading) == 1:
        return isinstance(classify(f if f.leading == 1 else -f), Unitary)
    # a non-monic integer f with |leading| > 1 is never bounded by 2 on [-2, 2]
    return False


def example_family_verdict(kind: str, m: int):
    """Gate verdict for the zex / zshift examples at parameter m."""
    spec = EulerProductSpec(kind=kind, m=m)
    f, _ = spec.polynomial()
    return classify(f)


def sym_factor(m: int, theta: float) -> LocalFactor:
    if m < 0:
        return LocalFactor.one()
    return LocalFactor.from_eigenvalues(
        [cmath.exp(1j * (m - 2 * j) * theta) for j in range(m + 1)]
    )


def factor_at(spec: EulerProductSpec, angle: PrimeAngle) -> LocalFactor:
    """Local factor of spec at the prime carried by angle."""
    if spec.kind == "zeta":
        return LocalFactor([1, -1])
    if spec.kind == "sym":
        return sym_factor(spec.m, angle.theta)
    if spec.kind == "zpm":
        return LocalFactor.quadratic(spec.sign * 2 * math.cos(spec.m * angle.theta))
    f, sign = spec.polynomial()
    return LocalFactor.quadratic(sign * f(angle.a))


def local_factor(spec: EulerProductSpec, p: int, angles: AngleTable) -> LocalFactor:
    return factor_at(spec, angles.get(p))


class TruncatedValue(BaseModel):
    spec: str
    real: Optional[float]
    imag: Optional[float]
    cutoff: int
    sigma: float
    t: float
    tail_hint: float
    pole: Optional[int] = None
    unitary: Optional[bool] = None

    @property
    def value(self) -> complex:
        if self.pole is not None:
            return complex("nan")
        return complex(self.real, self.imag)


def tail_hint(degree: int, sigma: float, cutoff: int) -> float:
    """Heuristic size of the omitted tail on a log scale; finite only for sigma > 1."""
    if sigma <= 1:
        return math.inf
    return 2 * (degree + 1) * cutoff ** (1 - sigma) / ((sigma - 1) * math.log(cutoff))


def _factor_values(
    chunk: Sequence[PrimeAngle], spec: EulerProductSpec, s: complex
) -> List[complex]:
    return [factor_at(spec, angle)(angle.p ** (-s)) for angle in chunk]


def _tree_product(values: List[complex]) -> complex:
    while len(values) > 1:
        paired = [values[i] * values[i + 1] for i in range(0, len(values) - 1, 2)]
        if len(values) % 2:
            paired.append(values[-1])
        values = paired
    return values[0] if values else 1 + 0j


def truncated_product(
    spec: EulerProductSpec,
    s: complex,
    cutoff: int,
    angles: AngleTable,
    config: Optional[ProductsConfig] = None,
    workers: Optional[WorkersConfig] = None,
) -> TruncatedValue:
    """prod over p <= cutoff of 1 / F_p(p^-s), multiplied in increasing prime order."""
    config = config or ProductsConfig.default()
    s = complex(s)
    if s.real <= 1:
        raise RejectedInputError(f"Re(s) = {s.real} is outside Re(s) > 1")
    if cutoff < 2:
        raise RejectedInputError(f"cutoff must be at least 2, got {cutoff}")
    if cutoff > angles.cutoff:
        raise RejectedInputError(
            f"cutoff {cutoff} exceeds angle table cutoff {angles.cutoff}"
        )

    chunk = [angles.get(p) for p in angles.primes(cutoff)]
    values = map_chunks(partial(_factor_values, spec=spec, s=s), chunk, workers)
    result = TruncatedValue(
        spec=str(spec),
        real=None,
        imag=None,
        cutoff=cutoff,
        sigma=s.real,
        t=s.imag,
        tail_hint=tail_hint(spec.degree, s.real, cutoff),
        unitary=is_unitary_spec(spec),
    )
    for angle, value in zip(chunk, values):
        if abs(value) <= config.pole_tolerance:
            LOGGER.warning("Local factor of %s vanishes at p=%d", spec, angle.p)
            return result.copy(update={"pole": angle.p})

    inverses = [1 / value for value in values]
    if config.reduction == "tree":
        total = _tree_product(inverses)
    else:
        total = 1 + 0j
        for inverse in inverses:
            total *= inverse
    return result.copy(update={"real": total.real, "imag": total.imag})
