"""Virtual characters of SU(2) and the unitarity test for 1 +- hT + T^2.

chi_m is the character of Sym^m; on the conjugacy class of diag(e^it, e^-it)
it takes the value sin((m+1)t)/sin(t). Products decompose by Clebsch-Gordan:
chi_a chi_b = chi_|a-b| + chi_(|a-b|+2) + ... + chi_(a+b).
"""

import logging
import math
from collections import defaultdict
from typing import Dict, Literal, Mapping, Optional, Union

import numpy as np
from pydantic import BaseModel
from scipy.optimize import minimize_scalar

from .chebyshev_gate import NonUnitary, classify
from .config import UnitarityConfig
from .error import RejectedInputError
from .polynomial import IntPolynomial

LOGGER = logging.getLogger(__name__)

MIN_GRID = 16


class VirtualCharacter:
    """Finitely supported integer combination of irreducible characters."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[Mapping[int, int]] = None):
        clean: Dict[int, int] = {}
        for m, c in (coeffs or {}).items():
            if m < 0:
                raise RejectedInputError(f"character index must be non-negative: {m}")
            if c:
                clean[int(m)] = int(c)
        self.coeffs = dict(sorted(clean.items()))

    @classmethod
    def chi(cls, m: int, multiplicity: int = 1) -> "VirtualCharacter":
        return cls({m: multiplicity})

    @classmethod
    def zero(cls) -> "VirtualCharacter":
        return cls()

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VirtualCharacter):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs.items()))

    def __add__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        out = defaultdict(int, self.coeffs)
        for m, c in other.coeffs.items():
            out[m] += c
        return VirtualCharacter(out)

    def __neg__(self) -> "VirtualCharacter":
        return VirtualCharacter({m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        return self + (-other)

    def __mul__(self, other) -> "VirtualCharacter":
        if isinstance(other, int):
            return VirtualCharacter({m: other * c for m, c in self.coeffs.items()})
        return mul(self, other)

    __rmul__ = __mul__

    def evaluate(self, theta):
        """Value at theta in [0, pi]; accepts scalars or numpy arrays."""
        theta = np.asarray(theta, dtype=float)
        two_cos = 2 * np.cos(theta)
        # chi_m(theta) = U_m(cos theta), built by the three-term recurrence
        previous, current = np.zeros_like(theta), np.ones_like(theta)
        total = np.zeros_like(theta)
        for m in range(self.degree + 1):
            total = total + self.coeffs.get(m, 0) * current
            previous, current = current, two_cos * current - previous
        return total if total.ndim else float(total)

    def to_polynomial(self) -> IntPolynomial:
        """The integer polynomial f with f(chi_1) equal to this character."""
        result = IntPolynomial([])
        previous, current = IntPolynomial([]), IntPolynomial.constant(1)
        for m in range(self.degree + 1):
            result = result + current * self.coeffs.get(m, 0)
            previous, current = current, IntPolynomial.x() * current - previous
        return result

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for m, c in sorted(self.coeffs.items(), reverse=True):
            magnitude = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(("-" if c < 0 else "+", f"{magnitude}chi_{m}"))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return text + "".join(f" {sign} {body}" for sign, body in parts[1:])

    def __repr__(self) -> str:
        return f"VirtualCharacter({self})"


def mul(x: VirtualCharacter, y: VirtualCharacter) -> VirtualCharacter:
    out = defaultdict(int)
    for a, ca in x.coeffs.items():
        for b, cb in y.coeffs.items():
            for k in range(abs(a - b), a + b + 1, 2):
                out[k] += ca * cb
    return VirtualCharacter(out)


def from_polynomial(f: IntPolynomial) -> VirtualCharacter:
    """f(chi_1), i.e. the character theta -> f(2 cos theta), by Horner's rule."""
    chi_1, one = VirtualCharacter.chi(1), VirtualCharacter.chi(0)
    result = VirtualCharacter.zero()
    for c in reversed(f.coeffs):
        result = mul(result, chi_1) + one * c
    return result


def cos_character(m: int) -> VirtualCharacter:
    """The character theta -> 2 cos(m theta)."""
    if m < 0:
        raise RejectedInputError(f"m must be non-negative, got {m}")
    if m == 0:
        return VirtualCharacter.chi(0, 2)
    if m == 1:
        return VirtualCharacter.chi(1)
    return VirtualCharacter({m: 1, m - 2: -1})


class DegreeTwoFamily(BaseModel):
    """H(T) = 1 + sign * h * T + T^2."""

    sign: Literal[1, -1]
    h: VirtualCharacter

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    def local_value(self, theta) -> float:
        return self.sign * self.h.evaluate(theta)


class UnitaryResult(BaseModel):
    verdict: Literal["unitary"] = "unitary"
    max_abs: float
    certified_by: Literal["grid", "constant", "chebyshev-gate"]


class NonUnitaryResult(BaseModel):
    verdict: Literal["non-unitary"] = "non-unitary"
    theta0: float
    value: float


class BoundaryAmbiguous(BaseModel):
    verdict: Literal["boundary-ambiguous"] = "boundary-ambiguous"
    theta0: float
    value: float


UnitarityResult = Union[UnitaryResult, NonUnitaryResult, BoundaryAmbiguous]


def _locate_max(h: VirtualCharacter, grid: int, tol: float):
    thetas = np.linspace(0.0, math.pi, grid + 1)
    values = np.abs(h.evaluate(thetas))
    i = int(np.argmax(values))
    best_theta, best_value = float(thetas[i]), float(values[i])

    lower, upper = thetas[max(i - 1, 0)], thetas[min(i + 1, grid)]
    refined = minimize_scalar(
        lambda t: -abs(h.evaluate(t)),
        bounds=(lower, upper),
        method="bounded",
        options={"xatol": tol},
    )
    if -refined.fun > best_value:
        best_theta, best_value = float(refined.x), float(-refined.fun)
    return best_theta, best_value


def _certify(fam: DegreeTwoFamily, theta0: float, max_abs: float) -> UnitarityResult:
    f = fam.h.to_polynomial()
    if f.degree <= 0:
        constant = f.leading
        if abs(constant) <= 2:
            return UnitaryResult(max_abs=abs(constant), certified_by="constant")
        return NonUnitaryResult(theta0=theta0, value=float(constant))
    if abs(f.leading) != 1:
        return BoundaryAmbiguous(theta0=theta0, value=fam.h.evaluate(theta0))

    verdict = classify(f if f.leading == 1 else -f)
    if isinstance(verdict, NonUnitary):
        x0 = verdict.witness.x0
        theta_w = math.acos(float(x0) / 2)
        return NonUnitaryResult(theta0=theta_w, value=float(f(x0)))
    return UnitaryResult(max_abs=max_abs, certified_by="chebyshev-gate")


def unitarity_test(
    fam: DegreeTwoFamily,
    grid: Optional[int] = None,
    config: Optional[UnitarityConfig] = None,
) -> UnitarityResult:
    """Decide whether |h(theta)| <= 2 on [0, pi].

    The maximum of |h| is located on a uniform grid and refined locally.
    Values within the ambiguity band of 2 are settled exactly through the
    polynomial form of h when it is constant or +-monic, and reported as
    boundary-ambiguous otherwise.
    """
    config = config or UnitarityConfig.default()
    grid = grid or config.grid
    if grid < MIN_GRID:
        raise RejectedInputError(f"grid must be at least {MIN_GRID}, got {grid}")

    theta0, max_abs = _locate_max(fam.h, grid, config.refine_tol)
    LOGGER.debug("max |h| = %r at theta = %r for h = %s", max_abs, theta0, fam.h)
    if max_abs > 2 + config.ambiguity_band:
        return NonUnitaryResult(theta0=theta0, value=fam.h.evaluate(theta0))
    if max_abs < 2 - config.ambiguity_band:
        return UnitaryResult(max_abs=max_abs, certified_by="grid")
    return _certify(fam, theta0, max_abs)
