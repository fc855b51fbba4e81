"""Integer polynomials in one variable."""

import re
from collections import defaultdict
from typing import Iterable, Tuple

import numpy as np

from .error import RejectedInputError

TERM_RE = re.compile(r"([+-]?)(\d*)(?:\*?(x)(?:\^(\d+))?)?")
MAX_DEGREE = 64


class IntPolynomial:
    """Polynomial with integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs: Tuple[int, ...] = tuple(coeffs)

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls([c])

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        """Parse text such as "x^3-3x" or "x^2 - 2"; integer coefficients only."""
        source = text.replace(" ", "").replace("**", "^")
        if not source:
            raise RejectedInputError("empty polynomial")
        terms = defaultdict(int)
        pos = 0
        while pos < len(source):
            match = TERM_RE.match(source, pos)
            sign, digits, var, power = match.groups()
            if match.end() == pos or not (digits or var) or (pos and not sign):
                raise RejectedInputError(f"cannot parse polynomial {text!r} at {pos}")
            coefficient = int(digits) if digits else 1
            exponent = int(power) if power else (1 if var else 0)
            if exponent > MAX_DEGREE:
                raise RejectedInputError(
                    f"degree {exponent} in {text!r} exceeds the limit of {MAX_DEGREE}"
                )
            terms[exponent] += -coefficient if sign == "-" else coefficient
            pos = match.end()
        degree = max(terms)
        return cls(terms[k] for k in range(degree + 1))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, x):
        """Horner evaluation; exact for int and Fraction, vectorized for arrays."""
        result = 0 * x
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        left = self.coeffs + (0,) * (size - len(self.coeffs))
        right = other.coeffs + (0,) * (size - len(other.coeffs))
        return IntPolynomial(a + b for a, b in zip(left, right))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(other * c for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def as_array(self) -> np.ndarray:
        """Float coefficients, lowest degree first, for numpy.polynomial."""
        return np.array(self.coeffs or (0,), dtype=float)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if k == 0:
                body = str(magnitude)
            else:
                body = ("" if magnitude == 1 else str(magnitude)) + (
                    "x" if k == 1 else f"x^{k}"
                )
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        return text + "".join(sign + body for sign, body in parts[1:])

    def __repr__(self) -> str:
        return f"IntPolynomial({str(self)!r})"
