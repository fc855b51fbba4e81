"""Errors raised by tau_euler."""


class TauEulerError(Exception):
    """Base class for tau_euler errors."""


class RejectedInputError(TauEulerError, ValueError):
    """Input violates a documented precondition."""


class TableLookupError(TauEulerError, LookupError):
    """Requested index lies outside a computed table."""


class InconsistencyError(TauEulerError):
    """A computed result contradicts a proven fact; indicates a bug."""


class DeligneViolation(InconsistencyError):
    """Normalized coefficient a(p) fell outside [-2, 2]."""

    def __init__(self, p: int, a: float):
        super().__init__(f"Deligne violation at p={p}: a(p)={a!r}")
        self.p = p
        self.a = a

    def __reduce__(self):
        return (DeligneViolation, (self.p, self.a))


class WitnessExhausted(InconsistencyError):
    """No witness found for a polynomial that is not 2T_m(x/2)."""
