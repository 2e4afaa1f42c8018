"""Exception types shared across the package."""


class HeckeMahlerError(Exception):
    """Base class for all package specific errors."""


class ParseError(HeckeMahlerError, ValueError):
    """Malformed slope or intercept text."""


class UndecidableDigit(HeckeMahlerError):
    """A numeration digit sits on a representation boundary.

    Happens when the intercept lies in theta*Z + Z at a point with two
    admissible expansions.  Callers should supply formal digits instead.
    """


class UndecidableLetter(HeckeMahlerError):
    """n*theta + rho is indistinguishably close to an integer at max precision."""


class LengthCapExceeded(HeckeMahlerError):
    """Word construction would exceed the configured length cap."""

    def __init__(self, last_index, family=None):
        super().__init__(f"length cap reached after index {last_index}")
        self.last_index = last_index
        self.family = family


class NonPositiveResidual(HeckeMahlerError):
    """Contraction met a negative element it cannot resolve locally."""


class SizeBudgetExceeded(HeckeMahlerError):
    """An exact integer would exceed the configured bit budget."""

    def __init__(self, message, last_index=None):
        super().__init__(message)
        self.last_index = last_index


class DivergenceError(HeckeMahlerError):
    """Series parameters violate the convergence requirement."""
