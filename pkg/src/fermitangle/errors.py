"""Exception hierarchy shared by the library and the command line."""


class FermiTangleError(Exception):
    """Base class for all library errors."""


class NumericalError(FermiTangleError, ArithmeticError):
    """Evaluation hit a singular or degenerate configuration."""


class PoleError(NumericalError):
    """A kernel denominator vanished within tolerance."""


class DegenerateError(NumericalError):
    """Input is degenerate (zero momentum transfer, zero spectrum, ...)."""


class QuadratureUnderflow(NumericalError):
    """The amplitude is numerically zero on the quadrature grid."""


class InvalidVector(FermiTangleError, ValueError):
    """A vector is not a valid probability vector."""


class ParseError(FermiTangleError, ValueError):
    """Malformed configuration text."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(FermiTangleError, ValueError):
    """A configuration value violates an invariant."""
