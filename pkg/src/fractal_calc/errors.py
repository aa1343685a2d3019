"""Exception hierarchy shared by every module."""


class FractalCalcError(Exception):
    """Base class for all package errors."""


class OrderMismatchError(FractalCalcError, ValueError):
    """Operands carry different fractal orders (or shapes)."""


class DomainError(FractalCalcError, ValueError):
    """Argument outside the domain of a function (e.g. a gamma pole)."""


class SeriesRangeError(FractalCalcError, OverflowError):
    """A series term overflowed during evaluation."""

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class EvaluationError(FractalCalcError, ArithmeticError):
    """A black-box function returned a non-finite value."""

    def __init__(self, message, at=None):
        super().__init__(message)
        self.at = at


class DegenerateFitError(FractalCalcError, ValueError):
    """Not enough non-zero increments to fit a power law."""


class UnsupportedBackendError(FractalCalcError, ValueError):
    pass


class ConfigurationError(FractalCalcError, ValueError):
    pass


class InsufficientDataError(FractalCalcError, ValueError):
    pass


class BoundUnavailableError(FractalCalcError, ValueError):
    pass


class DerivativeVanishesError(FractalCalcError, ZeroDivisionError):
    def __init__(self, message, iterate):
        super().__init__(message)
        self.iterate = iterate


class BracketingError(FractalCalcError, ValueError):
    pass


class CatalogError(FractalCalcError, RuntimeError):
    """Catalog metadata failed its load-time self-check."""
