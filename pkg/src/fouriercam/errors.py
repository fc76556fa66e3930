"""Exception types shared across the package."""


class FourierCamError(Exception):
    """Base class for all package errors."""


class InvalidArgument(FourierCamError, ValueError):
    pass


class GridMismatch(FourierCamError, ValueError):
    """Kernel frequencies do not land on integer bins of the reconstruction grid."""


class NumericalFailure(FourierCamError, ArithmeticError):
    pass


class UndefinedPhase(FourierCamError, ArithmeticError):
    """Phase requested for a zero coefficient."""


class FormatError(FourierCamError, ValueError):
    """Malformed, truncated or mismatched binary file."""
