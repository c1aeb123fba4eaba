"""Exception types raised by vwenergy."""


class VWEnergyError(Exception):
    """Base class for all errors raised by this package."""


class InputError(VWEnergyError, ValueError):
    """Invalid argument: empty sample, dimension mismatch, bad alpha, ..."""


class DegenerateConfigurationError(InputError):
    """A k-ad whose landmarks all coincide has no shape."""


class MeanNotUniqueError(VWEnergyError, ArithmeticError):
    """The averaged VW matrix has no simple leading eigenvalue."""


class LandmarkParseError(InputError):
    """Malformed landmark file. ``line`` is 1-based, or None."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line {}: {}".format(line, message)
        super().__init__(message)
