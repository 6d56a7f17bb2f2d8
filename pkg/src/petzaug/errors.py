"""Exception hierarchy shared by the whole package."""


class PetzAugError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(PetzAugError, ValueError):
    """A parameter is outside its admissible range (e.g. alpha = 1)."""


class SingularInputError(PetzAugError, ValueError):
    """An operation met a singular / non-positive-definite matrix where a
    positive one is required."""


class EigensolveError(PetzAugError, RuntimeError):
    """The eigensolver failed to converge; carries a hash of the offending
    matrix for reproduction."""

    def __init__(self, message, matrix_hash=None):
        super().__init__(message)
        self.matrix_hash = matrix_hash


class ChannelFormatError(PetzAugError, ValueError):
    """A channel file could not be parsed."""


class ChannelValidationError(PetzAugError, ValueError):
    """A channel file parsed but violates a state invariant."""


class NumericalError(PetzAugError, RuntimeError):
    """A solver hit a numerically impossible state (e.g. unbounded line
    search)."""


class NotConvergedError(PetzAugError, RuntimeError):
    """An inner solver exhausted its iteration budget; carries the bound it
    did achieve."""

    def __init__(self, message, achieved_bound=None):
        super().__init__(message)
        self.achieved_bound = achieved_bound
