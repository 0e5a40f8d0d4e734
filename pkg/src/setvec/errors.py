"""Exception types shared across the package."""


class SetvecError(Exception):
    """Base class for all setvec errors."""


class DimensionMismatch(SetvecError):
    """Operands live in different ambient dimensions."""


class InvalidCone(SetvecError):
    """Dual rows do not describe a pointed cone with nonempty interior."""


class InvalidDirection(SetvecError):
    """Scalarization direction is not strictly interior to the negated cone."""


class DiscretizationError(SetvecError):
    """A shape cannot be sampled (unsupported dimension, empty union, ...)."""


class ProblemFormatError(SetvecError):
    """A problem file failed parsing or eager validation.

    ``path`` points at the offending field, e.g. ``family.pieces[0].set.radius``.
    """

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class PreconditionError(SetvecError):
    """A solver precondition is violated (empty family, unknown id, ...)."""
