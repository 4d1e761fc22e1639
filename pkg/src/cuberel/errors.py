"""Exception types shared across the package."""


class CuberelError(Exception):
    """Base class for all package errors."""


class CapacityError(CuberelError):
    """A configured size cap (vertices, subsets, permutations) would be exceeded."""


class NumericalError(CuberelError):
    """A floating point computation produced a non-finite value."""


class IntegrityError(CuberelError):
    """Two independent computations of the same quantity disagree."""


class PreconditionError(CuberelError, ValueError):
    """An input violates a documented precondition."""
