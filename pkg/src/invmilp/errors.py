"""Exception types shared across the package."""


class InvMilpError(Exception):
    """Base class for all package errors."""


class DimensionError(InvMilpError, ValueError):
    """Vector or matrix dimensions do not agree."""


class DomainError(InvMilpError):
    """Input is outside the domain of an operation (c = 0, empty S, ...)."""


class UnsupportedError(DomainError):
    """Requested mode needs structure the instance lacks (finite bounds, r = n)."""


class SolverError(InvMilpError):
    """An algorithm reached a state it cannot resolve."""
