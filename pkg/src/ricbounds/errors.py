"""Semantic exception hierarchy shared by all modules.

Each class maps to a CLI exit code so command-line failures are
machine-distinguishable.
"""


class RicBoundsError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class DomainError(RicBoundsError, ValueError):
    """An input violates a documented precondition (exit code 2)."""

    exit_code = 2


class SolverError(RicBoundsError, RuntimeError):
    """A root search or optimization failed to converge (exit code 3)."""

    exit_code = 3


class ConstraintViolation(SolverError):
    """A root exists only outside the equation's side constraint.

    Raised when the net exponent is already negative at the bracket foot,
    i.e. the requested (delta, rho, gamma) lies outside the valid region.
    """


class GuardError(RicBoundsError, RuntimeError):
    """A combinatorial guard refused the computation (exit code 4)."""

    exit_code = 4


class IOFailure(RicBoundsError, OSError):
    """Output could not be written (exit code 5)."""

    exit_code = 5
