"""Exception hierarchy shared by every auxz module."""


class AuxzError(Exception):
    """Base class for all library errors."""


class DomainError(AuxzError, ValueError):
    """Arguments fall outside the region where a formula or bound is valid."""


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class SizeError(AuxzError, ValueError):
    """A brute-force computation would exceed its feasibility cap."""


class ConvergenceError(AuxzError, ArithmeticError):
    """An evaluation could not reach the requested error bound."""


class BoundaryZeroError(AuxzError, ArithmeticError):
    """The function cannot be separated from zero on a contour."""
