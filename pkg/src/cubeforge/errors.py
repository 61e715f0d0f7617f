"""Exception hierarchy.

Every error raised on purpose by the library derives from ``CubeforgeError``.
The CLI maps ``BudgetExceeded`` subclasses to exit code 2 and everything
else to exit code 1.
"""


class CubeforgeError(Exception):
    pass


class DomainError(CubeforgeError, ValueError):
    """Input is outside the mathematical domain of the operation."""


class RangeError(DomainError):
    pass


class ShapeError(DomainError):
    pass


class PreconditionError(DomainError):
    pass


class DegenerateError(DomainError):
    pass


class EmptyError(DomainError):
    pass


class NotPrimeError(DomainError):
    pass


class NotFoundError(CubeforgeError, LookupError):
    pass


class SumOverflowError(CubeforgeError, OverflowError):
    """A sum left the signed 64-bit range."""


class BudgetExceeded(CubeforgeError):
    """Base for every resource-cap failure (window, enumeration, nodes)."""


class WindowError(BudgetExceeded, MemoryError):
    pass


class CapError(BudgetExceeded):
    pass


class BudgetError(BudgetExceeded):
    pass


class SearchTimeout(BudgetExceeded, TimeoutError):
    """Node budget exhausted before the search finished.

    Never conflated with "not found": a search that times out has proved
    nothing.
    """

    def __init__(self, message, nodes=None):
        super().__init__(message)
        self.nodes = nodes
