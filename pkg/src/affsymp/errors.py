"""Exception hierarchy shared by all affsymp modules."""


class AffsympError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(AffsympError, ValueError):
    """Matrix or vector dimensions are incompatible with the operation."""


class DomainError(AffsympError, ValueError):
    """An argument is outside the mathematical domain of the operation
    (bad rank parameter, coordinate out of range, non-closed index set, ...)."""


class DegreeRangeError(AffsympError, IndexError):
    """A homological degree beyond the built cap of a chain complex."""


class ResourceLimitError(AffsympError, RuntimeError):
    """A computation would exceed the configured nonzero-entry budget."""


class ConsistencyError(AffsympError, RuntimeError):
    """An internal invariant failed (d composed with d nonzero, a differential
    leaving a kernel subspace, an algebra violating the Jacobi identity, ...).
    Raised when constructed objects fail their own validation."""
