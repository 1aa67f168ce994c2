"""Exception types shared by every module."""


class GroupMatroidError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(GroupMatroidError, ValueError):
    """Input data (a table, a file, a generator) failed a structural check."""


class ScaleError(GroupMatroidError):
    """A computation would exceed a configured enumeration cap."""

    def __init__(self, what, value, cap):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what} = {value} exceeds cap {cap}")


class DomainError(GroupMatroidError, ValueError):
    """An argument lies outside the domain of the operation."""


class CapabilityError(GroupMatroidError):
    """The requested object exists mathematically but is not supported here,
    or a theorem hypothesis needed by the operation does not hold."""


class ConsistencyError(GroupMatroidError, AssertionError):
    """An internal identity that must hold exactly was violated."""
