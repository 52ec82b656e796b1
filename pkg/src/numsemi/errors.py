"""Exception types shared across the package."""


class NumsemiError(Exception):
    """Base class for all package errors."""


class ValidationError(NumsemiError, ValueError):
    """Malformed input value (bad partition, bad gap list, bad text form)."""


class InvalidCellError(ValidationError):
    """A cell index that lies outside a Ferrers diagram."""


class DomainError(NumsemiError, ValueError):
    """An argument outside the domain of a map or counting function."""


class ResourceError(NumsemiError):
    """A configured enumeration budget or cap was exceeded."""


class CountOverflowError(NumsemiError, OverflowError):
    """A count left the signed 64-bit range."""


class NotCofiniteError(DomainError):
    """Generators whose additive closure has an infinite complement."""
