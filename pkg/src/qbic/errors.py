class QbicError(Exception):
    """Base class for errors raised by this package."""


class FieldSizeError(QbicError):
    """Field order exceeds the supported table size."""


class RangeExceeded(QbicError):
    """An enumeration would exceed the configured size cap."""


class NoMatch(QbicError):
    """No standard form matches the computed invariant profile."""


class AmbiguousMatch(QbicError):
    """The invariant-profile table fails to separate types at this size."""


class NotSplit(QbicError):
    """The Hermitian scheme did not reach full size within the extension budget."""


class SingularFormError(QbicError):
    """Operation requires a nonsingular form."""


class GramParseError(QbicError):
    """A Gram-matrix file or builtin descriptor could not be parsed."""
