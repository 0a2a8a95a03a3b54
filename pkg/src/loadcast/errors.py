"""Exception hierarchy.

Everything raised on purpose derives from LoadcastError. The CLI maps
input/validation failures to exit code 1 and InvariantError (an internal
consistency breach, i.e. a bug) to exit code 2.
"""


class LoadcastError(Exception):
    """Base class for all package errors."""


class SchemaError(LoadcastError):
    """CSV header does not provide a required column."""


class ParseError(LoadcastError):
    """A cell could not be parsed as the expected type."""


class IntegrityError(LoadcastError):
    """Data violates a structural invariant (gaps, duplicates, NaNs)."""


class ArgumentError(LoadcastError):
    """An operation was called with invalid arguments."""


class ConstraintError(LoadcastError):
    """The day-ahead information constraint would be violated."""


class FitError(LoadcastError):
    """Model fitting failed on degenerate input."""


class UnsupportedError(LoadcastError):
    """Operation not available for this model family."""


class InvariantError(LoadcastError):
    """Internal invariant broke; indicates a bug, not bad input."""
