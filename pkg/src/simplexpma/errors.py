"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: input/parse problems exit 3,
configuration problems exit 2, numerical failures exit 4.
"""


class PmaError(Exception):
    """Base class for all package errors."""


class ParseError(PmaError):
    """Malformed delimited input (ragged row, bad number, ...)."""

    def __init__(self, message: str, row: int | None = None, column: int | None = None):
        super().__init__(message)
        self.row = row
        self.column = column


class DuplicateIdError(ParseError):
    """Duplicate sample/variable/annotation identifier."""


class EmptyInputError(ParseError):
    """Data matrix with zero rows or zero columns."""


class UnknownSampleError(ParseError):
    """Metadata references a sample id absent from the data file."""


class UnknownAnnotationError(PmaError):
    """Requested annotation name does not exist on the frame."""


class ConfigError(PmaError):
    """Invalid strategy parameters or incompatible inputs."""


class EmptyMeasureError(PmaError):
    """The constructed measure has zero total mass."""


class DecompositionError(PmaError):
    """The eigensolver failed to converge."""


class RankZeroError(PmaError):
    """All eigenvalues fell below the rank tolerance."""
