"""Exception hierarchy shared by the numerical modules and the CLI."""


class BSarmaError(Exception):
    """Base class for every error raised by the toolkit."""


class DomainError(BSarmaError, ValueError):
    """A value lies outside the domain a function is defined on."""


class InsufficientDataError(BSarmaError, ValueError):
    """The series is too short for the requested model or computation."""


class CovarianceUnavailableError(BSarmaError):
    """Inference was requested from a fit whose information matrix could not be inverted."""


class NotApplicableError(BSarmaError):
    """The requested test or statistic is undefined for this model."""


class SeriesFormatError(BSarmaError, ValueError):
    """An input series file is malformed."""

    def __init__(self, message: str, row: int | None = None):
        """Initialize the error.

        Args:
            message: Human readable description
            row: 1-based data row (header excluded) that triggered the error
        """
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
