"""Utilities module."""

from .errors import (
    BSarmaError,
    CovarianceUnavailableError,
    DomainError,
    InsufficientDataError,
    NotApplicableError,
    SeriesFormatError,
)
from .logger import get_logger, setup_logging

__all__ = [
    "BSarmaError",
    "CovarianceUnavailableError",
    "DomainError",
    "InsufficientDataError",
    "NotApplicableError",
    "SeriesFormatError",
    "get_logger",
    "setup_logging",
]
