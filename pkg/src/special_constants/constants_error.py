"""
This module defines custom exceptions for Hermite algebra and normalization constants.
"""


class ConstantsError(Exception):
    """
    Custom exception class for errors raised while evaluating special constants.

    Attributes:
        message (str): The error message describing the issue.
    """
    def __init__(self, message):
        super().__init__(message)
        self.message = message


class DomainError(ConstantsError):
    """Raised when a parameter lies outside the region where a formula is defined."""


class RankUndeterminedError(ConstantsError):
    """Raised when every Hermite coefficient up to kmax is below tolerance."""


class QuadratureError(ConstantsError):
    """Raised when an iterated quadrature does not settle within its refinement budget."""
