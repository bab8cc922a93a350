"""
This module defines custom exceptions for estimators and the Monte Carlo harness.
"""


class StatsError(Exception):
    """
    Custom exception class for invalid statistics requests.

    Attributes:
        message (str): The error message describing the issue.
    """
    def __init__(self, message):
        super().__init__(message)
        self.message = message


class EstimationError(StatsError):
    """Raised when an estimator is undefined on the given data."""


class GridMismatchError(StatsError):
    """Raised when requested points or lattices do not lie on a sample's grid."""
