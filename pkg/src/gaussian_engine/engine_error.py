"""
This module defines custom exceptions for the Gaussian building-block generators.
"""


class GaussianEngineError(Exception):
    """
    Custom exception class for invalid parameters or failed synthesis in the Gaussian engine.

    Attributes:
        message (str): The error message describing the issue.
    """
    def __init__(self, message):
        super().__init__(message)
        self.message = message


class EmbeddingError(GaussianEngineError):
    """Raised when a circulant embedding has a materially negative eigenvalue."""


class FactorizationError(GaussianEngineError):
    """Raised when a covariance matrix stays non positive definite after jitter."""
