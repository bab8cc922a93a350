"""Fractional Gaussian noise by circulant embedding.

The autocovariance ``c_0, ..., c_{L-1}`` is embedded in the first row
``(c_0, ..., c_{L-1}, c_{L-2}, ..., c_1)`` of a circulant of size ``2(L-1)``.
Its eigenvalues are the DFT of that row; with ``W = A + iB`` for independent
standard normal vectors ``A`` and ``B``, the real part of
``fft(sqrt(eig / m) * W)`` has exactly the circulant covariance, so its first
``n`` coordinates have the requested Toeplitz covariance.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .engine_error import EmbeddingError, GaussianEngineError
from .rng_stream import RngStream

logger = logging.getLogger(__name__)

EIGENVALUE_TOLERANCE = 1e-10


@dataclass(frozen=True)
class FgnSample:
    """Unit-variance fractional Gaussian noise at unit lag spacing.

    Attributes:
        hurst (float): Hurst parameter in (0, 1).
        n (int): Number of increments.
        values (numpy.ndarray): The increments.
    """

    hurst: float
    n: int
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.n,):
            raise GaussianEngineError(f"expected {self.n} values, got shape {self.values.shape}")


def check_hurst(H: float, low: float = 0.0, high: float = 1.0) -> float:
    """Validate a Hurst parameter against an open interval and return it as float."""
    if not low < H < high:
        raise GaussianEngineError(f"H must lie in ({low:g}, {high:g}), got {H}")
    return float(H)


def rho_fgn(H: float, k):
    """Lag-k autocovariance of unit-spaced fBm increments.

    Args:
        H (float): Hurst parameter in (0, 1).
        k (int or array-like): Nonnegative lag(s).

    Returns:
        float or numpy.ndarray: ½(|k+1|^{2H} − 2|k|^{2H} + |k−1|^{2H}).

    Raises:
        GaussianEngineError: If H is outside (0, 1).
    """
    two_h = 2.0 * check_hurst(H)
    lag = np.abs(np.asarray(k, dtype=float))
    value = 0.5 * (np.abs(lag + 1.0) ** two_h - 2.0 * lag**two_h + np.abs(lag - 1.0) ** two_h)
    return float(value) if value.ndim == 0 else value


def circulant_spectrum(autocovariance, eig_tol: float = EIGENVALUE_TOLERANCE) -> np.ndarray:
    """Return ``sqrt(eigenvalues / m)`` of the minimal circulant embedding.

    Raises:
        EmbeddingError: If an eigenvalue is below ``-eig_tol`` times the largest one.
    """
    acov = np.asarray(autocovariance, dtype=float)
    if acov.ndim != 1 or acov.size < 2:
        raise GaussianEngineError("autocovariance needs at least two lags")
    row = np.concatenate([acov, acov[-2:0:-1]])
    eigenvalues = np.fft.fft(row).real
    largest = eigenvalues.max()
    if largest <= 0.0 or eigenvalues.min() < -eig_tol * largest:
        raise EmbeddingError(
            f"circulant embedding is not nonnegative definite (min eigenvalue {eigenvalues.min():.3e}, "
            f"max {largest:.3e})"
        )
    logger.debug("circulant embedding of size %d, min eigenvalue %.3e", row.size, eigenvalues.min())
    return np.sqrt(np.clip(eigenvalues, 0.0, None) / row.size)


def _synthesize(generator: np.random.Generator, spectrum: np.ndarray, n: int, size=None) -> np.ndarray:
    shape = spectrum.shape if size is None else (size, spectrum.size)
    noise = generator.standard_normal(shape) + 1j * generator.standard_normal(shape)
    return np.fft.fft(spectrum * noise, axis=-1).real[..., :n]


def sample_stationary_gaussian(stream: RngStream, autocovariance, n: int | None = None,
                               eig_tol: float = EIGENVALUE_TOLERANCE) -> np.ndarray:
    """Draw a stationary Gaussian vector with a given autocovariance.

    Args:
        stream (RngStream): Source of randomness.
        autocovariance (array-like): Lags 0..L-1 of the covariance.
        n (int, optional): Output length, at most L (defaults to L).
        eig_tol (float): Relative tolerance for negative eigenvalues.

    Returns:
        numpy.ndarray: The sample of length n.

    Raises:
        EmbeddingError: If the embedding is not nonnegative definite.
    """
    spectrum = circulant_spectrum(autocovariance, eig_tol)
    length = len(autocovariance) if n is None else int(n)
    if not 1 <= length <= len(autocovariance):
        raise GaussianEngineError(f"n must lie in [1, {len(autocovariance)}], got {n}")
    return _synthesize(stream.generator(), spectrum, length)


@lru_cache(maxsize=64)
def _fgn_spectrum(H: float, lags: int) -> np.ndarray:
    spectrum = circulant_spectrum(rho_fgn(H, np.arange(lags)))
    spectrum.setflags(write=False)
    return spectrum


def _embedding_lags(n: int, pad_to_power_of_two: bool) -> int:
    if not pad_to_power_of_two:
        return n
    size = 1 << int(np.ceil(np.log2(2 * (n - 1))))
    return size // 2 + 1


def sample_fgn(stream: RngStream, H: float, n: int, pad_to_power_of_two: bool = False) -> FgnSample:
    """Sample ``n`` unit-variance fGn increments.

    Args:
        stream (RngStream): Source of randomness.
        H (float): Hurst parameter in (0, 1).
        n (int): Number of increments, at least 2.
        pad_to_power_of_two (bool): Embed in the next power-of-two circulant.

    Returns:
        FgnSample: The increments.
    """
    check_hurst(H)
    if n < 2:
        raise GaussianEngineError(f"n must be at least 2, got {n}")
    spectrum = _fgn_spectrum(float(H), _embedding_lags(int(n), pad_to_power_of_two))
    return FgnSample(float(H), int(n), _synthesize(stream.generator(), spectrum, int(n)))


def sample_fgn_batch(stream: RngStream, H: float, n: int, size: int) -> np.ndarray:
    """Sample ``size`` independent fGn rows of length ``n`` in one FFT pass.

    Returns:
        numpy.ndarray: Array of shape (size, n).
    """
    check_hurst(H)
    if n < 2 or size < 1:
        raise GaussianEngineError(f"need n >= 2 and size >= 1, got n={n}, size={size}")
    return _synthesize(stream.generator(), _fgn_spectrum(float(H), int(n)), int(n), int(size))
