"""Separable fractional Gaussian noise sheets."""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy import linalg

from .engine_error import FactorizationError, GaussianEngineError
from .fgn import check_hurst, rho_fgn
from .rng_stream import RngStream

JITTER = 1e-12


@lru_cache(maxsize=32)
def fgn_covariance_factor(H: float, n: int, jitter: float = JITTER) -> np.ndarray:
    """Lower Cholesky factor of the n×n fGn covariance matrix.

    Raises:
        FactorizationError: If the matrix is not positive definite after jitter.
    """
    covariance = linalg.toeplitz(np.atleast_1d(rho_fgn(H, np.arange(n))))
    try:
        factor = linalg.cholesky(covariance + jitter * np.eye(n), lower=True)
    except linalg.LinAlgError as exc:
        raise FactorizationError(f"fGn covariance (H={H}, n={n}) is not positive definite: {exc}") from exc
    factor.setflags(write=False)
    return factor


def sample_fgn_sheet(stream: RngStream, H1: float, H2: float, n: int, m: int,
                     jitter: float = JITTER) -> np.ndarray:
    """Sample an n×m fGn sheet with covariance ρ_{H1}(|i−k|)·ρ_{H2}(|j−l|).

    The i.i.d. normal matrix is transformed from both sides by the Cholesky
    factors of the two axis covariances. ``n == 1`` degenerates to a single
    fGn row with parameter H2.

    Args:
        stream (RngStream): Source of randomness.
        H1 (float): Hurst parameter of the first axis.
        H2 (float): Hurst parameter of the second axis.
        n (int): Rows.
        m (int): Columns.
        jitter (float): Diagonal jitter added before factorization.

    Returns:
        numpy.ndarray: The n×m sheet.
    """
    check_hurst(H1)
    check_hurst(H2)
    if n < 1 or m < 1:
        raise GaussianEngineError(f"sheet dimensions must be positive, got {n}x{m}")
    left = fgn_covariance_factor(float(H1), int(n), jitter)
    right = fgn_covariance_factor(float(H2), int(m), jitter)
    noise = stream.generator().standard_normal((int(n), int(m)))
    return left @ noise @ right.T
