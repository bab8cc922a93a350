"""Hurst index estimation from dyadic quadratic variations."""

from __future__ import annotations

import logging

import numpy as np

from ..process_sim.sample_types import SamplePath
from ..special_constants.normalization import qv_fluctuation_exponent
from .stats_error import EstimationError, StatsError

logger = logging.getLogger(__name__)


def estimate_hurst_qv(path: SamplePath, q: int = 1) -> float:
    """
    Dyadic ratio estimator Ĥ = ½(1 − log₂(S_N / S_{N/2})).

    S_N is the sum of squared increments at the grid step and S_{N/2} is
    n/2 times the mean squared two-step increment, pooled over both starting
    offsets. Both have expectation proportional to N^{1−2H} whatever the
    chaos order, so the map from the ratio to H does not depend on q; q only
    sets the rate at which Ĥ concentrates (N^{−1/2} in the central regime,
    N^{−(2−2H)/q} otherwise).

    Args:
        path (SamplePath): Observed path, n a multiple of 4.
        q (int): Chaos order of the driving process.

    Returns:
        float: Ĥ; a smooth path gives the boundary value 1.

    Raises:
        EstimationError: If the variation ratio is not positive.
    """
    if path.n % 4:
        raise StatsError(f"n must be a multiple of 4, got {path.n}")
    if q < 1:
        raise StatsError(f"q must be positive, got {q}")
    fine = np.sum(path.increments**2)
    two_step = path.values[2:] - path.values[:-2]
    coarse = 0.5 * path.n * np.mean(two_step**2)
    if not fine > 0.0 or not coarse > 0.0:
        raise EstimationError("quadratic variation ratio is not positive")
    estimate = 0.5 * (1.0 - np.log2(fine / coarse))
    if estimate >= 1.0 - 1e-9:
        logger.warning("Hurst estimate %.6f sits at the boundary H=1 (smooth path)", estimate)
        return 1.0
    if path.hurst is not None and 0.5 < path.hurst < 1.0:
        logger.debug("Hurst estimate %.4f, fluctuation rate N^-%.3f", estimate,
                     qv_fluctuation_exponent(q, path.hurst))
    return float(estimate)
