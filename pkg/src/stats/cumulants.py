"""Empirical cumulants with grouped jackknife standard errors."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from scipy import stats

from .stats_error import StatsError

MAX_ORDER = 6
JACKKNIFE_GROUPS = 20


class CumulantEstimate(NamedTuple):
    """κ_1..κ_p estimates, index 0 holding κ_1."""
    values: np.ndarray
    std_errors: np.ndarray


def _cumulants(samples: np.ndarray, p_max: int) -> np.ndarray:
    values = [stats.kstat(samples, order) for order in range(1, min(p_max, 4) + 1)]
    if p_max >= 5:
        centered = samples - samples.mean()
        mu2, mu3, mu4, mu5, mu6 = (np.mean(centered**k) for k in range(2, 7))
        values.append(mu5 - 10.0 * mu3 * mu2)
        if p_max == 6:
            values.append(mu6 - 15.0 * mu4 * mu2 - 10.0 * mu3**2 + 30.0 * mu2**3)
    return np.array(values, dtype=float)


def empirical_cumulants(samples, p_max: int = 4, groups: int = JACKKNIFE_GROUPS) -> CumulantEstimate:
    """
    Estimate κ_1..κ_{p_max} by k-statistics (orders <= 4) and moment formulas (5, 6).

    Args:
        samples (array-like): Observations.
        p_max (int): Highest order, at most 6.
        groups (int): Jackknife groups; contiguous blocks are deleted in turn.

    Returns:
        CumulantEstimate: Estimates and jackknife standard errors.

    Raises:
        StatsError: If p_max is outside 1..6 or there are fewer than 10·p_max samples.
    """
    if not 1 <= p_max <= MAX_ORDER:
        raise StatsError(f"p_max must lie in 1..{MAX_ORDER}, got {p_max}")
    samples = np.asarray(samples, dtype=float).ravel()
    if samples.size < 10 * p_max:
        raise StatsError(f"need at least {10 * p_max} samples for p_max={p_max}, got {samples.size}")
    estimates = _cumulants(samples, p_max)
    blocks = np.array_split(np.arange(samples.size), min(groups, samples.size))
    replicates = np.array([_cumulants(np.delete(samples, block), p_max) for block in blocks])
    g = len(blocks)
    spread = np.sum((replicates - replicates.mean(axis=0)) ** 2, axis=0)
    return CumulantEstimate(estimates, np.sqrt((g - 1) / g * spread))
