"""Empirical distribution function of the Rosenblatt marginal."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..gaussian_engine.rng_stream import RngStream
from ..process_sim.hermite_paths import sample_hermite_marginal
from ..process_sim.sample_types import LatticeConfig
from ..special_constants.hermite_spec import HermiteSpec
from .stats_error import StatsError

CONJECTURE_POINTS = (-0.6256, 1.3552)
CONJECTURE_VALUES = (0.2658, 0.9123)


class ProbeResult(NamedTuple):
    points: np.ndarray
    probabilities: np.ndarray
    std_errors: np.ndarray


def rosenblatt_cdf_probe(stream: RngStream, H: float, points=CONJECTURE_POINTS, n_samples: int = 50000,
                         cfg: LatticeConfig = LatticeConfig()) -> ProbeResult:
    """
    Estimate P(R_1 <= x) at each probe point from lattice draws of R_1.

    Standard errors are binomial, sqrt(p(1 − p)/n).
    """
    if n_samples < 1:
        raise StatsError(f"n_samples must be positive, got {n_samples}")
    points = np.atleast_1d(np.asarray(points, dtype=float))
    draws = np.sort(sample_hermite_marginal(stream, HermiteSpec.scalar(2, H), cfg, n_samples))
    probabilities = np.searchsorted(draws, points, side="right") / n_samples
    return ProbeResult(points, probabilities, np.sqrt(probabilities * (1.0 - probabilities) / n_samples))
