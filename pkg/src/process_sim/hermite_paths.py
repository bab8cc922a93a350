"""Fractional Brownian motion and Hermite processes on a uniform grid.

Z^{q,H} is approximated by the lattice sum of He_q over fGn of parameter
H₀ = 1 + (H − 1)/q,

    Z_t ≈ σ_N^{-1} t_end^H Σ_{i < [N t / t_end]} He_q(X_i),   σ_N² = q! Σ_{i,j<N} ρ_{H₀}(|i − j|)^q,

so that Var(Z_{t_end}) = t_end^{2H} holds exactly at every lattice size N.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from math import factorial, sqrt

import numpy as np

from ..gaussian_engine.fgn import rho_fgn, sample_fgn, sample_fgn_batch
from ..gaussian_engine.rng_stream import RngStream
from ..special_constants.hermite import hermite_poly
from ..special_constants.hermite_spec import HermiteSpec
from .path_types import ProcessKind
from .sample_types import LatticeConfig, SamplePath
from .simulation_error import SimulationError

logger = logging.getLogger(__name__)

BATCH_CELLS = 1 << 22


def sample_fbm(stream: RngStream, H: float, t_end: float, n: int) -> SamplePath:
    """Fractional Brownian motion as the cumulative sum of fGn scaled by (t_end/n)^H.

    Args:
        stream (RngStream): Source of randomness.
        H (float): Hurst index in (0, 1).
        t_end (float): Time horizon.
        n (int): Number of steps, at least 2.

    Returns:
        SamplePath: The path, with a HermiteSpec of order 1 when H > 1/2.
    """
    if t_end <= 0.0:
        raise SimulationError(f"t_end must be positive, got {t_end}")
    increments = sample_fgn(stream, H, n).values * (t_end / n) ** H
    values = np.concatenate([[0.0], np.cumsum(increments)])
    spec = HermiteSpec.scalar(1, H) if 0.5 < H < 1.0 else None
    return SamplePath(float(t_end), int(n), values, spec=spec, hurst=float(H), kind=ProcessKind.FBM)


@lru_cache(maxsize=128)
def lattice_variance(h0: float, q: int, N: int) -> float:
    """Σ_{i,j<N} ρ_{h0}(|i − j|)^q, the variance of the lattice sum divided by q!."""
    lags = np.arange(1, N)
    return float(N + 2.0 * np.sum((N - lags) * np.atleast_1d(rho_fgn(h0, lags)) ** q))


def lattice_scale(spec: HermiteSpec, N: int) -> float:
    """σ_N, the exact standard deviation of the unnormalized lattice sum."""
    return sqrt(factorial(spec.q) * lattice_variance(spec.h0[0], spec.q, int(N)))


def sample_hermite_path(stream: RngStream, spec: HermiteSpec, t_end: float, n: int,
                        cfg: LatticeConfig = LatticeConfig()) -> SamplePath:
    """Sample Z^{q,H} on n steps of [0, t_end] through the lattice sum.

    Args:
        stream (RngStream): Source of randomness.
        spec (HermiteSpec): Scalar-H spec.
        t_end (float): Time horizon.
        n (int): Output steps.
        cfg (LatticeConfig): Inner lattice size and normalization.

    Returns:
        SamplePath: Exactly normalized path, Var(Z_{t_end}) = t_end^{2H}.
    """
    if t_end <= 0.0 or n < 1:
        raise SimulationError(f"need t_end > 0 and n >= 1, got t_end={t_end}, n={n}")
    N = cfg.lattice_n
    if N < n:
        logger.warning("lattice_n=%d is coarser than the %d output steps", N, n)
    noise = sample_fgn(stream, spec.h0[0], N).values
    sums = np.concatenate([[0.0], np.cumsum(hermite_poly(spec.q, noise))])
    index = (N * np.arange(n + 1)) // n
    values = sums[index] * t_end**spec.hurst / lattice_scale(spec, N)
    return SamplePath(float(t_end), int(n), values, spec=spec, kind=ProcessKind.HERMITE,
                      params={"lattice_n": N})


def sample_hermite_marginal(stream: RngStream, spec: HermiteSpec, cfg: LatticeConfig,
                            size: int, t_end: float = 1.0) -> np.ndarray:
    """Draw ``size`` independent copies of Z_{t_end} through the lattice sum.

    Rows are synthesized in batches, batch k using the child stream k.
    """
    if size < 1:
        raise SimulationError(f"size must be positive, got {size}")
    N = cfg.lattice_n
    scale = t_end**spec.hurst / lattice_scale(spec, N)
    batch = max(1, BATCH_CELLS // N)
    draws = []
    for key, start in enumerate(range(0, size, batch)):
        rows = min(batch, size - start)
        noise = sample_fgn_batch(stream.child(key), spec.h0[0], N, rows)
        draws.append(hermite_poly(spec.q, noise).sum(axis=1) * scale)
    return np.concatenate(draws)
