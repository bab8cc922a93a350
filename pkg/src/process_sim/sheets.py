"""Two-parameter Hermite sheets from Hermite variations of a fractional Brownian sheet."""

from __future__ import annotations

import logging
from math import factorial, sqrt

import numpy as np

from ..gaussian_engine.rng_stream import RngStream
from ..gaussian_engine.sheet import sample_fgn_sheet
from ..special_constants.hermite import hermite_poly
from ..special_constants.hermite_spec import HermiteSpec
from .hermite_paths import lattice_variance
from .sample_types import FieldSample, LatticeConfig
from .simulation_error import SimulationError

logger = logging.getLogger(__name__)


def sample_hermite_sheet(stream: RngStream, spec: HermiteSpec, extents, dims,
                         cfg: LatticeConfig = LatticeConfig()) -> FieldSample:
    """
    Sample Z^{q,H} on the product grid [0, extents[0]] × [0, extents[1]].

    The lattice is an N×N fGn sheet with parameters (H₀,₁, H₀,₂), N = cfg.lattice_n.
    Because the sheet covariance is separable, the lattice sum of He_q has
    variance q!·S₁·S₂ with S_j = Σ_{i,k<N} ρ_{H₀,j}(|i − k|)^q, which is used as
    the exact normalization.

    Args:
        stream (RngStream): Source of randomness.
        spec (HermiteSpec): Spec with two Hurst components.
        extents (sequence): Per-axis end times.
        dims (sequence): Per-axis output steps.
        cfg (LatticeConfig): Inner lattice.

    Returns:
        FieldSample: Field vanishing on both zero faces with E[Z(extents)²] = ∏ extents^{2H}.

    Raises:
        SimulationError: If the spec is not two-parameter or the grid is invalid.
    """
    if spec.d != 2 or len(extents) != 2 or len(dims) != 2:
        raise SimulationError(f"sheets are two-parameter, got spec d={spec.d}, extents={extents}, dims={dims}")
    N = cfg.lattice_n
    h0 = spec.h0
    lattice = sample_fgn_sheet(stream, h0[0], h0[1], N, N)
    sums = np.zeros((N + 1, N + 1))
    sums[1:, 1:] = np.cumsum(np.cumsum(hermite_poly(spec.q, lattice), axis=0), axis=1)
    scale = sqrt(factorial(spec.q) * lattice_variance(h0[0], spec.q, N) * lattice_variance(h0[1], spec.q, N))
    scale /= np.prod([float(e) ** h for e, h in zip(extents, spec.H)])
    rows = (N * np.arange(int(dims[0]) + 1)) // int(dims[0])
    columns = (N * np.arange(int(dims[1]) + 1)) // int(dims[1])
    values = sums[np.ix_(rows, columns)] / scale
    logger.debug("hermite sheet q=%d on a %dx%d lattice", spec.q, N, N)
    return FieldSample(tuple(extents), tuple(dims), values, spec)
