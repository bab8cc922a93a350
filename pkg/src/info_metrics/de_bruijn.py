"""
The de Bruijn identity D(F‖Z) = ∫₀¹ (J(√t F + √(1−t) Z) − 1)/(2t) dt, checked numerically.

The left side is a direct relative-entropy quadrature. The right side convolves
the rescaled density with a Gaussian on a uniform grid at each node of a
Gauss–Legendre rule in log t, so the two sides share no code path.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy import signal, special, stats

from .density_factory import DensityFactory
from .density_model import DEFAULT_GRID, DensityGrid, DensityModel
from .divergences import relative_entropy
from .metrics_error import MetricsError

logger = logging.getLogger(__name__)

STANDARDIZED_TOLERANCE = 1e-6


def require_standardized(f: DensityModel):
    if abs(f.mean) > STANDARDIZED_TOLERANCE or abs(f.variance - 1.0) > STANDARDIZED_TOLERANCE:
        raise MetricsError(
            f"{f.name}: expected mean 0 and variance 1, got {f.mean:.6g} and {f.variance:.6g}"
        )


def _grid_size(spacing: float, grid: DensityGrid) -> int:
    points = int(np.ceil(2.0 * grid.span / spacing)) + 1
    points = max(points, grid.min_points)
    if points % 2 == 0:
        points += 1
    if points > grid.max_points:
        raise MetricsError(
            f"convolution grid of {points} points exceeds the limit of {grid.max_points}"
        )
    return points


def interpolated_fisher(f: DensityModel, t: float, grid: DensityGrid = DEFAULT_GRID) -> float:
    """
    Fisher information of √t F + √(1−t) Z by grid convolution.

    Args:
        f (DensityModel): Standardized density of F.
        t (float): Interpolation time in (0, 1).
        grid (DensityGrid): Grid settings.

    Returns:
        float: J(√t F + √(1−t) Z).

    Raises:
        MetricsError: If the grid needed to resolve both scales is too large.
    """
    if not 0.0 < t < 1.0:
        raise MetricsError(f"t must lie in (0, 1), got {t}")
    root_t, s = np.sqrt(t), np.sqrt(1.0 - t)
    spacing = min(s, root_t * f.scale) / grid.points_per_scale
    points = _grid_size(spacing, grid)
    x = np.linspace(-grid.span, grid.span, points)
    h = x[1] - x[0]

    scaled = np.nan_to_num(f.pdf(x / root_t) / root_t)
    kernel = stats.norm.pdf(x, scale=s)
    kernel_slope = -x / (s * s) * kernel
    density = signal.fftconvolve(scaled, kernel, mode="same") * h
    slope = signal.fftconvolve(scaled, kernel_slope, mode="same") * h

    mask = density > 1e-250
    value = float(np.sum(slope[mask] ** 2 / density[mask]) * h)
    logger.debug("J at t=%.3e on %d points: %.12f", t, points, value)
    return value


def de_bruijn_gap(f: DensityModel, grid: DensityGrid = DEFAULT_GRID, t_grid: int | None = None) -> tuple[float, float]:
    """
    Both sides of the de Bruijn identity for a standardized density.

    Args:
        f (DensityModel): Standardized density.
        grid (DensityGrid): Quadrature and convolution settings.
        t_grid (int, optional): Gauss–Legendre nodes in log t; defaults to ``grid.t_nodes``.

    Returns:
        tuple[float, float]: (D(f‖N(0,1)), ∫₀¹ (J_t − 1)/(2t) dt).

    Raises:
        MetricsError: If f is not standardized or the convolution grid overflows.
    """
    require_standardized(f)
    nodes = grid.t_nodes if t_grid is None else int(t_grid)
    if nodes < 2:
        raise MetricsError(f"t_grid must be at least 2, got {nodes}")

    lhs = relative_entropy(f, DensityFactory.gaussian(), grid)

    # ∫ (J_t − 1)/(2t) dt = ∫ (J_t − 1)/2 d(log t), integrand → 0 as t → 0
    lo = np.log(grid.t_min)
    roots, weights = special.roots_legendre(nodes)
    log_t = 0.5 * lo * (1.0 - roots)
    excess = np.array([interpolated_fisher(f, float(np.exp(u)), grid) - 1.0 for u in log_t])
    rhs = float(np.dot(weights, 0.5 * excess) * (-0.5 * lo))

    # below t_min the excess is linear in t
    rhs += 0.5 * (interpolated_fisher(f, grid.t_min, grid) - 1.0)
    return lhs, rhs
