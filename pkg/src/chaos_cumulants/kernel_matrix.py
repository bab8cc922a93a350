"""Discretized symmetric kernels of double Wiener–Itô integrals."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from ..gaussian_engine.rng_stream import RngStream
from ..special_constants.quadrature import DEFAULT_QUADRATURE
from .cumulant_error import CumulantError

logger = logging.getLogger(__name__)

SYMMETRY_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """
    Midpoint discretization of a symmetric kernel f(s₁, s₂).

    Attributes:
        grid (numpy.ndarray): Cell midpoints, length m.
        delta (float): Cell width.
        a (numpy.ndarray): Symmetric m×m matrix of kernel values.
    """

    grid: np.ndarray
    delta: float
    a: np.ndarray

    def __post_init__(self):
        grid = np.array(self.grid, dtype=float)
        a = np.array(self.a, dtype=float)
        if self.delta <= 0.0:
            raise CumulantError(f"delta must be positive, got {self.delta}")
        if a.shape != (grid.size, grid.size):
            raise CumulantError(f"kernel of shape {a.shape} does not match a grid of {grid.size} points")
        if not np.all(np.isfinite(a)):
            raise CumulantError("kernel has non-finite entries")
        asymmetry = np.max(np.abs(a - a.T)) if a.size else 0.0
        if asymmetry > SYMMETRY_TOLERANCE:
            logger.warning("kernel is asymmetric (max |a - a^T| = %.3e), symmetrizing", asymmetry)
        a = 0.5 * (a + a.T)
        grid.setflags(write=False)
        a.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "delta", float(self.delta))

    @property
    def m(self) -> int:
        return self.grid.size

    def scaled(self, factor: float) -> KernelMatrix:
        return KernelMatrix(self.grid, self.delta, factor * self.a)

    def __add__(self, other: KernelMatrix) -> KernelMatrix:
        if self.delta != other.delta or not np.array_equal(self.grid, other.grid):
            raise CumulantError("kernels live on different grids")
        return KernelMatrix(self.grid, self.delta, self.a + other.a)

    def to_json_header(self) -> str:
        return json.dumps({"delta": self.delta, "grid": self.grid.tolist(), "m": self.m}, sort_keys=True)

    def to_csv(self, target) -> None:
        """Write the dense matrix, one row per grid point."""
        pd.DataFrame(self.a).to_csv(target, index=False, header=False, float_format="%.17g")


def kernel_from_function(f, domain=(0.0, 1.0), m: int = 64,
                         diagonal_offset: float = DEFAULT_QUADRATURE.diagonal_offset) -> KernelMatrix:
    """
    Sample f at midpoint pairs of m uniform cells.

    Diagonal entries that are not finite (kernels singular on u = v) are
    re-sampled at (u, u + diagonal_offset·delta).

    Args:
        f (callable): Two-argument kernel; vectorized callables are evaluated on the whole grid.
        domain (tuple): Interval (lower, upper).
        m (int): Number of cells.
        diagonal_offset (float): Shift of the diagonal sample, in cell widths.

    Returns:
        KernelMatrix: The symmetrized kernel.

    Raises:
        CumulantError: If an off-diagonal entry, or a shifted diagonal entry, is not finite.
    """
    lower, upper = (float(v) for v in domain)
    if m < 1 or upper <= lower:
        raise CumulantError(f"invalid discretization: m={m}, domain={domain}")
    delta = (upper - lower) / m
    grid = lower + delta * (np.arange(m) + 0.5)
    u, v = np.meshgrid(grid, grid, indexing="ij")
    with np.errstate(divide="ignore", invalid="ignore"):
        try:
            a = np.array(f(u, v), dtype=float)
            if a.shape != u.shape:
                raise ValueError
        except (TypeError, ValueError, ZeroDivisionError):
            a = np.array([[_scalar(f, x, y) for y in grid] for x in grid])
        diagonal = np.arange(m)
        singular = ~np.isfinite(a[diagonal, diagonal])
        for i in diagonal[singular]:
            a[i, i] = _scalar(f, grid[i], grid[i] + diagonal_offset * delta)
    off_diagonal = ~np.isfinite(a)
    if np.any(off_diagonal):
        raise CumulantError(f"kernel is not finite at {int(off_diagonal.sum())} midpoint pairs")
    return KernelMatrix(grid, delta, a)


def _scalar(f, x, y) -> float:
    try:
        return float(f(x, y))
    except (ZeroDivisionError, OverflowError, ValueError):
        return float("nan")


def random_kernel(stream: RngStream, m: int = 8, domain=(0.0, 1.0)) -> KernelMatrix:
    """Seed-fixed random symmetric kernel with standard normal entries."""
    lower, upper = domain
    delta = (upper - lower) / m
    noise = stream.generator().standard_normal((m, m))
    return KernelMatrix(lower + delta * (np.arange(m) + 0.5), delta, 0.5 * (noise + noise.T))
