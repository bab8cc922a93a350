"""Analytic densities with their score functions, and their expectations by quadrature."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .metrics_error import MetricsError

logger = logging.getLogger(__name__)

NORMALIZATION_TOLERANCE = 1e-6
STEIN_TOLERANCE = 1e-4


@dataclass(frozen=True)
class DensityGrid:
    """
    Accuracy settings of the information metrics.

    Attributes:
        epsabs (float): Absolute tolerance of each adaptive quadrature.
        epsrel (float): Relative tolerance of each adaptive quadrature.
        limit (int): Subinterval budget of each adaptive quadrature.
        span (float): Half-width, in standard deviations, of convolution grids.
        min_points (int): Smallest convolution grid.
        max_points (int): Largest convolution grid before giving up.
        points_per_scale (int): Grid points per smallest length scale.
        t_nodes (int): Gauss–Legendre nodes of the de Bruijn time integral.
        t_min (float): Lower cut of the de Bruijn time integral.
        tensor_points (int): Points per axis of multivariate tensor grids.
    """

    epsabs: float = 1e-13
    epsrel: float = 1e-10
    limit: int = 200
    span: float = 12.0
    min_points: int = 2**13
    max_points: int = 2**20
    points_per_scale: int = 8
    t_nodes: int = 64
    t_min: float = 1e-4
    tensor_points: int = 161


DEFAULT_GRID = DensityGrid()


@dataclass(frozen=True, eq=False)
class DensityModel:
    """
    A probability density with its score x ↦ f′(x)/f(x).

    Attributes:
        name (str): Label used in reports.
        pdf (callable): Vectorized density.
        score (callable): Vectorized log-density derivative.
        support (tuple[float, float]): Interval, possibly unbounded.
        mean (float): First moment.
        variance (float): Second central moment, positive.
        log_pdf (callable, optional): Vectorized log-density, for accurate tails.
        breakpoints (tuple[float, ...]): Interior points where pdf is not smooth.
        scale (float, optional): Smallest length scale of the density's features.
        validate (bool): Check normalization and the Stein identity on construction.
    """

    name: str
    pdf: Callable
    score: Callable
    support: tuple[float, float]
    mean: float
    variance: float
    log_pdf: Callable | None = None
    breakpoints: tuple[float, ...] = ()
    scale: float | None = None
    validate: bool = True

    def __post_init__(self):
        lower, upper = (float(v) for v in self.support)
        if not lower < upper:
            raise MetricsError(f"{self.name}: empty support {self.support}")
        if not self.variance > 0.0:
            raise MetricsError(f"{self.name}: variance must be positive, got {self.variance}")
        object.__setattr__(self, "support", (lower, upper))
        if self.scale is None:
            object.__setattr__(self, "scale", float(np.sqrt(self.variance)))
        if self.validate:
            self.check_normalization()
            if self.stein_applicable:
                self.check_stein()

    @property
    def sd(self) -> float:
        return float(np.sqrt(self.variance))

    def logpdf(self, x):
        if self.log_pdf is not None:
            return self.log_pdf(x)
        with np.errstate(divide="ignore"):
            return np.log(self.pdf(x))

    @property
    def stein_applicable(self) -> bool:
        """The Stein identity needs f to vanish at every finite end of the support."""
        ends = [edge for edge in self.support if np.isfinite(edge)]
        return all(float(self.pdf(np.array([edge]))[0]) < 1e-12 for edge in ends)

    def pieces(self, extra=()) -> list[tuple[float, float]]:
        """Split the support at breakpoints and around the bulk of the mass."""
        lower, upper = self.support
        cuts = {self.mean + k * self.sd for k in (-10.0, -5.0, -2.0, 0.0, 2.0, 5.0, 10.0)}
        cuts.update(self.breakpoints)
        cuts.update(extra)
        inner = sorted(c for c in cuts if lower < c < upper)
        edges = [lower, *inner, upper]
        return list(zip(edges[:-1], edges[1:]))

    def integrate(self, integrand, grid: DensityGrid = DEFAULT_GRID, extra=(), bounds=None) -> float:
        """∫ integrand(x) dx over the support (or ``bounds``), piecewise."""
        total = 0.0
        for a, b in self.pieces(extra):
            if bounds is not None:
                a, b = max(a, bounds[0]), min(b, bounds[1])
                if a >= b:
                    continue
            value, _ = integrate.quad(lambda x: float(integrand(x)), a, b,
                                      epsabs=grid.epsabs, epsrel=grid.epsrel, limit=grid.limit)
            total += value
        return total

    def expectation(self, func, grid: DensityGrid = DEFAULT_GRID) -> float:
        """E[func(F)]."""
        return self.integrate(lambda x: func(x) * self.pdf(x), grid)

    def check_normalization(self):
        mass = self.integrate(self.pdf)
        if abs(mass - 1.0) > NORMALIZATION_TOLERANCE:
            raise MetricsError(f"{self.name}: density integrates to {mass:.8f}")

    def check_stein(self):
        """E[ρ(F)g(F)] = −E[g′(F)] for g ∈ {1, x, x²}."""
        residuals = (
            self.expectation(self.score),
            self.expectation(lambda x: self.score(x) * x) + 1.0,
            self.expectation(lambda x: self.score(x) * x * x) + 2.0 * self.mean,
        )
        worst = max(abs(r) for r in residuals)
        if worst > STEIN_TOLERANCE:
            raise MetricsError(f"{self.name}: score fails the Stein identity (residual {worst:.3e})")
        logger.debug("%s: Stein residual %.3e", self.name, worst)


@dataclass(frozen=True, eq=False)
class ProductDensityModel:
    """Density of a vector with independent components; its covariance is diagonal."""

    components: tuple[DensityModel, ...]

    def __post_init__(self):
        if len(self.components) < 1:
            raise MetricsError("a product density needs at least one component")
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def d(self) -> int:
        return len(self.components)

    @property
    def variances(self) -> np.ndarray:
        return np.array([c.variance for c in self.components])

    @property
    def covariance(self) -> np.ndarray:
        return np.diag(self.variances)
