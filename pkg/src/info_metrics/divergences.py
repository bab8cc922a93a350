"""
Entropy, relative entropy, Fisher information and total variation of densities.

Every quantity is a one-dimensional integral evaluated piecewise with
``scipy.integrate.quad``; pieces are cut at the breakpoints and around the
bulk of each density so that adaptive refinement starts from the right scale.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy import integrate

from .density_model import DEFAULT_GRID, DensityGrid, DensityModel

logger = logging.getLogger(__name__)

SUPPORT_MASS_TOLERANCE = 1e-10
NEGATIVE_DIVERGENCE_TOLERANCE = 1e-8


def _f_log_ratio(f: DensityModel, g: DensityModel | None):
    """x ↦ f(x)(log f(x) − log g(x)) with 0·log 0 = 0; g=None gives f log f."""
    def integrand(x):
        density = float(f.pdf(x))
        if density <= 0.0:
            return 0.0
        log_f = float(f.logpdf(x))
        log_g = 0.0 if g is None else float(g.logpdf(x))
        return density * (log_f - log_g)
    return integrand


def entropy(f: DensityModel, grid: DensityGrid = DEFAULT_GRID) -> float:
    """
    Differential entropy −∫ f log f.

    Args:
        f (DensityModel): The density.
        grid (DensityGrid): Quadrature accuracy.

    Returns:
        float: The entropy in nats.
    """
    return -f.integrate(_f_log_ratio(f, None), grid)


def mass_outside(f: DensityModel, support: tuple[float, float], grid: DensityGrid = DEFAULT_GRID) -> float:
    lower, upper = support
    mass = 0.0
    if f.support[0] < lower:
        mass += f.integrate(f.pdf, grid, bounds=(f.support[0], lower))
    if f.support[1] > upper:
        mass += f.integrate(f.pdf, grid, bounds=(upper, f.support[1]))
    return mass


def relative_entropy(f: DensityModel, g: DensityModel, grid: DensityGrid = DEFAULT_GRID) -> float:
    """
    Kullback–Leibler divergence D(f‖g) = ∫ f log(f/g).

    Args:
        f (DensityModel): The density integrated against.
        g (DensityModel): The reference density.
        grid (DensityGrid): Quadrature accuracy.

    Returns:
        float: The divergence, ``math.inf`` when f puts mass outside the support of g.
        Quadrature noise below zero is reported as 0; a clearly negative result is logged.
    """
    outside = mass_outside(f, g.support, grid)
    if outside > SUPPORT_MASS_TOLERANCE:
        logger.debug("%s has mass %.3e outside the support of %s", f.name, outside, g.name)
        return float("inf")
    value = f.integrate(_f_log_ratio(f, g), grid, extra=(g.mean, *g.breakpoints), bounds=g.support)
    if value < -NEGATIVE_DIVERGENCE_TOLERANCE:
        logger.warning("D(%s‖%s) came out as %.3e; check log_pdf against pdf and the grid tolerances",
                       f.name, g.name, value)
    return max(value, 0.0)


def fisher_information(f: DensityModel, grid: DensityGrid = DEFAULT_GRID) -> float:
    """
    J(F) = E[ρ(F)²] for the score ρ of f.

    A density that jumps at a finite end of its support has infinite Fisher
    information, which is returned as ``math.inf``.
    """
    if not f.stein_applicable:
        return float("inf")
    return f.expectation(lambda x: f.score(x) ** 2, grid)


def standardized_fisher(f: DensityModel, grid: DensityGrid = DEFAULT_GRID) -> float:
    """J_st(F) = σ²J(F) − 1, zero exactly for Gaussians."""
    return f.variance * fisher_information(f, grid) - 1.0


def total_variation(f: DensityModel, g: DensityModel, grid: DensityGrid = DEFAULT_GRID) -> float:
    """½∫|f − g| over the union of the two supports."""
    lower = min(f.support[0], g.support[0])
    upper = max(f.support[1], g.support[1])
    cuts = set(f.breakpoints) | set(g.breakpoints) | {*f.support, *g.support}
    for model in (f, g):
        cuts.update(model.mean + k * model.sd for k in (-10.0, -5.0, -2.0, 0.0, 2.0, 5.0, 10.0))
    # crossings of the two densities are where |f - g| has kinks
    probe = np.linspace(max(lower, min(f.mean, g.mean) - 10 * max(f.sd, g.sd)),
                        min(upper, max(f.mean, g.mean) + 10 * max(f.sd, g.sd)), 4001)
    diff = f.pdf(probe) - g.pdf(probe)
    cuts.update(probe[1:][np.sign(diff[1:]) != np.sign(diff[:-1])])
    edges = [lower, *sorted(c for c in cuts if lower < c < upper), upper]
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        value, _ = integrate.quad(lambda x: abs(float(f.pdf(x)) - float(g.pdf(x))), a, b,
                                  epsabs=grid.epsabs, epsrel=grid.epsrel, limit=grid.limit)
        total += value
    return 0.5 * total
