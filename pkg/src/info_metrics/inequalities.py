"""Functional inequalities between total variation, relative entropy and Fisher information."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .de_bruijn import require_standardized
from .density_factory import DensityFactory
from .density_model import DEFAULT_GRID, DensityGrid, DensityModel, ProductDensityModel
from .divergences import fisher_information, relative_entropy, standardized_fisher, total_variation
from .metrics_error import MetricsError

logger = logging.getLogger(__name__)

ORDERING_SLACK = 1e-9
TENSOR_BUDGET = 2**22
MAX_TENSOR_DIMENSION = 3


@dataclass(frozen=True)
class InequalityRecord:
    """
    One side-by-side comparison lhs ≤ rhs.

    Attributes:
        name (str): Short label.
        lhs (float): Left-hand side.
        rhs (float): Right-hand side.
        asserted (bool): Whether a violation is an error.
    """

    name: str
    lhs: float
    rhs: float
    asserted: bool = True

    @property
    def satisfied(self) -> bool:
        return self.lhs <= self.rhs + ORDERING_SLACK

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "asserted": self.asserted, "satisfied": self.satisfied}


@dataclass(frozen=True)
class InequalityReport:
    """Metric values of one density and the inequalities they were checked against."""

    name: str
    quantities: dict = field(default_factory=dict)
    records: tuple[InequalityRecord, ...] = ()

    def record(self, name: str) -> InequalityRecord:
        for item in self.records:
            if item.name == name:
                return item
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"name": self.name, "quantities": dict(self.quantities),
                "records": [r.to_dict() for r in self.records]}


def _enforce(name: str, records: tuple[InequalityRecord, ...]):
    for item in records:
        if item.asserted and not item.satisfied:
            raise MetricsError(f"{name}: {item.name} violated ({item.lhs:.6g} > {item.rhs:.6g})")


def sup_distance(f: DensityModel, g: DensityModel, grid: DensityGrid = DEFAULT_GRID, points: int = 20001) -> float:
    """sup |f − g| on a dense grid covering the bulk of both densities."""
    x = np.linspace(-grid.span, grid.span, points)
    lower = max(f.support[0], g.support[0])
    upper = min(f.support[1], g.support[1])
    x = np.concatenate([x, [v for v in (lower, upper) if np.isfinite(v)]])
    return float(np.max(np.abs(f.pdf(x) - g.pdf(x))))


def inequality_suite(f: DensityModel, grid: DensityGrid = DEFAULT_GRID, enforce: bool = True) -> InequalityReport:
    """
    Compares a standardized density with N(0, 1).

    Asserts the Pinsker-type bound 2·d_TV² ≤ D and the log-Sobolev bound
    D ≤ ½(J − 1). Shimizu's bounds are recorded under both their J and
    J_st readings without being asserted.

    Args:
        f (DensityModel): Standardized density.
        grid (DensityGrid): Quadrature accuracy.
        enforce (bool): Raise on a violated asserted bound; otherwise only record it.

    Returns:
        InequalityReport: Quantities d_tv, relative_entropy, fisher, fisher_st, sup_distance.

    Raises:
        MetricsError: If f is not standardized, or enforce is set and an asserted bound fails.
    """
    require_standardized(f)
    gaussian = DensityFactory.gaussian()
    d_tv = total_variation(f, gaussian, grid)
    divergence = relative_entropy(f, gaussian, grid)
    fisher = fisher_information(f, grid)
    fisher_st = standardized_fisher(f, grid)
    sup = sup_distance(f, gaussian, grid)

    records = (
        InequalityRecord("pinsker", 2.0 * d_tv**2, divergence),
        InequalityRecord("log-sobolev", divergence, 0.5 * (fisher - 1.0)),
        InequalityRecord("shimizu-sup-J", sup, float(np.sqrt(fisher)), asserted=False),
        InequalityRecord("shimizu-sup-Jst", sup, float(np.sqrt(max(fisher_st, 0.0))), asserted=False),
        InequalityRecord("shimizu-tv-J", d_tv, float(np.sqrt(fisher / 2.0)), asserted=False),
        InequalityRecord("shimizu-tv-Jst", d_tv, float(np.sqrt(max(fisher_st, 0.0) / 2.0)), asserted=False),
    )
    if enforce:
        _enforce(f.name, records)
    quantities = {"d_tv": d_tv, "relative_entropy": divergence, "fisher": fisher,
                  "fisher_st": fisher_st, "sup_distance": sup}
    logger.debug("%s: %s", f.name, quantities)
    return InequalityReport(f.name, quantities, records)


def _axis(component: DensityModel, points: int, span: float) -> tuple[np.ndarray, np.ndarray]:
    lower = max(component.support[0], component.mean - span * component.sd)
    upper = min(component.support[1], component.mean + span * component.sd)
    x = np.linspace(lower, upper, points)
    weights = np.full(points, x[1] - x[0])
    weights[[0, -1]] *= 0.5
    return x, weights


def product_total_variation(F: ProductDensityModel, grid: DensityGrid = DEFAULT_GRID) -> float:
    """
    d_TV between a product density and the Gaussian with the same mean and covariance.

    One dimension goes through adaptive quadrature; up to three use a tensor
    trapezoid grid.

    Raises:
        MetricsError: If the dimension is too large for a tensor grid.
    """
    gaussians = [DensityFactory.gaussian(c.mean, c.sd) for c in F.components]
    if F.d == 1:
        return total_variation(F.components[0], gaussians[0], grid)
    if F.d > MAX_TENSOR_DIMENSION:
        raise MetricsError(f"tensor total variation supports d ≤ {MAX_TENSOR_DIMENSION}, got {F.d}")
    points = int(TENSOR_BUDGET ** (1.0 / F.d))
    axes = [_axis(c, points, grid.span) for c in F.components]
    weights = reduce(np.multiply.outer, [w for _, w in axes])
    density = reduce(np.multiply.outer, [c.pdf(x) for c, (x, _) in zip(F.components, axes)])
    reference = reduce(np.multiply.outer, [g.pdf(x) for g, (x, _) in zip(gaussians, axes)])
    return float(0.5 * np.sum(np.abs(density - reference) * weights))


def multivariate_trace_bound(F: ProductDensityModel, grid: DensityGrid = DEFAULT_GRID,
                             enforce: bool = True) -> InequalityReport:
    """
    Checks 4·d_TV² ≤ 2D ≤ ‖C‖_op·tr(C⁻¹J_st) for a vector with independent components.

    With C diagonal, D is the sum of the componentwise divergences from
    N(μᵢ, σᵢ²) and tr(C⁻¹J_st) = Σ (Jᵢ − 1/σᵢ²).

    Args:
        F (ProductDensityModel): The product density.
        grid (DensityGrid): Quadrature accuracy.
        enforce (bool): Raise on a violated ordering; otherwise only record it.

    Returns:
        InequalityReport: Quantities relative_entropy, trace, op_norm, bound and d_tv
        (None above three dimensions, where the first link is skipped).
    """
    variances = F.variances
    divergence = 0.0
    trace = 0.0
    for component, variance in zip(F.components, variances):
        divergence += relative_entropy(component, DensityFactory.gaussian(component.mean, component.sd), grid)
        trace += fisher_information(component, grid) - 1.0 / variance
    op_norm = float(np.max(variances))
    bound = op_norm * 0.5 * trace

    d_tv = product_total_variation(F, grid) if F.d <= MAX_TENSOR_DIMENSION else None
    records = [InequalityRecord("entropy-trace", 2.0 * divergence, 2.0 * bound)]
    if d_tv is not None:
        records.insert(0, InequalityRecord("pinsker", 4.0 * d_tv**2, 2.0 * divergence))
    else:
        logger.info("d=%d: total-variation link skipped", F.d)
    records = tuple(records)
    name = "×".join(c.name for c in F.components)
    if enforce:
        _enforce(name, records)
    quantities = {"relative_entropy": divergence, "trace": trace, "op_norm": op_norm,
                  "bound": bound, "d_tv": d_tv}
    return InequalityReport(name, quantities, records)
