"""Second-chaos representations of the Rosenblatt process on an inner Brownian lattice.

Both representations have kernels of the form f(y₁, y₂) = ∫ φ(u, y₁) φ(u, y₂) w(u) du.
Averaging φ over inner cells gives the exact cell average of f in Gram form

    ā = Φᵀ diag(W) Φ,

with Φ[node, i] the cell average of φ(u_node, ·) over cell i and W the outer
quadrature weights. In both cases φ(u, ·) leaves each cell edge like a power
(u − edge)^{H/2}, so each outer cell [e_k, e_k + Δ] is integrated with
Gauss–Legendre after the substitution u = e_k + Δ w^{2/H}, which makes the
integrand smooth in w.

The time-interval representation uses φ = ∂₁K^{H₀}, H₀ = (H + 1)/2, on [0, t];
the cell average of ∂₁K^{H₀}(s, ·) is a difference of regularized incomplete
beta functions. The moving-average representation uses φ = (u − y)_+^{H/2−1} on
(−∞, t]; its half-line is cut at −horizon·t with geometrically growing cells.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from ..gaussian_engine.rng_stream import RngStream
from ..special_constants.hermite_spec import HermiteSpec
from ..special_constants.normalization import const_b_rosenblatt, const_c_hermite
from .kernels import volterra_constant
from .path_types import ProcessKind
from .sample_types import SamplePath
from .simulation_error import SimulationError

logger = logging.getLogger(__name__)

OUTER_NODES = 8
HORIZON = 1e4
GROWTH = 1.1


@dataclass(frozen=True, eq=False)
class GramDesign:
    """Cell-averaged kernel ā = Φᵀ diag(W) Φ over the cells delimited by ``edges``.

    Attributes:
        edges (numpy.ndarray): Cell edges, increasing.
        basis (numpy.ndarray): Φ, shape (nodes, cells).
        weights (numpy.ndarray): W, one per outer node.
        node_times (numpy.ndarray): Outer time of each node.
        node_cells (numpy.ndarray): Outer cell index of each node.
    """

    edges: np.ndarray
    basis: np.ndarray
    weights: np.ndarray
    node_times: np.ndarray
    node_cells: np.ndarray

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    def cell_average(self, until: float) -> np.ndarray:
        """ā with the outer integral stopped at ``until``."""
        mask = self.node_times <= until
        basis = self.basis[mask]
        return basis.T @ (self.weights[mask, None] * basis)

    def kernel_matrix(self, until: float, delta: float) -> np.ndarray:
        """ā_ij sqrt(w_i w_j)/delta, so that (matrix·delta) carries the cell widths."""
        root = np.sqrt(self.widths)
        return self.cell_average(until) * np.outer(root, root) / delta


def _outer_nodes(edges: np.ndarray, power: float, nodes: int):
    points, weights = special.roots_legendre(nodes)
    w = 0.5 * (points + 1.0)
    gw = 0.5 * weights
    starts = edges[:-1, None]
    width = np.diff(edges)[:, None]
    times = starts + width * w**power
    jacobian = width * power * w ** (power - 1.0) * gw
    cells = np.repeat(np.arange(edges.size - 1), nodes)
    return times.ravel(), jacobian.ravel(), cells


def _check(H: float, t_end: float, inner_m: int):
    if not 0.5 < H < 1.0:
        raise SimulationError(f"H must lie in (0.5, 1), got {H}")
    if t_end <= 0.0:
        raise SimulationError(f"t_end must be positive, got {t_end}")
    if inner_m < 32:
        raise SimulationError(f"inner_m must be at least 32, got {inner_m}")


@lru_cache(maxsize=16)
def rosenblatt_f_design(H: float, t_end: float, inner_m: int, nodes: int = OUTER_NODES) -> GramDesign:
    """Gram design of the time-interval kernel ∫_{y₁∨y₂}^t ∂₁K^{H₀}(s, y₁)∂₁K^{H₀}(s, y₂) ds."""
    _check(H, t_end, inner_m)
    h0 = 0.5 * (H + 1.0)
    alpha, beta = 1.5 - h0, h0 - 0.5
    edges = np.linspace(0.0, t_end, inner_m + 1)
    delta = t_end / inner_m
    times, jacobian, cells = _outer_nodes(edges, 1.0 / beta, nodes)
    upper = np.minimum(1.0, edges[None, 1:] / times[:, None])
    lower = np.minimum(1.0, edges[None, :-1] / times[:, None])
    scale = np.exp(special.betaln(alpha, beta)) / delta
    basis = scale * (special.betainc(alpha, beta, upper) - special.betainc(alpha, beta, lower))
    weights = jacobian * volterra_constant(h0) ** 2 * times ** (2.0 * beta)
    logger.debug("time-interval design: %d cells, %d outer nodes", inner_m, times.size)
    return GramDesign(edges, basis, weights, times, cells)


@lru_cache(maxsize=16)
def rosenblatt_g_design(H: float, t_end: float, inner_m: int, nodes: int = OUTER_NODES,
                        horizon: float = HORIZON, growth: float = GROWTH) -> GramDesign:
    """Gram design of c(H,2)² ∫_0^t (u − y₁)_+^{H/2−1}(u − y₂)_+^{H/2−1} du on (−horizon·t, t]."""
    _check(H, t_end, inner_m)
    delta = t_end / inner_m
    widths = [delta]
    while sum(widths) < horizon * t_end:
        widths.append(widths[-1] * growth)
    negative = -np.cumsum(widths)[::-1]
    edges = np.concatenate([negative, np.linspace(0.0, t_end, inner_m + 1)])
    exponent = 0.5 * H
    times, jacobian, _ = _outer_nodes(edges[-inner_m - 1:], 1.0 / exponent, nodes)
    cells = np.repeat(np.arange(inner_m), nodes) + negative.size
    lag_low = np.clip(times[:, None] - edges[None, :-1], 0.0, None)
    lag_high = np.clip(times[:, None] - edges[None, 1:], 0.0, None)
    basis = (lag_low**exponent - lag_high**exponent) / (exponent * np.diff(edges)[None, :])
    weights = jacobian * const_c_hermite(HermiteSpec.scalar(2, H)) ** 2
    logger.debug("moving-average design: %d cells (%d on the negative half-line)", edges.size - 1, negative.size)
    return GramDesign(edges, basis, weights, times, cells)


def _replicate_sums(design: GramDesign, noise: np.ndarray) -> np.ndarray:
    """Per-node contributions W((Φξ)² − |Φ_node|²) for each row of ``noise``."""
    projected = noise @ design.basis.T
    centering = np.sum(design.basis**2, axis=1)
    return design.weights * (projected**2 - centering)


def sample_rosenblatt_grid(stream: RngStream, H: float, t_end: float, n: int, inner_m: int,
                           nodes: int = OUTER_NODES) -> SamplePath:
    """Rosenblatt path from the discretized time-interval double Wiener–Itô integral.

    R_t = b_H Δ (ξᵀ ā(t) ξ − tr ā(t)) with ξ the normalized inner Brownian increments.

    Args:
        stream (RngStream): Source of randomness.
        H (float): Hurst index in (1/2, 1).
        t_end (float): Time horizon.
        n (int): Output steps; must divide inner_m.
        inner_m (int): Inner Brownian cells, at least 32.
        nodes (int): Gauss–Legendre nodes per outer cell.

    Returns:
        SamplePath: The path.
    """
    _check(H, t_end, inner_m)
    if n < 1 or inner_m % n:
        raise SimulationError(f"n={n} must divide inner_m={inner_m}")
    design = rosenblatt_f_design(float(H), float(t_end), int(inner_m), nodes)
    noise = stream.generator().standard_normal(inner_m)
    per_cell = np.bincount(design.node_cells, weights=_replicate_sums(design, noise), minlength=inner_m)
    cumulative = np.concatenate([[0.0], np.cumsum(per_cell)])
    scale = const_b_rosenblatt(H) * t_end / inner_m
    values = scale * cumulative[np.arange(n + 1) * (inner_m // n)]
    return SamplePath(float(t_end), int(n), values, spec=HermiteSpec.scalar(2, H),
                      kind=ProcessKind.ROSENBLATT_GRID, params={"inner_m": inner_m})


def sample_rosenblatt_marginal(stream: RngStream, H: float, inner_m: int, size: int,
                               t_end: float = 1.0, nodes: int = OUTER_NODES) -> np.ndarray:
    """Draw ``size`` copies of R_{t_end} from the time-interval representation."""
    design = rosenblatt_f_design(float(H), float(t_end), int(inner_m), nodes)
    scale = const_b_rosenblatt(H) * t_end / inner_m
    batch = max(1, (1 << 22) // design.basis.shape[0])
    draws = []
    for key, start in enumerate(range(0, size, batch)):
        noise = stream.child(key).generator().standard_normal((min(batch, size - start), inner_m))
        draws.append(scale * _replicate_sums(design, noise).sum(axis=1))
    return np.concatenate(draws)
