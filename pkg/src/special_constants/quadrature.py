"""Singular double integrals with the kernel |u − v|^e, −1 < e <= 0.

Functions are discretized by midpoint values on uniform cells while the
power kernel is integrated exactly over each pair of cells. On unit cells
that exact integral is a lag-only quantity,

    ∬_{[i,i+1]×[j,j+1]} |u − v|^e du dv = ρ_K(|i − j|) / (K(2K − 1)),  K = 1 + e/2,

where ρ_K is the fGn autocovariance, so each discretized form is a Toeplitz
quadratic form evaluated by FFT. Resolution doubles until two consecutive
levels agree to the requested relative tolerance.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gamma as gamma_function

import numpy as np
from scipy import integrate, linalg, special

from ..gaussian_engine.fgn import rho_fgn
from .constants_error import DomainError, QuadratureError
from .quadrature_types import QuadratureScheme

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadratureSpec:
    """Resolution and stopping rules of the singular quadratures.

    Attributes:
        scheme (QuadratureScheme): Discretization scheme.
        points_per_axis (int): Cells per axis at the coarsest level, at least 8.
        diagonal_offset (float): Relative shift, in cell widths, used when a
            kernel that is singular on the diagonal has to be sampled there.
        tolerance (float): Relative change between levels accepted as converged.
        max_refinements (int): Number of doublings before giving up.
        tail_cutoff (float): Truncation point of half-line integrals; e^{-20} < 1e-8.
    """

    scheme: QuadratureScheme = QuadratureScheme.TENSOR_GAUSS_LEGENDRE_DIAGONAL_SPLIT
    points_per_axis: int = 64
    diagonal_offset: float = 0.25
    tolerance: float = 1e-4
    max_refinements: int = 10
    tail_cutoff: float = 20.0

    def __post_init__(self):
        if self.points_per_axis < 8:
            raise DomainError(f"points_per_axis must be at least 8, got {self.points_per_axis}")
        if self.diagonal_offset <= 0.0:
            raise DomainError(f"diagonal_offset must be positive, got {self.diagonal_offset}")
        if self.tolerance <= 0.0 or self.max_refinements < 1:
            raise DomainError("tolerance must be positive and max_refinements at least 1")


@dataclass(frozen=True)
class QuadratureResult:
    """A quadrature value with an estimate of its absolute error."""

    value: float
    error: float


DEFAULT_QUADRATURE = QuadratureSpec()


def evaluate_on(f, points: np.ndarray) -> np.ndarray:
    """Evaluate ``f`` on an array, falling back to a loop for scalar-only callables."""
    try:
        values = np.asarray(f(points), dtype=float)
        if values.shape != points.shape:
            values = np.broadcast_to(values, points.shape).astype(float)
    except (TypeError, ValueError):
        values = np.array([float(f(p)) for p in points])
    if not np.all(np.isfinite(values)):
        raise QuadratureError("integrand is not finite on the quadrature grid")
    return values


def power_kernel_form(f_values, h: float, exponent: float, g_values=None) -> float:
    """Σ_ij f_i g_j ∬_{cell i × cell j} |u − v|^exponent du dv on uniform cells of width h.

    Args:
        f_values (array-like): Cell values of the first function.
        h (float): Cell width.
        exponent (float): Kernel exponent in (−1, 0].
        g_values (array-like, optional): Cell values of the second function (defaults to f).

    Returns:
        float: The bilinear form.
    """
    if not -1.0 < exponent <= 0.0:
        raise DomainError(f"kernel exponent must lie in (-1, 0], got {exponent}")
    f = np.asarray(f_values, dtype=float)
    g = f if g_values is None else np.asarray(g_values, dtype=float)
    if exponent == 0.0:
        return float(h * h * f.sum() * g.sum())
    k = 1.0 + exponent / 2.0
    lag_weights = np.atleast_1d(rho_fgn(k, np.arange(f.size))) / (k * (2.0 * k - 1.0))
    return float(h ** (exponent + 2.0) * np.dot(g, linalg.matmul_toeplitz(lag_weights, f)))


def refine(level, quad: QuadratureSpec, what: str) -> QuadratureResult:
    """Double the resolution of ``level(n)`` until consecutive values agree.

    Raises:
        QuadratureError: If the relative change stays above tolerance.
    """
    n = quad.points_per_axis
    previous = level(n)
    for _ in range(quad.max_refinements):
        n *= 2
        current = level(n)
        change = abs(current - previous)
        scale = max(abs(current), abs(previous))
        logger.debug("%s: %d cells, value %.10g, change %.3e", what, n, current, change)
        if scale < 1e-300 or change <= quad.tolerance * scale:
            return QuadratureResult(current, change)
        previous = current
    raise QuadratureError(f"{what} did not converge after {quad.max_refinements} refinements "
                          f"(last relative change {change / scale:.3e})")


def _finite_domain(domain, quad: QuadratureSpec) -> tuple[float, float]:
    lower, upper = (float(v) for v in domain)
    if not np.isfinite(lower):
        raise DomainError("the lower end of the domain must be finite")
    if np.isinf(upper):
        upper = lower + quad.tail_cutoff
    if upper <= lower:
        raise DomainError(f"empty domain [{lower}, {upper}]")
    return lower, upper


def singular_double_integral(f, exponent: float, domain=(0.0, np.inf),
                             quad: QuadratureSpec = DEFAULT_QUADRATURE) -> QuadratureResult:
    """∬ f(u) f(v) |u − v|^exponent du dv over domain², refined to tolerance."""
    lower, upper = _finite_domain(domain, quad)

    def level(n):
        h = (upper - lower) / n
        midpoints = lower + h * (np.arange(n) + 0.5)
        return power_kernel_form(evaluate_on(f, midpoints), h, exponent)

    return refine(level, quad, "singular double integral")


def weighted_norm_H(f, H: float, domain=(0.0, 1.0), quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Squared norm H(2H−1) ∬ f(u) f(v) |u − v|^{2H−2} du dv.

    Args:
        f (callable): Integrand, bounded on the domain.
        H (float): Hurst index in (1/2, 1).
        domain (tuple): (lower, upper); an infinite upper end is truncated at
            ``lower + quad.tail_cutoff``.
        quad (QuadratureSpec): Resolution and stopping rules.

    Returns:
        float: ‖f‖²_H, equal to Var(∫ f dZ) for any Hermite process Z of index H.
    """
    if not 0.5 < H < 1.0:
        raise DomainError(f"H must lie in (0.5, 1), got {H}")
    result = singular_double_integral(f, 2.0 * H - 2.0, domain, quad)
    return H * (2.0 * H - 1.0) * result.value


def sigma_inner_integral(H: float, x):
    """I(x) = ∬_{R+²} e^{−(u+v)} |u − v − x|^{2H−2} du dv, in closed form.

    Since u − v has density ½e^{−|w|} under the exponential weight,
    I(x) = ½∫ e^{−|w|} |w − x|^{2H−2} dw, which splits into a Kummer function
    term and two incomplete gamma terms. I is even in x.
    """
    s = 2.0 * H - 2.0
    x = np.abs(np.asarray(x, dtype=float))
    g = gamma_function(s + 1.0)
    below = np.exp(-x) * x ** (s + 1.0) / (s + 1.0) * special.hyp1f1(s + 1.0, s + 2.0, x)
    above = np.exp(-x) * g
    mirrored = np.exp(x) * g * special.gammaincc(s + 1.0, x)
    value = 0.5 * (below + above + mirrored)
    return float(value) if value.ndim == 0 else value


def const_sigma_H(H: float, quad: QuadratureSpec = DEFAULT_QUADRATURE) -> QuadratureResult:
    """Fluctuation constant of the drift estimator in the Gaussian regime.

    σ_H = (2H−1)/(HΓ(2H)²) · sqrt(∫_R I(x)² dx). The outer integral is computed
    on [0, X] and doubled; the tail beyond X uses I(x) ~ I(X)(x/X)^{2H−2}.
    X doubles from ``quad.tail_cutoff`` until the result settles.

    Args:
        H (float): Hurst index in (1/2, 3/4).
        quad (QuadratureSpec): Stopping rules.

    Returns:
        QuadratureResult: σ_H with an absolute error estimate.

    Raises:
        DomainError: If H is outside (1/2, 3/4).
        QuadratureError: If the truncation refinement does not settle.
    """
    if not 0.5 < H < 0.75:
        raise DomainError(f"sigma_H needs H in (0.5, 0.75), got {H}")
    prefactor = (2.0 * H - 1.0) / (H * gamma_function(2.0 * H) ** 2)
    limit = max(100, quad.points_per_axis)

    def squared_norm(cutoff):
        body, body_error = integrate.quad(lambda x: sigma_inner_integral(H, x) ** 2, 0.0, cutoff,
                                          points=[1.0], limit=limit, epsrel=1e-10)
        tail = sigma_inner_integral(H, cutoff) ** 2 * cutoff / (3.0 - 4.0 * H)
        return 2.0 * (body + tail), 2.0 * body_error

    cutoff = quad.tail_cutoff
    previous, _ = squared_norm(cutoff)
    for _ in range(quad.max_refinements):
        cutoff *= 2.0
        if cutoff > 640.0:
            break
        current, body_error = squared_norm(cutoff)
        change = abs(current - previous)
        if change <= quad.tolerance * abs(current):
            value = prefactor * np.sqrt(current)
            error = prefactor * (change + body_error) / (2.0 * np.sqrt(current))
            logger.debug("sigma_H(%g) = %.8g at cutoff %g", H, value, cutoff)
            return QuadratureResult(float(value), float(error))
        previous = current
    raise QuadratureError(f"sigma_H({H}) did not converge in the outer truncation")


def const_b_mavg(H: float, q: int, x, quad: QuadratureSpec = DEFAULT_QUADRATURE,
                 domain=(0.0, np.inf)) -> float:
    """Limit scale b(H, q) of the quadratic functional of a Hermite moving average.

    b(H, q) = H(2H−1)/sqrt((H₀−½)(4H₀−3)) · ∬_{R+²} x(u)x(v)|u−v|^{(q−1)(2H₀−2)} du dv,
    with H₀ = 1 + (H−1)/q. For q = 1 the kernel exponent vanishes and H > 3/4
    is required.

    Raises:
        DomainError: If 4H₀ − 3 <= 0 or H is outside (1/2, 1).
        QuadratureError: If the double integral does not converge.
    """
    if not 0.5 < H < 1.0:
        raise DomainError(f"H must lie in (0.5, 1), got {H}")
    if q < 1:
        raise DomainError(f"q must be positive, got {q}")
    h0 = 1.0 + (H - 1.0) / q
    if 4.0 * h0 - 3.0 <= 0.0:
        raise DomainError(f"b(H, q) needs 4*H0 - 3 > 0, got H0={h0:.4f}")
    prefactor = H * (2.0 * H - 1.0) / np.sqrt((h0 - 0.5) * (4.0 * h0 - 3.0))
    integral = singular_double_integral(x, (q - 1) * (2.0 * h0 - 2.0), domain, quad)
    return float(prefactor * integral.value)
