"""The normalized quadratic functional G_T of a Hermite moving average."""

from __future__ import annotations

import numpy as np
from scipy import integrate, signal

from ..gaussian_engine.fgn import rho_fgn
from ..process_sim.sample_types import SamplePath
from ..special_constants.hermite_spec import HermiteSpec
from ..special_constants.quadrature import evaluate_on
from .stats_error import GridMismatchError, StatsError


def moving_average_second_moment(X: SamplePath, H: float) -> np.ndarray:
    """
    E[X_k²] for the discrete moving average X_k = Σ_{i<k} x((k−i)h) ΔZ_i.

    Hermite increments have the fBm covariance h^{2H}ρ_H(|i − j|), so E[X_k²]
    is the Toeplitz quadratic form of the first k kernel weights
    w_j = x((j+1)h). The forms for all k follow from one convolution:
    Q_k − Q_{k−1} = h^{2H}(2 w_{k−1} (w * ρ)_{k−1} − w_{k−1}² ρ(0)).

    Returns:
        numpy.ndarray: E[X_k²] for k = 0..n.
    """
    if X.kernel is None:
        raise StatsError("the path carries no moving-average kernel")
    weights = evaluate_on(X.kernel, X.step * np.arange(1, X.n + 1))
    correlations = np.atleast_1d(rho_fgn(H, np.arange(X.n)))
    convolved = signal.fftconvolve(weights, correlations)[:X.n]
    steps = 2.0 * weights * convolved - weights**2
    return X.step ** (2.0 * H) * np.concatenate([[0.0], np.cumsum(steps)])


def quadratic_functional_GT(X: SamplePath, spec: HermiteSpec, t: float = 1.0) -> float:
    """
    G_T(t) = T^{−(2H₀−1)} ∫_0^{Tt} (X_s² − E[X_s²]) ds with T = X.t_end.

    The centering is the exact second moment of the discretized moving
    average; the time integral is a trapezoid sum over the grid.

    Args:
        X (SamplePath): Output of sample_moving_average.
        spec (HermiteSpec): Spec of the driving Hermite process.
        t (float): Fraction of the horizon in (0, 1]; Tt must be a grid time.

    Returns:
        float: G_T(t).

    Raises:
        StatsError: If X has no kernel metadata or t is outside (0, 1].
    """
    if not 0.0 < t <= 1.0:
        raise StatsError(f"t must lie in (0, 1], got {t}")
    steps = t * X.n
    if abs(steps - round(steps)) > 1e-9:
        raise GridMismatchError(f"T*t = {t * X.t_end} is not a grid time")
    k = int(round(steps))
    centered = X.values[:k + 1] ** 2 - moving_average_second_moment(X, spec.hurst)[:k + 1]
    integral = integrate.trapezoid(centered, dx=X.step)
    return float(integral / X.t_end ** (2.0 * spec.h0[0] - 1.0))
