"""Wiener integrals, moving averages and Vasicek paths driven by a sampled path.

All stochastic sums are left-point Riemann–Stieltjes sums over the driver's grid.
"""

from __future__ import annotations

import numpy as np
from scipy import signal

from ..special_constants.quadrature import evaluate_on
from .path_types import ProcessKind
from .sample_types import SamplePath
from .simulation_error import SimulationError

FFT_THRESHOLD = 4096


def wiener_integral(f, path: SamplePath) -> float:
    """Σ_i f(t_i)(Z_{i+1} − Z_i) over the grid of ``path``."""
    return float(np.dot(evaluate_on(f, path.times[:-1]), path.increments))


def _stochastic_convolution(weights: np.ndarray, increments: np.ndarray) -> np.ndarray:
    """X_k = Σ_{i<k} weights[k−1−i] ΔZ_i, with X_0 = 0."""
    if increments.size > FFT_THRESHOLD:
        convolved = signal.fftconvolve(increments, weights)
    else:
        convolved = np.convolve(increments, weights)
    return np.concatenate([[0.0], convolved[:increments.size]])


def sample_moving_average(x, path: SamplePath) -> SamplePath:
    """
    Moving average X_t = ∫_0^t x(t − u) dZ_u on the driver's grid.

    Args:
        x (callable): Kernel, evaluable on (0, t_end].
        path (SamplePath): Driver.

    Returns:
        SamplePath: X, carrying the kernel for later centering.
    """
    lags = path.step * np.arange(1, path.n + 1)
    values = _stochastic_convolution(evaluate_on(x, lags), path.increments)
    return SamplePath(path.t_end, path.n, values, spec=path.spec, hurst=path.hurst,
                      kind=ProcessKind.MOVING_AVERAGE, kernel=x, params=dict(path.params))


def sample_vasicek(a: float, b: float, path: SamplePath) -> SamplePath:
    """
    Vasicek path X_t = b(1 − e^{−at}) + ∫_0^t e^{−a(t−u)} dZ_u by its explicit solution.

    The convolution S_k = Σ_{i<k} e^{−a(k−i)h} ΔZ_i obeys S_k = e^{−ah}(S_{k−1} + ΔZ_{k−1}),
    which is run as a first-order recursive filter.

    Raises:
        SimulationError: If a <= 0.
    """
    if a <= 0.0:
        raise SimulationError(f"a must be positive, got {a}")
    decay = np.exp(-a * path.step)
    forcing = np.concatenate([path.increments, [0.0]])
    convolution = signal.lfilter([0.0, decay], [1.0, -decay], forcing)
    values = b * (1.0 - np.exp(-a * path.times)) + convolution
    return SamplePath(path.t_end, path.n, values, spec=path.spec, hurst=path.hurst,
                      kind=ProcessKind.VASICEK, kernel=lambda u: np.exp(-a * np.asarray(u)),
                      params={**path.params, "a": float(a), "b": float(b)})
