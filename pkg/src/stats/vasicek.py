"""Moment estimators of the Hermite-driven Vasicek model."""

from __future__ import annotations

import logging
from math import exp, lgamma
from typing import NamedTuple

import numpy as np
from scipy import integrate

from ..process_sim.sample_types import SamplePath
from .stats_error import EstimationError

logger = logging.getLogger(__name__)


class VasicekEstimate(NamedTuple):
    a_hat: float
    b_hat: float
    alpha: float


def vasicek_estimators(X: SamplePath, H: float) -> VasicekEstimate:
    """
    Moment estimators of the mean-reversion speed and the long-run mean.

    b̂_T = (1/T)∫X dt, α_T = (1/T)∫X² dt − b̂_T² and â_T = (α_T/(HΓ(2H)))^{−1/(2H)},
    with trapezoid time integrals.

    Args:
        X (SamplePath): Observed path on [0, T].
        H (float): Hurst index of the driver.

    Returns:
        VasicekEstimate: (â, b̂, α_T).

    Raises:
        EstimationError: If α_T is not positive (up to rounding).
    """
    T = X.t_end
    mean = integrate.trapezoid(X.values, dx=X.step) / T
    second = integrate.trapezoid(X.values**2, dx=X.step) / T
    alpha = second - mean**2
    if alpha <= 1e-12 * max(second, np.finfo(float).tiny):
        raise EstimationError(f"alpha_T = {alpha:.3e} is not positive, the drift estimator is undefined")
    a_hat = (alpha / (H * exp(lgamma(2.0 * H)))) ** (-1.0 / (2.0 * H))
    logger.debug("vasicek estimates on T=%g: a=%.5f, b=%.5f", T, a_hat, mean)
    return VasicekEstimate(float(a_hat), float(mean), float(alpha))


def restrict(X: SamplePath, t_end: float) -> SamplePath:
    """The prefix of X on [0, t_end], t_end a grid time."""
    steps = t_end / X.step
    if abs(steps - round(steps)) > 1e-9 or not 1 <= round(steps) <= X.n:
        raise EstimationError(f"t_end={t_end} is not a grid time of the path")
    k = int(round(steps))
    return SamplePath(float(t_end), k, X.values[:k + 1], spec=X.spec, hurst=X.hurst, kind=X.kind,
                      kernel=X.kernel, params=dict(X.params))
