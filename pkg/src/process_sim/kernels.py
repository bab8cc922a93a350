"""The Volterra kernel K^H of fractional Brownian motion and its time derivative.

For H > 1/2,

    K^H(t, s) = c_H s^{1/2−H} ∫_s^t (u − s)^{H−3/2} u^{H−1/2} du,   0 < s < t,

and B^H_t = ∫_0^t K^H(t, s) dB_s.
"""

from __future__ import annotations

from math import exp, sqrt

from scipy import integrate, special

from .simulation_error import SimulationError


def _check(H: float):
    if not 0.5 < H < 1.0:
        raise SimulationError(f"H must lie in (0.5, 1), got {H}")


def volterra_constant(H: float) -> float:
    """c_H = sqrt(H(2H − 1) / β(2 − 2H, H − 1/2)).

    This is the sign-consistent form: with it, ∫_0^{u∧v} ∂₁K^H(u, a) ∂₁K^H(v, a) da
    equals H(2H − 1)|u − v|^{2H−2}.
    """
    _check(H)
    return sqrt(H * (2.0 * H - 1.0) / exp(special.betaln(2.0 - 2.0 * H, H - 0.5)))


def partial1_KH(H: float, t: float, s: float) -> float:
    """∂₁K^H(t, s) = c_H (t/s)^{H−1/2} (t − s)^{H−3/2} for 0 < s < t.

    Raises:
        SimulationError: If s >= t or s <= 0.
    """
    if not 0.0 < s < t:
        raise SimulationError(f"partial1_KH needs 0 < s < t, got s={s}, t={t}")
    return volterra_constant(H) * (t / s) ** (H - 0.5) * (t - s) ** (H - 1.5)


def volterra_kernel_KH(H: float, t: float, s: float) -> float:
    """K^H(t, s) by algebraic-weight quadrature of the endpoint singularity."""
    if not 0.0 < s < t:
        raise SimulationError(f"volterra_kernel_KH needs 0 < s < t, got s={s}, t={t}")
    integral, _ = integrate.quad(lambda u: u ** (H - 0.5), s, t, weight="alg", wvar=(H - 1.5, 0.0))
    return volterra_constant(H) * s ** (0.5 - H) * integral
