"""
Closed-form normalization constants of Hermite processes, sheets and estimators.

Gamma and beta functions are evaluated through their logarithms.
"""

from __future__ import annotations

from math import exp, factorial, lgamma, log, sqrt
from typing import NamedTuple

import numpy as np
from scipy import special

from .constants_error import DomainError
from .hermite_spec import HermiteSpec
from .quadrature import DEFAULT_QUADRATURE, QuadratureSpec, const_sigma_H


def _check_open_half(H):
    if not 0.5 < H < 1.0:
        raise DomainError(f"H must lie in (0.5, 1), got {H}")


def const_c_hermite(spec: HermiteSpec) -> float:
    """
    Constant c(H, q) making Var(Z_1) = 1 in the multiple-integral definition.

    c(H, q)² · q! · β(H₀ − ½, 2 − 2H₀)^q = H(2H − 1).

    Args:
        spec (HermiteSpec): Scalar-H spec.

    Returns:
        float: c(H, q) > 0.
    """
    H, q = spec.hurst, spec.q
    h0 = spec.h0[0]
    log_square = log(H * (2.0 * H - 1.0)) - lgamma(q + 1.0) - q * special.betaln(h0 - 0.5, 2.0 - 2.0 * h0)
    return exp(0.5 * log_square)


def const_b_rosenblatt(H: float) -> float:
    """b_H = (1/(H+1)) sqrt(2(2H−1)/H) of the time-interval Rosenblatt representation."""
    _check_open_half(H)
    return sqrt(2.0 * (2.0 * H - 1.0) / H) / (H + 1.0)


def const_B_Hq(H: float, q: int) -> float:
    """
    Scale B_{H,q} of the Rosenblatt limit of the drift-estimator fluctuations.

    Raises:
        DomainError: If 4H₀ − 3 <= 0 with H₀ = 1 − (1 − H)/q.
    """
    _check_open_half(H)
    if q < 1:
        raise DomainError(f"q must be positive, got {q}")
    h0 = 1.0 - (1.0 - H) / q
    if 4.0 * h0 - 3.0 <= 0.0:
        raise DomainError(f"B_(H,q) needs 4*H0 - 3 > 0, got H0={h0:.4f} for H={H}, q={q}")
    shift = 2.0 * H + 2.0 / q * (1.0 - H)
    prefactor = H * (2.0 * H - 1.0) / sqrt((h0 - 0.5) * (4.0 * h0 - 3.0))
    return prefactor * exp(lgamma(shift)) / (shift - 1.0)


def const_b_sheet(spec: HermiteSpec, d: int | None = None) -> float:
    """
    Constant b_{q,H} making E[Z(1)²] = 1 for the Hermite sheet.

    b = (√q!)^{d−1} ∏_j sqrt(H_j(2H_j − 1)) / sqrt(q!(H₀_j(2H₀_j − 1))^q),
    with H₀_j = 1 + (H_j − 1)/q.
    """
    hurst = spec.axes(d)
    q = spec.q
    h0 = 1.0 + (hurst - 1.0) / q
    log_factor = 0.5 * (len(hurst) - 1) * log(factorial(q))
    log_factor += 0.5 * np.sum(np.log(hurst * (2.0 * hurst - 1.0)))
    log_factor -= 0.5 * np.sum(log(factorial(q)) + q * np.log(h0 * (2.0 * h0 - 1.0)))
    return float(np.exp(log_factor))


def const_c1_sheet(spec: HermiteSpec, d: int | None = None) -> float:
    """
    Variance constant c_{1,H} of the renormalized quadratic variation.

    c_{1,H} = 2!·2^d·b⁴ ∏_j (h(2h−1))^{2q} / [(4h−3)(4h−2)((2h−2)(q−1)+1)²((h−1)(q−1)+1)²]
    with h = H₀_j per axis and b = const_b_sheet(spec, d).

    Raises:
        DomainError: If some 4H₀_j − 3 <= 0 (only possible for q = 1, H_j <= 3/4).
    """
    hurst = spec.axes(d)
    q = spec.q
    h = 1.0 + (hurst - 1.0) / q
    if np.any(4.0 * h - 3.0 <= 0.0):
        raise DomainError(f"c_1 needs 4*H0 - 3 > 0 on every axis, got H0={tuple(np.round(h, 6))}")
    numerator = (h * (2.0 * h - 1.0)) ** (2 * q)
    denominator = ((4.0 * h - 3.0) * (4.0 * h - 2.0)
                   * ((2.0 * h - 2.0) * (q - 1) + 1.0) ** 2
                   * ((h - 1.0) * (q - 1) + 1.0) ** 2)
    b = const_b_sheet(spec, d)
    return float(2.0 * 2.0 ** len(hurst) * b**4 * np.prod(numerator / denominator))


def qv_fluctuation_exponent(q: int, H: float) -> float:
    """Exponent r with V_N of order N^{−r} for a one-parameter Hermite process."""
    _check_open_half(H)
    if q == 1:
        return 0.5 if H <= 0.75 else 2.0 - 2.0 * H
    return (2.0 - 2.0 * H) / q


def hermite_ou_stationary_variance(a: float, H: float) -> float:
    """Stationary variance a^{−2H} H Γ(2H) of the Hermite Ornstein–Uhlenbeck process."""
    _check_open_half(H)
    if a <= 0.0:
        raise DomainError(f"a must be positive, got {a}")
    return a ** (-2.0 * H) * H * exp(lgamma(2.0 * H))


class FluctuationRates(NamedTuple):
    """Rate exponents of the drift estimators: error ~ T^{-exponent}, times (log T)^{log_power}."""
    a_exponent: float
    b_exponent: float
    log_power: float


class LimitScale(NamedTuple):
    a_scale: float
    b_scale: float


def vasicek_fluctuation_rates(q: int, H: float) -> FluctuationRates:
    """
    Fluctuation regime of (â_T, b̂_T) for a Vasicek model driven by Z^{q,H}.

    Returns:
        FluctuationRates: √T for q = 1, H < 3/4; √(T/log T) at H = 3/4;
        T^{2(1−H)} for q = 1, H > 3/4; T^{(2/q)(1−H)} for q >= 2. b̂ always
        fluctuates at T^{1−H}.
    """
    _check_open_half(H)
    if q < 1:
        raise DomainError(f"q must be positive, got {q}")
    if q == 1 and H < 0.75:
        return FluctuationRates(0.5, 1.0 - H, 0.0)
    if q == 1 and H == 0.75:
        return FluctuationRates(0.5, 0.25, 0.5)
    return FluctuationRates(2.0 / q * (1.0 - H), 1.0 - H, 0.0)


def vasicek_limit_scale(a: float, H: float, q: int,
                        quad: QuadratureSpec = DEFAULT_QUADRATURE) -> LimitScale:
    """
    Scales of the limits of the rescaled estimator errors.

    The b̂ limit is Z_1/a. The â limit is a centered Gaussian with standard
    deviation a^{1+4H}σ_H/(2H²Γ(2H)) for q = 1, H < 3/4, (3/4)√(a/π) at
    H = 3/4, and otherwise a^{1−(2/q)(1−H)} B_{H,q}/(2H²Γ(2H)) times a
    standard Rosenblatt variable.
    """
    if a <= 0.0:
        raise DomainError(f"a must be positive, got {a}")
    rates = vasicek_fluctuation_rates(q, H)
    denominator = 2.0 * H * H * exp(lgamma(2.0 * H))
    if q == 1 and H < 0.75:
        a_scale = a ** (1.0 + 4.0 * H) * const_sigma_H(H, quad).value / denominator
    elif rates.log_power:
        a_scale = 0.75 * sqrt(a / np.pi)
    else:
        a_scale = a ** (1.0 - 2.0 / q * (1.0 - H)) * const_B_Hq(H, q) / denominator
    return LimitScale(float(a_scale), 1.0 / a)
