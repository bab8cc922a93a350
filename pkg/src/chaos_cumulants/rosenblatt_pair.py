"""Kernels of αR_t + βR_s under the two Rosenblatt representations."""

from __future__ import annotations

import logging

from ..process_sim.rosenblatt_grid import rosenblatt_f_design, rosenblatt_g_design
from ..special_constants.normalization import const_b_rosenblatt
from .cumulant_error import CumulantError
from .kernel_matrix import KernelMatrix

logger = logging.getLogger(__name__)


def rosenblatt_kernel_pair(H: float, s: float, t: float, alpha: float, beta: float,
                           m: int = 256) -> tuple[KernelMatrix, KernelMatrix]:
    """
    Discretize the kernels f_{s,t} and g_{s,t} of αR_t + βR_s.

    f_{s,t} comes from the time-interval representation (∂₁K^{H₀} factors,
    H₀ = (H + 1)/2, constant b_H) on m cells of [0, t]. g_{s,t} comes from the
    moving-average definition ((u − y)_+^{H/2−1} factors, constant c(H, 2)) on
    the same cells extended by geometric cells over the negative half-line.
    Both are exact cell averages, so their trace cumulants are comparable.

    Args:
        H (float): Hurst index in (1/2, 1).
        s (float): Earlier time, 0 < s <= t.
        t (float): Later time.
        alpha (float): Weight of R_t.
        beta (float): Weight of R_s.
        m (int): Cells on [0, t].

    Returns:
        tuple[KernelMatrix, KernelMatrix]: (Kf, Kg).
    """
    if not 0.0 < s <= t:
        raise CumulantError(f"need 0 < s <= t, got s={s}, t={t}")
    delta = t / m
    if abs(s / delta - round(s / delta)) > 1e-9:
        logger.warning("s=%g is not a cell edge of the %d-cell grid, the s-part is truncated mid-cell", s, m)
    f_design = rosenblatt_f_design(float(H), float(t), int(m))
    g_design = rosenblatt_g_design(float(H), float(t), int(m))
    b_h = const_b_rosenblatt(H)
    kf = b_h * (alpha * f_design.kernel_matrix(t, delta) + beta * f_design.kernel_matrix(s, delta))
    kg = alpha * g_design.kernel_matrix(t, delta) + beta * g_design.kernel_matrix(s, delta)
    return KernelMatrix(f_design.midpoints, delta, kf), KernelMatrix(g_design.midpoints, delta, kg)
