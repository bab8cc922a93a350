"""Cumulants and samples of discretized double Wiener–Itô integrals.

For a symmetric kernel the discretized integral Δ(ξᵀaξ − tr a) has the law of
Σ_k λ_k (η_k² − 1), λ the eigenvalues of a·Δ and η i.i.d. standard normal, so
κ_p = 2^{p−1}(p−1)! Σ λ^p = 2^{p−1}(p−1)! tr((aΔ)^p).
"""

from __future__ import annotations

from math import factorial

import numpy as np
from scipy import linalg

from ..gaussian_engine.rng_stream import RngStream
from .cumulant_error import CumulantError
from .kernel_matrix import KernelMatrix

MAX_ORDER = 8
CHUNK = 1 << 22


def spectrum(K: KernelMatrix) -> np.ndarray:
    """Eigenvalues of a·delta."""
    return linalg.eigvalsh(K.a * K.delta)


def cumulant_trace(K: KernelMatrix, p: int) -> float:
    """
    p-th cumulant 2^{p−1}(p−1)! tr((a·delta)^p) of the discretized integral.

    Raises:
        CumulantError: If p is outside 2..8.
    """
    if not 2 <= p <= MAX_ORDER:
        raise CumulantError(f"cumulant order must lie in 2..{MAX_ORDER}, got {p}")
    return float(2 ** (p - 1) * factorial(p - 1) * np.sum(spectrum(K) ** p))


def cumulant_traces(K: KernelMatrix, p_max: int = 4) -> dict[int, float]:
    """κ_2..κ_{p_max} from a single eigen-decomposition."""
    if not 2 <= p_max <= MAX_ORDER:
        raise CumulantError(f"cumulant order must lie in 2..{MAX_ORDER}, got {p_max}")
    eigenvalues = spectrum(K)
    return {p: float(2 ** (p - 1) * factorial(p - 1) * np.sum(eigenvalues**p)) for p in range(2, p_max + 1)}


def sample_second_chaos(stream: RngStream, K: KernelMatrix, n: int) -> np.ndarray:
    """
    Draw n copies of Σ_{i≠j} a_ij ξ_i ξ_j delta + Σ_i a_ii (ξ_i² − 1) delta.

    Draws are taken in the eigenbasis of a·delta, chunk k from child stream k.
    """
    if n < 1:
        raise CumulantError(f"n must be positive, got {n}")
    eigenvalues = spectrum(K)
    rows = max(1, CHUNK // max(1, eigenvalues.size))
    draws = []
    for key, start in enumerate(range(0, n, rows)):
        normals = stream.child(key).generator().standard_normal((min(rows, n - start), eigenvalues.size))
        draws.append((normals**2 - 1.0) @ eigenvalues)
    return np.concatenate(draws)
