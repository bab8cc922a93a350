"""Probabilists' Hermite polynomials, Hermite coefficients and rank."""

from __future__ import annotations

import logging
from math import factorial, sqrt, pi

import numpy as np
from numpy.polynomial import hermite_e

from .constants_error import ConstantsError, DomainError, RankUndeterminedError

logger = logging.getLogger(__name__)

DEFAULT_NODES = 64
RANK_TOLERANCE = 1e-8


def hermite_poly(k: int, x):
    """Evaluate He_k, the Hermite polynomial with He_{k+1} = x He_k − k He_{k−1}.

    Args:
        k (int): Degree, nonnegative.
        x (float or array-like): Evaluation point(s).

    Returns:
        float or numpy.ndarray: He_k(x).
    """
    if k < 0 or int(k) != k:
        raise DomainError(f"degree must be a nonnegative integer, got {k}")
    coefficients = np.zeros(int(k) + 1)
    coefficients[-1] = 1.0
    value = hermite_e.hermeval(np.asarray(x, dtype=float), coefficients)
    return float(value) if np.ndim(value) == 0 else value


def _evaluate(g, nodes: np.ndarray) -> np.ndarray:
    try:
        values = np.asarray(g(nodes), dtype=float)
        if values.shape != nodes.shape:
            raise ValueError
    except (TypeError, ValueError):
        values = np.array([float(g(x)) for x in nodes])
    return values


def hermite_coefficients(g, kmax: int, nodes: int = DEFAULT_NODES) -> np.ndarray:
    """Coefficients c_k = E[g(N) He_k(N)] / k! for k = 1..kmax.

    The expectation is a Gauss–Hermite sum against the standard normal weight.

    Args:
        g (callable): Scalar function; vectorized callables are used as is.
        kmax (int): Highest coefficient index.
        nodes (int): Quadrature nodes, at least 2·kmax.

    Returns:
        numpy.ndarray: c_1..c_kmax.

    Raises:
        ConstantsError: If nodes < 2·kmax or g is not finite at some node.
    """
    if kmax < 1:
        raise DomainError(f"kmax must be positive, got {kmax}")
    if nodes < 2 * kmax:
        raise ConstantsError(f"need at least {2 * kmax} nodes for kmax={kmax}, got {nodes}")
    points, weights = hermite_e.hermegauss(nodes)
    values = _evaluate(g, points)
    if not np.all(np.isfinite(values)):
        raise ConstantsError("g is not finite at every Gauss-Hermite node")
    basis = hermite_e.hermevander(points, kmax)
    norms = np.array([factorial(k) for k in range(kmax + 1)], dtype=float)
    coefficients = (weights * values) @ basis / (sqrt(2.0 * pi) * norms)
    return coefficients[1:]


def hermite_rank(g, kmax: int = 8, tol: float = RANK_TOLERANCE, nodes: int = DEFAULT_NODES) -> int:
    """Smallest k <= kmax whose Hermite coefficient exceeds ``tol`` in absolute value.

    Raises:
        RankUndeterminedError: If no coefficient up to kmax exceeds tol.
    """
    coefficients = hermite_coefficients(g, kmax, nodes)
    nonzero = np.flatnonzero(np.abs(coefficients) > tol)
    if nonzero.size == 0:
        raise RankUndeterminedError(f"all Hermite coefficients up to {kmax} are below {tol:g}")
    logger.debug("hermite coefficients %s", coefficients)
    return int(nonzero[0]) + 1
