"""Generalized increments and renormalized quadratic variations of fields."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import factorial

import numpy as np

from ..process_sim.sample_types import FieldSample
from ..special_constants.hermite_spec import HermiteSpec
from ..special_constants.normalization import const_c1_sheet
from .stats_error import GridMismatchError, StatsError

GRID_TOLERANCE = 1e-9


@dataclass(frozen=True)
class IncrementCell:
    """The rectangle [s, t] with s < t componentwise."""

    s: tuple[float, ...]
    t: tuple[float, ...]

    def __post_init__(self):
        s = tuple(float(v) for v in np.atleast_1d(self.s))
        t = tuple(float(v) for v in np.atleast_1d(self.t))
        if len(s) != len(t) or any(a >= b for a, b in zip(s, t)):
            raise StatsError(f"cell corners must satisfy s < t componentwise, got s={s}, t={t}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)


def _grid_index(field: FieldSample, axis: int, coordinate: float) -> int:
    position = coordinate / field.steps[axis]
    index = int(round(position))
    if abs(position - index) > GRID_TOLERANCE or not 0 <= index <= field.dims[axis]:
        raise GridMismatchError(f"coordinate {coordinate} is not on axis {axis} of the field grid")
    return index


def generalized_increment(field: FieldSample, cell: IncrementCell) -> float:
    """
    Alternating corner sum Σ_{r ∈ {0,1}^d} (−1)^{d − Σr} Z(s + r(t − s)).

    Raises:
        GridMismatchError: If a corner is off the field grid or the dimensions differ.
    """
    if len(cell.s) != field.d:
        raise GridMismatchError(f"cell has {len(cell.s)} coordinates, field has {field.d}")
    lower = [_grid_index(field, axis, c) for axis, c in enumerate(cell.s)]
    upper = [_grid_index(field, axis, c) for axis, c in enumerate(cell.t)]
    total = 0.0
    for corner in product((0, 1), repeat=field.d):
        index = tuple(upper[j] if r else lower[j] for j, r in enumerate(corner))
        total += (-1) ** (field.d - sum(corner)) * field.values[index]
    return float(total)


def lattice_increments(field: FieldSample, N) -> np.ndarray:
    """Generalized increments of every cell of the N-lattice, as a d-dim array.

    Raises:
        GridMismatchError: If the field grid does not refine the N-lattice.
    """
    N = tuple(int(v) for v in np.broadcast_to(np.atleast_1d(N), (field.d,)))
    if any(n < 1 or dim % n for n, dim in zip(N, field.dims)):
        raise GridMismatchError(f"field grid {field.dims} does not refine the lattice {N}")
    coarse = field.values[tuple(slice(None, None, dim // n) for n, dim in zip(N, field.dims))]
    for axis in range(field.d):
        coarse = np.diff(coarse, axis=axis)
    return coarse


def quadratic_variation(field: FieldSample, spec: HermiteSpec, N) -> float:
    """
    Renormalized quadratic variation V_N = (1/∏N) Σ [(ΔZ)²/v − 1].

    v = ∏_j (extent_j/N_j)^{2H_j} is the exact variance of one lattice
    increment; for unit extents this is the usual ∏N^{2H} renormalization.
    """
    increments = lattice_increments(field, N)
    hurst = spec.axes(field.d)
    cell_variance = np.prod([(e / n) ** (2.0 * h) for e, n, h in zip(field.extents, increments.shape, hurst)])
    return float(np.mean(increments**2 / cell_variance - 1.0))


def qv_limit_statistic(field: FieldSample, spec: HermiteSpec, N) -> float:
    """
    c_{1,H}^{−1/2} ∏N^{(2−2H)/q} (q!q)^{−1} V_N, whose second moment tends to 1.

    Raises:
        StatsError: If q < 2.
        DomainError: Propagated from const_c1_sheet outside its region.
    """
    if spec.q < 2:
        raise StatsError("the Rosenblatt-limit normalization needs q >= 2")
    counts = np.broadcast_to(np.atleast_1d(N), (field.d,)).astype(float)
    rate = np.prod(counts ** ((2.0 - 2.0 * spec.axes(field.d)) / spec.q))
    scale = rate / (np.sqrt(const_c1_sheet(spec, field.d)) * factorial(spec.q) * spec.q)
    return float(scale * quadratic_variation(field, spec, N))
