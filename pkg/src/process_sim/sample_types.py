"""Containers for simulated paths and fields."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from ..special_constants.hermite_spec import HermiteSpec
from .path_types import Normalization, ProcessKind
from .simulation_error import SimulationError

logger = logging.getLogger(__name__)


def _frozen(values) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class LatticeConfig:
    """Inner lattice of the non-central limit approximation.

    Attributes:
        lattice_n (int): Lattice points per unit of output time range, at least 8.
        normalization (Normalization): How the lattice sum is normalized.
    """

    lattice_n: int = 2048
    normalization: Normalization = Normalization.EXACT_FINITE_N

    def __post_init__(self):
        if self.lattice_n < 8:
            raise SimulationError(f"lattice_n must be at least 8, got {self.lattice_n}")
        if self.lattice_n < 64:
            logger.warning("lattice_n=%d is below 64, the lattice approximation will be coarse", self.lattice_n)


@dataclass(frozen=True, eq=False)
class SamplePath:
    """Values of a process on the uniform grid t_i = i·t_end/n, i = 0..n.

    ``spec`` is None for Gaussian drivers with H <= 1/2 and for observed data;
    ``hurst`` is then carried on its own. Moving averages keep their kernel so
    that centered functionals can be computed later.
    """

    t_end: float
    n: int
    values: np.ndarray
    spec: HermiteSpec | None = None
    hurst: float | None = None
    kind: ProcessKind = ProcessKind.HERMITE
    kernel: Callable | None = None
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.t_end <= 0.0 or self.n < 1:
            raise SimulationError(f"need t_end > 0 and n >= 1, got t_end={self.t_end}, n={self.n}")
        values = _frozen(self.values)
        if values.shape != (self.n + 1,):
            raise SimulationError(f"expected {self.n + 1} values, got shape {values.shape}")
        if values[0] != 0.0:
            raise SimulationError(f"paths start at 0, got {values[0]}")
        object.__setattr__(self, "values", values)
        if self.hurst is None and self.spec is not None:
            object.__setattr__(self, "hurst", self.spec.hurst)

    @property
    def step(self) -> float:
        return self.t_end / self.n

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_end, self.n + 1)

    @property
    def increments(self) -> np.ndarray:
        return np.diff(self.values)

    def value_at(self, t: float) -> float:
        """Value at a grid time; off-grid times are an error."""
        index = t / self.step
        if abs(index - round(index)) > 1e-9 or not 0 <= round(index) <= self.n:
            raise SimulationError(f"t={t} is not on the grid of step {self.step}")
        return float(self.values[int(round(index))])


@dataclass(frozen=True, eq=False)
class FieldSample:
    """Values of a d-parameter field on the product grid with dims[j] steps per axis.

    ``values`` has shape ``tuple(n + 1 for n in dims)`` and vanishes on every
    face where some coordinate is 0.
    """

    extents: tuple[float, ...]
    dims: tuple[int, ...]
    values: np.ndarray
    spec: HermiteSpec | None = None

    def __post_init__(self):
        extents = tuple(float(e) for e in self.extents)
        dims = tuple(int(n) for n in self.dims)
        if len(extents) != len(dims) or any(e <= 0.0 for e in extents) or any(n < 1 for n in dims):
            raise SimulationError(f"invalid field grid: extents={extents}, dims={dims}")
        values = _frozen(self.values)
        if values.shape != tuple(n + 1 for n in dims):
            raise SimulationError(f"expected values of shape {tuple(n + 1 for n in dims)}, got {values.shape}")
        for axis in range(len(dims)):
            if np.any(np.take(values, 0, axis=axis) != 0.0):
                raise SimulationError(f"field must vanish on the face where coordinate {axis} is 0")
        object.__setattr__(self, "extents", extents)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "values", values)

    @property
    def d(self) -> int:
        return len(self.dims)

    @property
    def steps(self) -> tuple[float, ...]:
        return tuple(e / n for e, n in zip(self.extents, self.dims))

    @classmethod
    def from_path(cls, path: SamplePath) -> FieldSample:
        """View a one-parameter path as a field with d = 1."""
        return cls((path.t_end,), (path.n,), path.values, path.spec)
