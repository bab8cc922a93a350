"""CSV and JSON serialization of paths and fields."""

from __future__ import annotations

import numpy as np
import pandas as pd

from .path_types import ProcessKind
from .sample_types import FieldSample, SamplePath
from .simulation_error import SimulationError

FLOAT_FORMAT = "%.17g"


def path_frame(path: SamplePath) -> pd.DataFrame:
    return pd.DataFrame({"t": path.times, "value": path.values})


def write_path_csv(path: SamplePath, target) -> None:
    """Write a path as ``t,value`` rows."""
    path_frame(path).to_csv(target, index=False, float_format=FLOAT_FORMAT)


def read_path_csv(source, hurst: float | None = None) -> SamplePath:
    """
    Read a ``t,value`` CSV back into a SamplePath.

    Raises:
        SimulationError: If columns are missing, the grid is not uniform from 0,
            or the path does not start at 0.
    """
    frame = pd.read_csv(source)
    if list(frame.columns[:2]) != ["t", "value"]:
        raise SimulationError(f"expected columns t,value, got {list(frame.columns)}")
    times = frame["t"].to_numpy(dtype=float)
    if times.size < 2 or times[0] != 0.0:
        raise SimulationError("a path file needs at least two rows starting at t=0")
    n = times.size - 1
    if not np.allclose(times, np.linspace(0.0, times[-1], n + 1), rtol=1e-9, atol=1e-12):
        raise SimulationError("path times are not a uniform grid")
    return SamplePath(float(times[-1]), n, frame["value"].to_numpy(dtype=float), hurst=hurst,
                      kind=ProcessKind.OBSERVED)


def field_frame(field: FieldSample) -> pd.DataFrame:
    axes = [np.linspace(0.0, e, n + 1) for e, n in zip(field.extents, field.dims)]
    grids = np.meshgrid(*axes, indexing="ij")
    columns = {"t": grids[0].ravel()} if field.d == 1 else {f"t{j + 1}": g.ravel() for j, g in enumerate(grids)}
    columns["value"] = field.values.ravel()
    return pd.DataFrame(columns)


def write_field_csv(field: FieldSample, target) -> None:
    """Write a field as ``t1,t2,value`` rows in row-major order."""
    field_frame(field).to_csv(target, index=False, float_format=FLOAT_FORMAT)


def path_envelope(path: SamplePath, **metadata) -> dict:
    """JSON-ready description of a path (values excluded)."""
    envelope = {
        "kind": path.kind.value,
        "t_end": path.t_end,
        "n": path.n,
        "hurst": path.hurst,
        "q": path.spec.q if path.spec is not None else None,
        "params": dict(path.params),
    }
    envelope.update(metadata)
    return envelope


def field_envelope(field: FieldSample, **metadata) -> dict:
    envelope = {
        "extents": list(field.extents),
        "dims": list(field.dims),
        "q": field.spec.q if field.spec is not None else None,
        "H": list(field.spec.H) if field.spec is not None else None,
    }
    envelope.update(metadata)
    return envelope
