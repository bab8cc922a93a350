"""Writing command results and their metadata sidecars."""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import numpy as np
import pandas as pd

from .command_types import OutputFormat
from .run_config import RunConfig
from .version import __version__

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def jsonable(value):
    """Plain-JSON view of nested results; non-finite floats become strings."""
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [jsonable(item) for item in value]
    if isinstance(value, (np.integer, bool, int)) or value is None or isinstance(value, str):
        return value.item() if isinstance(value, np.integer) else value
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if np.isfinite(value) else str(value)
    return str(value)


def dumps(content) -> str:
    return json.dumps(jsonable(content), sort_keys=True, indent=2)


def emit(config: RunConfig, frame: pd.DataFrame | None, content: dict | None) -> None:
    """Write the result in the configured format to the output file or stdout."""
    if config.format is OutputFormat.CSV and frame is not None:
        text = frame.to_csv(index=False, float_format=FLOAT_FORMAT)
    else:
        text = dumps(content if content is not None else {}) + "\n"
    if config.output_path is None:
        sys.stdout.write(text)
        return
    Path(config.output_path).write_text(text)
    logger.info("wrote %s", config.output_path)


def sidecar_path(output_path: str) -> Path:
    return Path(f"{output_path}.meta.json")


def write_sidecar(config: RunConfig, wall_time: float, exit_code: int) -> None:
    """Metadata next to the output: enough to re-run the producing command."""
    if config.output_path is None:
        return
    metadata = {
        "command": config.command.value,
        "exit_code": exit_code,
        "format": config.format.value,
        "params": config.params,
        "reps": config.reps,
        "seed": config.seed,
        "threads": config.threads,
        "version": __version__,
        "wall_time": wall_time,
    }
    sidecar_path(config.output_path).write_text(dumps(metadata) + "\n")
