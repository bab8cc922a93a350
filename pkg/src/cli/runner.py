"""Dispatch of a RunConfig to the library, with exit-code mapping."""

from __future__ import annotations

import logging
import time
from typing import NamedTuple

import numpy as np
import pandas as pd

from ..chaos_cumulants.kernel_matrix import random_kernel
from ..chaos_cumulants.rosenblatt_pair import rosenblatt_kernel_pair
from ..chaos_cumulants.trace import cumulant_traces
from ..gaussian_engine.rng_stream import derive_stream
from ..info_metrics.de_bruijn import de_bruijn_gap
from ..info_metrics.density_factory import DensityFactory, standardize
from ..info_metrics.density_model import DensityGrid
from ..info_metrics.divergences import entropy, fisher_information
from ..info_metrics.inequalities import inequality_suite
from ..info_metrics.kde import kde_model
from ..process_sim.hermite_paths import sample_fbm, sample_hermite_path
from ..process_sim.integrals import sample_moving_average, sample_vasicek
from ..process_sim.path_io import field_envelope, field_frame, path_envelope, path_frame, read_path_csv
from ..process_sim.rosenblatt_grid import sample_rosenblatt_grid
from ..process_sim.sample_types import LatticeConfig
from ..process_sim.sheets import sample_hermite_sheet
from ..process_sim.simulation_error import SimulationError
from ..special_constants.hermite_spec import HermiteSpec
from ..stats.conjecture import CONJECTURE_POINTS, CONJECTURE_VALUES, rosenblatt_cdf_probe
from ..stats.experiment_factory import ExperimentFactory
from ..stats.harness import NUMERICAL_ERRORS, run_replications, verify
from ..stats.variations import estimate_hurst_qv
from ..stats.vasicek import vasicek_estimators
from .cli_error import CliError
from .command_types import Command, ExitCode
from .output import emit, write_sidecar
from .run_config import RunConfig

logger = logging.getLogger(__name__)

SAMPLE_GRID = DensityGrid(epsabs=1e-10, epsrel=1e-8)
Z_95 = 1.96


class Outcome(NamedTuple):
    frame: pd.DataFrame | None
    content: dict
    code: ExitCode = ExitCode.SUCCESS


def _decay(u):
    return np.exp(-np.asarray(u, dtype=float))


def _simulate(config: RunConfig) -> Outcome:
    p = config.params
    stream = derive_stream(config.seed, 0)
    process, n, t_end = p["process"], p["n"], p["t_end"]
    lattice = LatticeConfig(p["lattice_n"] or 4 * n)
    meta = {"seed": config.seed, "process": process}
    if process == "sheet":
        spec = HermiteSpec(p["q"], (p["H"], p["H2"] or p["H"]))
        field = sample_hermite_sheet(stream, spec, (t_end, t_end), (n, n), lattice)
        return Outcome(field_frame(field), field_envelope(field, values=field.values, **meta))
    if process == "fbm":
        path = sample_fbm(stream, p["H"], t_end, n)
    elif process == "rosenblatt":
        path = sample_rosenblatt_grid(stream, p["H"], t_end, n, p["inner_m"] or max(n, 32))
    else:
        path = sample_hermite_path(stream, HermiteSpec.scalar(p["q"], p["H"]), t_end, n, lattice)
        if process == "moving-average":
            path = sample_moving_average(_decay, path)
        elif process == "vasicek":
            path = sample_vasicek(p["a"], p["b"], path)
        elif process == "ou":
            path = sample_vasicek(p["a"], 0.0, path)
    return Outcome(path_frame(path), path_envelope(path, t=path.times, value=path.values, **meta))


def _estimate(config: RunConfig) -> Outcome:
    p = config.params
    try:
        path = read_path_csv(p["input_path"], hurst=p["H"])
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot read {p['input_path']}: {exc}") from None
    except SimulationError as exc:
        raise CliError(f"{p['input_path']}: {exc.message}") from None
    if p["what"] == "hurst":
        values = {"hurst": estimate_hurst_qv(path, p["q"])}
    else:
        estimate = vasicek_estimators(path, p["H"])
        values = estimate._asdict()
    frame = pd.DataFrame({"statistic": list(values), "value": list(values.values())})
    return Outcome(frame, {"input": p["input_path"], "what": p["what"], **values})


def _replicated(config: RunConfig, name: str, overrides: dict) -> Outcome:
    experiment = ExperimentFactory.get_experiment(name)
    report = run_replications(config.seed, config.reps or experiment.replicates, experiment, config.threads,
                              overrides)
    return Outcome(report.to_frame(), report.to_dict())


def _qv(config: RunConfig) -> Outcome:
    p = config.params
    name = "qv-normalization" if p["d"] == 1 else "qv-normalization-sheet"
    return _replicated(config, name, {"q": p["q"], "H": p["H"], "N": p["N"], "lattice_factor": p["lattice_factor"]})


def _gt(config: RunConfig) -> Outcome:
    p = config.params
    return _replicated(config, "gt-variance", {"q": p["q"], "H": p["H"], "t_end": p["t_end"], "n": p["n"]})


def _cumulants(config: RunConfig) -> Outcome:
    p = config.params
    orders = list(range(2, p["p_max"] + 1))
    if p["kernel"] == "random":
        traces = cumulant_traces(random_kernel(derive_stream(config.seed, 0), m=p["m"]), p["p_max"])
        columns = {"order": orders, "kappa": [traces[k] for k in orders]}
    else:
        kf, kg = rosenblatt_kernel_pair(p["H"], p["s"], p["t"], p["alpha"], p["beta"], p["m"])
        f_traces, g_traces = cumulant_traces(kf, p["p_max"]), cumulant_traces(kg, p["p_max"])
        columns = {"order": orders, "kappa_f": [f_traces[k] for k in orders],
                   "kappa_g": [g_traces[k] for k in orders]}
    frame = pd.DataFrame(columns)
    content = {"kernel": p["kernel"], "seed": config.seed,
               "cumulants": frame.set_index("order").to_dict(orient="index")}
    return Outcome(frame, content)


def _bandwidth(text: str):
    if text == "silverman":
        return text
    try:
        return float(text)
    except ValueError:
        raise CliError(f"--bandwidth must be a number or 'silverman', got {text!r}") from None


def _info(config: RunConfig) -> Outcome:
    p = config.params
    if p["input_path"] is not None:
        try:
            samples = pd.read_csv(p["input_path"])["value"].to_numpy(dtype=float)
        except (OSError, KeyError, ValueError) as exc:
            raise CliError(f"cannot read samples from {p['input_path']}: {exc}") from None
        model, grid = kde_model(samples, _bandwidth(p["bandwidth"])), SAMPLE_GRID
    else:
        params = {"nu": p["nu"]} if p["density"] == "student-t" else {}
        model, grid = DensityFactory.get_density(p["density"], **params), DensityGrid()
    standardized = standardize(model)
    report = inequality_suite(standardized, grid)
    content = {"density": model.name, "entropy": entropy(model, grid),
               "fisher": fisher_information(model, grid), "standardized": report.to_dict()}
    if p["input_path"] is None and standardized.stein_applicable:
        lhs, rhs = de_bruijn_gap(standardized, grid)
        content["de_bruijn"] = {"lhs": lhs, "rhs": rhs}
    rows = {"entropy": content["entropy"], "fisher": content["fisher"], **report.quantities}
    frame = pd.DataFrame({"quantity": list(rows), "value": list(rows.values())})
    return Outcome(frame, content)


def _conjecture(config: RunConfig) -> Outcome:
    p = config.params
    probe = rosenblatt_cdf_probe(derive_stream(config.seed, 0), p["H"], CONJECTURE_POINTS, p["samples"],
                                 LatticeConfig(p["lattice_n"]))
    frame = pd.DataFrame({
        "point": probe.points,
        "probability": probe.probabilities,
        "std_error": probe.std_errors,
        "ci_low": probe.probabilities - Z_95 * probe.std_errors,
        "ci_high": probe.probabilities + Z_95 * probe.std_errors,
        "conjectured": CONJECTURE_VALUES,
    })
    content = {"H": p["H"], "samples": p["samples"], "seed": config.seed, "probe": frame.to_dict(orient="records")}
    return Outcome(frame, content)


def _verify(config: RunConfig) -> Outcome:
    p = config.params
    experiment = ExperimentFactory.get_experiment(p["experiment"])
    result = verify(config.seed, config.reps or experiment.replicates, experiment, config.threads, p["overrides"])
    content = {"checks": [check.to_dict() for check in result.checks], "passed": result.passed,
               "report": result.report.to_dict()}
    code = ExitCode.SUCCESS if result.passed else ExitCode.VERIFICATION_FAILED
    return Outcome(result.report.to_frame(), content, code)


HANDLERS = {
    Command.SIMULATE: _simulate,
    Command.ESTIMATE: _estimate,
    Command.QV: _qv,
    Command.GT: _gt,
    Command.CUMULANTS: _cumulants,
    Command.INFO: _info,
    Command.CONJECTURE: _conjecture,
    Command.VERIFY: _verify,
}


def run(config: RunConfig) -> int:
    """
    Execute one command.

    Args:
        config (RunConfig): Parsed configuration.

    Returns:
        int: 0 on success, 1 on numerical-domain errors, 2 on usage errors,
        3 when a verification experiment fails its checks.
    """
    start = time.perf_counter()
    try:
        outcome = HANDLERS[config.command](config)
        emit(config, outcome.frame, outcome.content)
        code = outcome.code
    except CliError as exc:
        logger.error("%s", exc.message)
        code = ExitCode.USAGE
    except NUMERICAL_ERRORS as exc:
        logger.error("%s: %s", type(exc).__name__, exc.message)
        code = ExitCode.NUMERICAL_ERROR
    write_sidecar(config, time.perf_counter() - start, code.value)
    return code.value
