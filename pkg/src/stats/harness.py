"""Replicated Monte Carlo runs.

Replicate r of an experiment always draws from derive_stream(master_seed, r),
and results are keyed by replicate index, so a report does not depend on the
number of workers or on the order in which replicates finish.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np
from joblib import Parallel, delayed

from ..chaos_cumulants.cumulant_error import CumulantError
from ..gaussian_engine.engine_error import GaussianEngineError
from ..gaussian_engine.rng_stream import RngStream, derive_stream
from ..info_metrics.metrics_error import MetricsError
from ..process_sim.simulation_error import SimulationError
from ..special_constants.constants_error import ConstantsError
from .report import CheckResult, McReport, VerificationReport
from .stats_error import StatsError

logger = logging.getLogger(__name__)

NUMERICAL_ERRORS = (GaussianEngineError, ConstantsError, SimulationError, StatsError, CumulantError, MetricsError)


@dataclass(frozen=True)
class Experiment:
    """
    A named statistic configuration.

    Attributes:
        name (str): Registry key.
        description (str): One-line summary.
        replicate (callable): (stream, params) -> {statistic name: value}.
        primary (str): Statistic reported at the top level.
        defaults (Mapping): Default parameters, overridable per run.
        check (callable, optional): (report, params) -> list of CheckResult.
        replicates (int): Replicate count used when none is given.
    """

    name: str
    description: str
    replicate: Callable[[RngStream, Mapping], Mapping[str, float]]
    primary: str
    defaults: Mapping[str, object] = field(default_factory=dict)
    check: Callable[[McReport, Mapping], list[CheckResult]] | None = None
    replicates: int = 100

    def parameters(self, overrides: Mapping | None = None) -> dict:
        params = dict(self.defaults)
        params.update({key: value for key, value in (overrides or {}).items() if value is not None})
        return params


def _run_one(experiment: Experiment, master_seed: int, index: int, params: Mapping):
    try:
        return index, dict(experiment.replicate(derive_stream(master_seed, index), params)), None
    except NUMERICAL_ERRORS as exc:
        return index, None, f"{type(exc).__name__}: {exc.message}"


def run_replications(master_seed: int, n_reps: int, experiment: Experiment, n_jobs: int = 1,
                     params: Mapping | None = None) -> McReport:
    """
    Run ``n_reps`` replicates of ``experiment`` and summarize them.

    Args:
        master_seed (int): Experiment seed.
        n_reps (int): Number of replicates, at least 1.
        experiment (Experiment): Registered experiment.
        n_jobs (int): joblib workers; results do not depend on it.
        params (Mapping, optional): Parameter overrides.

    Returns:
        McReport: Report of the primary statistic, the others as companions.

    Raises:
        StatsError: If n_reps < 1 or every replicate failed.
    """
    if n_reps < 1:
        raise StatsError(f"n_reps must be at least 1, got {n_reps}")
    params = experiment.parameters(params)
    logger.info("running %s: %d replicates on %d workers", experiment.name, n_reps, n_jobs)
    if n_jobs == 1:
        outcomes = [_run_one(experiment, master_seed, index, params) for index in range(n_reps)]
    else:
        outcomes = Parallel(n_jobs=n_jobs)(
            delayed(_run_one)(experiment, master_seed, index, params) for index in range(n_reps))
    outcomes.sort(key=lambda outcome: outcome[0])
    failures = tuple((index, message) for index, _, message in outcomes if message is not None)
    for index, message in failures:
        logger.warning("%s replicate %d failed: %s", experiment.name, index, message)
    successes = [(index, values) for index, values, message in outcomes if message is None]
    if not successes:
        raise StatsError(f"every replicate of {experiment.name} failed")
    indices = np.array([index for index, _ in successes])
    names = list(successes[0][1])

    def column(name):
        return np.array([values[name] for _, values in successes], dtype=float)

    companions = {name: McReport(experiment.name, name, master_seed, column(name), indices, failures)
                  for name in names if name != experiment.primary}
    return McReport(experiment.name, experiment.primary, master_seed, column(experiment.primary), indices,
                    failures, companions)


def verify(master_seed: int, n_reps: int, experiment: Experiment, n_jobs: int = 1,
           params: Mapping | None = None) -> VerificationReport:
    """Run the experiment and evaluate its acceptance checks."""
    params = experiment.parameters(params)
    report = run_replications(master_seed, n_reps, experiment, n_jobs, params)
    checks = tuple(experiment.check(report, params)) if experiment.check else ()
    for check in checks:
        logger.info("%s: %s value=%.6g target=%.6g tol=%.3g", "pass" if check.passed else "FAIL",
                    check.name, check.value, check.target, check.tolerance)
    return VerificationReport(report, checks)
