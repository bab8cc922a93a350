"""
Registry of the Monte Carlo experiments behind ``hermitelab.py verify``.

Each experiment is a replicate function (stream, params) -> {statistic: value}
plus a check that turns the summarized report into acceptance comparisons.
Replicate functions live at module level so joblib workers can import them.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Mapping

import numpy as np
from scipy import stats

from ..chaos_cumulants.kernel_matrix import KernelMatrix, random_kernel
from ..chaos_cumulants.rosenblatt_pair import rosenblatt_kernel_pair
from ..chaos_cumulants.trace import cumulant_traces, sample_second_chaos
from ..gaussian_engine.rng_stream import RngStream, derive_stream
from ..info_metrics.de_bruijn import de_bruijn_gap
from ..info_metrics.density_factory import DensityFactory, standardize
from ..info_metrics.density_model import ProductDensityModel
from ..info_metrics.divergences import fisher_information
from ..info_metrics.inequalities import ORDERING_SLACK, InequalityReport, inequality_suite, multivariate_trace_bound
from ..process_sim.hermite_paths import lattice_scale, sample_hermite_marginal, sample_hermite_path
from ..process_sim.integrals import sample_moving_average, sample_vasicek
from ..process_sim.sample_types import FieldSample, LatticeConfig
from ..process_sim.sheets import sample_hermite_sheet
from ..special_constants.hermite_spec import HermiteSpec
from ..special_constants.normalization import hermite_ou_stationary_variance
from ..special_constants.quadrature import const_b_mavg
from .conjecture import CONJECTURE_POINTS, CONJECTURE_VALUES, rosenblatt_cdf_probe
from .functionals import quadratic_functional_GT
from .harness import Experiment
from .increments import qv_limit_statistic
from .report import CheckResult, McReport
from .stats_error import StatsError
from .vasicek import restrict, vasicek_estimators

logger = logging.getLogger(__name__)

KERNEL_SEED = 20240101
COVARIANCE_POINTS = {"z1z1": (1.0, 1.0), "z1z05": (1.0, 0.5), "z05z025": (0.5, 0.25)}
RATE_HORIZONS = (50.0, 100.0, 200.0, 400.0)


def statistic(report: McReport, name: str) -> McReport:
    """The report of ``name``, whether primary or companion."""
    if name == report.statistic:
        return report
    if name not in report.companions:
        raise StatsError(f"report of {report.experiment} has no statistic '{name}'")
    return report.companions[name]


def fbm_covariance(H: float, t: float, s: float) -> float:
    return 0.5 * (t ** (2 * H) + s ** (2 * H) - abs(t - s) ** (2 * H))


def _spec(params: Mapping) -> HermiteSpec:
    return HermiteSpec.scalar(int(params["q"]), float(params["H"]))


def _driver(stream: RngStream, params: Mapping):
    n = int(params["n"])
    cfg = LatticeConfig(n * int(params["lattice_factor"]))
    return sample_hermite_path(stream, _spec(params), float(params["t_end"]), n, cfg)


def _covariance_replicate(stream: RngStream, params: Mapping) -> dict:
    path = sample_hermite_path(stream, _spec(params), 1.0, 4, LatticeConfig(int(params["lattice_n"])))
    return {name: path.value_at(t) * path.value_at(s) for name, (t, s) in COVARIANCE_POINTS.items()}


def _covariance_check(report: McReport, params: Mapping) -> list[CheckResult]:
    checks = []
    for name, (t, s) in COVARIANCE_POINTS.items():
        summary = statistic(report, name)
        checks.append(CheckResult.within(name, summary.mean, fbm_covariance(float(params["H"]), t, s),
                                         3.0 * summary.std_error))
    return checks


def _normalization_replicate(stream: RngStream, params: Mapping) -> dict:
    spec = _spec(params)
    N = int(params["lattice_n"])
    z1 = float(sample_hermite_marginal(stream, spec, LatticeConfig(N), 1)[0])
    return {"z1_squared": z1 * z1, "lattice_sum_squared": (z1 * lattice_scale(spec, N)) ** 2}


def _normalization_check(report: McReport, params: Mapping) -> list[CheckResult]:
    spec = _spec(params)
    sums = statistic(report, "lattice_sum_squared")
    return [
        CheckResult.within("z1_squared", report.mean, 1.0, 3.0 * report.std_error),
        CheckResult.within("lattice_sum_squared", sums.mean, lattice_scale(spec, int(params["lattice_n"])) ** 2,
                           3.0 * sums.std_error),
    ]


def _conjecture_replicate(stream: RngStream, params: Mapping) -> dict:
    probe = rosenblatt_cdf_probe(stream, float(params["H"]), CONJECTURE_POINTS, int(params["n_samples"]),
                                 LatticeConfig(int(params["lattice_n"])))
    return {"below_low": float(probe.probabilities[0]), "below_high": float(probe.probabilities[1])}


def _conjecture_check(report: McReport, params: Mapping) -> list[CheckResult]:
    tolerance = float(params["tolerance"])
    return [CheckResult.within(name, statistic(report, name).mean, value, tolerance)
            for name, value in zip(("below_low", "below_high"), CONJECTURE_VALUES)]


@lru_cache(maxsize=8)
def _kernels(kind: str, H: float, s: float, t: float, alpha: float, beta: float, m: int):
    if kind == "random":
        return (random_kernel(derive_stream(KERNEL_SEED, 0), m=8),)
    if kind == "rosenblatt":
        return rosenblatt_kernel_pair(H, s, t, alpha, beta, m)
    raise StatsError(f"unknown kernel '{kind}', expected 'random' or 'rosenblatt'")


def _experiment_kernels(params: Mapping) -> tuple[KernelMatrix, ...]:
    return _kernels(str(params["kernel"]), float(params["H"]), float(params["s"]), float(params["t"]),
                    float(params["alpha"]), float(params["beta"]), int(params["m"]))


def _cumulant_replicate(stream: RngStream, params: Mapping) -> dict:
    draws = sample_second_chaos(stream, _experiment_kernels(params)[0], int(params["draws"]))
    return {f"k{p}": float(stats.kstat(draws, p)) for p in (2, 3, 4)}


def _cumulant_check(report: McReport, params: Mapping) -> list[CheckResult]:
    kernels = _experiment_kernels(params)
    traces = cumulant_traces(kernels[0], 4)
    checks = []
    for p in (2, 3, 4):
        summary = statistic(report, f"k{p}")
        checks.append(CheckResult.within(f"k{p}", summary.mean, traces[p], 5.0 * summary.std_error))
    if len(kernels) == 2:
        other = cumulant_traces(kernels[1], 4)
        for p in (2, 3, 4):
            checks.append(CheckResult.within(f"k{p}-pair", other[p] / traces[p], 1.0, 0.05))
    return checks


def _vasicek_replicate(stream: RngStream, params: Mapping) -> dict:
    X = sample_vasicek(float(params["a"]), float(params["b"]), _driver(stream, params))
    estimate = vasicek_estimators(X, float(params["H"]))
    return {"a_hat": estimate.a_hat, "b_hat": estimate.b_hat}


def _vasicek_check(report: McReport, params: Mapping) -> list[CheckResult]:
    tolerance = float(params["tolerance"])
    return [
        CheckResult.within("a_hat", report.mean, float(params["a"]), tolerance),
        CheckResult.within("b_hat", statistic(report, "b_hat").mean, float(params["b"]), tolerance),
    ]


def _rate_replicate(stream: RngStream, params: Mapping) -> dict:
    a, b, H = float(params["a"]), float(params["b"]), float(params["H"])
    X = sample_vasicek(a, b, _driver(stream, params))
    values = {}
    for horizon in RATE_HORIZONS:
        estimate = vasicek_estimators(restrict(X, horizon), H)
        values[f"a_error_{horizon:g}"] = abs(estimate.a_hat - a)
        values[f"b_error_{horizon:g}"] = abs(estimate.b_hat - b)
    return values


def error_slope(report: McReport, prefix: str) -> float:
    """Least-squares slope of log median error against log T."""
    medians = [statistic(report, f"{prefix}_{horizon:g}").median for horizon in RATE_HORIZONS]
    slope, _ = np.polyfit(np.log(RATE_HORIZONS), np.log(medians), 1)
    return float(slope)


def _rate_check(report: McReport, params: Mapping) -> list[CheckResult]:
    q, H = int(params["q"]), float(params["H"])
    tolerance = float(params["tolerance"])
    return [
        CheckResult.within("a_rate", error_slope(report, "a_error"), -(2.0 / q) * (1.0 - H), tolerance),
        CheckResult.within("b_rate", error_slope(report, "b_error"), -(1.0 - H), tolerance),
    ]


def _ou_replicate(stream: RngStream, params: Mapping) -> dict:
    X = sample_vasicek(float(params["a"]), 0.0, _driver(stream, params))
    return {"x_end_squared": float(X.values[-1] ** 2)}


def _ou_check(report: McReport, params: Mapping) -> list[CheckResult]:
    target = hermite_ou_stationary_variance(float(params["a"]), float(params["H"]))
    return [CheckResult.within("stationary_variance", report.mean, target, float(params["tolerance"]) * target)]


def _qv_replicate(stream: RngStream, params: Mapping) -> dict:
    N = int(params["N"])
    spec = _spec(params)
    path = sample_hermite_path(stream, spec, 1.0, N, LatticeConfig(N * int(params["lattice_factor"])))
    value = qv_limit_statistic(FieldSample.from_path(path), spec, N)
    return {"statistic_squared": value * value, "statistic": value}


def _qv_sheet_replicate(stream: RngStream, params: Mapping) -> dict:
    N = int(params["N"])
    H = float(params["H"])
    spec = HermiteSpec(int(params["q"]), (H, H))
    field = sample_hermite_sheet(stream, spec, (1.0, 1.0), (N, N), LatticeConfig(N * int(params["lattice_factor"])))
    value = qv_limit_statistic(field, spec, (N, N))
    return {"statistic_squared": value * value, "statistic": value}


def _qv_check(report: McReport, params: Mapping) -> list[CheckResult]:
    return [CheckResult.within("second_moment", report.mean, 1.0, float(params["tolerance"]))]


def _decay(u):
    return np.exp(-np.asarray(u, dtype=float))


def _gt_replicate(stream: RngStream, params: Mapping) -> dict:
    X = sample_moving_average(_decay, _driver(stream, params))
    return {"g_t": quadratic_functional_GT(X, _spec(params), 1.0)}


def _gt_check(report: McReport, params: Mapping) -> list[CheckResult]:
    target = const_b_mavg(float(params["H"]), int(params["q"]), _decay) ** 2
    return [CheckResult.within("variance", report.variance, target, float(params["tolerance"]) * target)]


def ordering_statistics(suite: InequalityReport) -> dict:
    """The asserted records of ``suite`` as '<suite>:<record>.lhs' and '.rhs' statistics."""
    values = {}
    for record in suite.records:
        if record.asserted:
            values[f"{suite.name}:{record.name}.lhs"] = record.lhs
            values[f"{suite.name}:{record.name}.rhs"] = record.rhs
    return values


def ordering_checks(report: McReport) -> list[CheckResult]:
    """One lhs <= rhs check per ordering carried by the report."""
    names = sorted(name[:-len(".lhs")] for name in (report.statistic, *report.companions) if name.endswith(".lhs"))
    return [CheckResult.at_most(name, statistic(report, f"{name}.lhs").mean, statistic(report, f"{name}.rhs").mean,
                                ORDERING_SLACK) for name in names]


def _info_replicate(stream: RngStream, params: Mapping) -> dict:
    mixture = standardize(DensityFactory.mixture())
    lhs, rhs = de_bruijn_gap(mixture)
    suites = [inequality_suite(fixture, enforce=False)
              for fixture in (DensityFactory.gaussian(), mixture, DensityFactory.student_t(10.0))]
    product = ProductDensityModel((DensityFactory.mixture(), DensityFactory.gaussian(0.0, 2.0)))
    suites.append(multivariate_trace_bound(product, enforce=False))
    values = {
        "fisher_unit": fisher_information(DensityFactory.gaussian()),
        "fisher_four": fisher_information(DensityFactory.gaussian(0.0, 2.0)),
        "de_bruijn_gap": abs(lhs - rhs),
    }
    for suite in suites:
        values.update(ordering_statistics(suite))
    return values


def _info_check(report: McReport, params: Mapping) -> list[CheckResult]:
    return [
        CheckResult.within("fisher_unit", report.mean, 1.0, 1e-6),
        CheckResult.within("fisher_four", statistic(report, "fisher_four").mean, 0.25, 1e-6),
        CheckResult.at_most("de_bruijn_gap", statistic(report, "de_bruijn_gap").mean, 1e-3),
        *ordering_checks(report),
    ]


class ExperimentFactory:
    """
    Factory class for the registered Monte Carlo experiments.

    Methods:
        get_experiment(name): Returns the experiment registered under ``name``.
        names(): Sorted registry keys.
    """

    _registry = {
        "covariance": Experiment(
            "covariance", "E[Z_t Z_s] against the fBm covariance", _covariance_replicate, "z1z1",
            {"q": 2, "H": 0.7, "lattice_n": 2048}, _covariance_check, replicates=1000),
        "normalization": Experiment(
            "normalization", "exact finite-lattice normalization of Z_1", _normalization_replicate,
            "z1_squared", {"q": 2, "H": 0.7, "lattice_n": 2048}, _normalization_check, replicates=1000),
        "conjecture": Experiment(
            "conjecture", "Rosenblatt distribution function at two probe points", _conjecture_replicate,
            "below_low", {"H": 0.7, "n_samples": 5000, "lattice_n": 2048, "tolerance": 0.02},
            _conjecture_check, replicates=10),
        "cumulant-trace": Experiment(
            "cumulant-trace", "trace cumulants against second-chaos k-statistics", _cumulant_replicate, "k2",
            {"kernel": "random", "H": 0.7, "s": 0.5, "t": 1.0, "alpha": 1.0, "beta": 1.0, "m": 256,
             "draws": 100000}, _cumulant_check, replicates=10),
        "vasicek-consistency": Experiment(
            "vasicek-consistency", "moment estimators of the Hermite Vasicek model", _vasicek_replicate, "a_hat",
            {"q": 2, "H": 0.7, "a": 1.0, "b": 2.0, "t_end": 200.0, "n": 8192, "lattice_factor": 4,
             "tolerance": 0.1}, _vasicek_check, replicates=200),
        "vasicek-rate": Experiment(
            "vasicek-rate", "error decay of the Vasicek estimators over growing horizons", _rate_replicate,
            "a_error_400", {"q": 2, "H": 0.7, "a": 1.0, "b": 2.0, "t_end": 400.0, "n": 16384,
                            "lattice_factor": 4, "tolerance": 0.15}, _rate_check, replicates=200),
        "ou-variance": Experiment(
            "ou-variance", "late-time variance of the Hermite Ornstein-Uhlenbeck process", _ou_replicate,
            "x_end_squared", {"q": 2, "H": 0.7, "a": 1.0, "t_end": 50.0, "n": 8192, "lattice_factor": 4,
                              "tolerance": 0.1}, _ou_check, replicates=400),
        "qv-normalization": Experiment(
            "qv-normalization", "second moment of the renormalized quadratic variation", _qv_replicate,
            "statistic_squared", {"q": 2, "H": 0.8, "N": 2048, "lattice_factor": 16, "tolerance": 0.15},
            _qv_check, replicates=200),
        "qv-normalization-sheet": Experiment(
            "qv-normalization-sheet", "quadratic variation of the Hermite sheet", _qv_sheet_replicate,
            "statistic_squared", {"q": 2, "H": 0.8, "N": 256, "lattice_factor": 4, "tolerance": 0.25},
            _qv_check, replicates=200),
        "gt-variance": Experiment(
            "gt-variance", "variance of the quadratic functional G_T", _gt_replicate, "g_t",
            {"q": 2, "H": 0.7, "t_end": 400.0, "n": 16384, "lattice_factor": 4, "tolerance": 0.25},
            _gt_check, replicates=200),
        "info-identities": Experiment(
            "info-identities", "Fisher, de Bruijn and inequality identities", _info_replicate, "fisher_unit",
            {}, _info_check, replicates=1),
    }

    @staticmethod
    def get_experiment(name: str) -> Experiment:
        """
        Looks up an experiment.

        Args:
            name (str): Registry key.

        Returns:
            Experiment: The experiment.

        Raises:
            StatsError: If no experiment is registered under the name.
        """
        try:
            return ExperimentFactory._registry[name]
        except KeyError:
            raise StatsError(f"unknown experiment '{name}', expected one of {ExperimentFactory.names()}") from None

    @staticmethod
    def names() -> list[str]:
        return sorted(ExperimentFactory._registry)
