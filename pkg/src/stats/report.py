"""Monte Carlo summaries and verification outcomes."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

Z_95 = 1.96


def _number(value):
    if value is None:
        return None
    value = float(value)
    return value if np.isfinite(value) else str(value)


@dataclass(frozen=True, eq=False)
class McReport:
    """
    Replicate-indexed summary of one statistic.

    ``variance`` is None when there is a single successful replicate; failed
    replicates are listed in ``failures`` as (index, message) and flag the
    report as partial. ``companions`` holds the reports of the other
    statistics produced by the same replicates.
    """

    experiment: str
    statistic: str
    master_seed: int
    per_replicate: np.ndarray
    replicate_index: np.ndarray
    failures: tuple[tuple[int, str], ...] = ()
    companions: dict[str, McReport] = field(default_factory=dict)

    @property
    def n_replicates(self) -> int:
        return int(self.per_replicate.size)

    @property
    def partial(self) -> bool:
        return bool(self.failures)

    @property
    def mean(self) -> float:
        return float(np.mean(self.per_replicate)) if self.n_replicates else float("nan")

    @property
    def variance(self) -> float | None:
        if self.n_replicates < 2:
            return None
        return float(np.var(self.per_replicate, ddof=1))

    @property
    def std_error(self) -> float | None:
        variance = self.variance
        return None if variance is None else float(np.sqrt(variance / self.n_replicates))

    @property
    def ci95(self) -> tuple[float, float] | None:
        error = self.std_error
        return None if error is None else (self.mean - Z_95 * error, self.mean + Z_95 * error)

    @property
    def median(self) -> float:
        return float(np.median(self.per_replicate)) if self.n_replicates else float("nan")

    def summary(self) -> dict:
        ci = self.ci95
        return {
            "ci95": None if ci is None else [_number(ci[0]), _number(ci[1])],
            "mean": _number(self.mean),
            "n_replicates": self.n_replicates,
            "statistic": self.statistic,
            "std_error": _number(self.std_error),
            "variance": _number(self.variance),
        }

    def to_dict(self) -> dict:
        content = self.summary()
        content.update({
            "companions": {name: report.summary() for name, report in sorted(self.companions.items())},
            "experiment": self.experiment,
            "failures": [[index, message] for index, message in self.failures],
            "master_seed": int(self.master_seed),
            "partial": self.partial,
            "per_replicate": [_number(v) for v in self.per_replicate],
        })
        return content

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_frame(self) -> pd.DataFrame:
        """Per-replicate values, one column per statistic."""
        columns = {"replicate": self.replicate_index, self.statistic: self.per_replicate}
        for name, report in sorted(self.companions.items()):
            columns[name] = report.per_replicate
        return pd.DataFrame(columns)

    def to_csv(self, target) -> None:
        self.to_frame().to_csv(target, index=False, float_format="%.17g")


@dataclass(frozen=True)
class CheckResult:
    """One acceptance comparison: |value − target| <= tolerance, or an ordering."""

    name: str
    value: float
    target: float
    tolerance: float
    passed: bool

    @classmethod
    def within(cls, name: str, value: float, target: float, tolerance: float) -> CheckResult:
        return cls(name, float(value), float(target), float(tolerance),
                   bool(np.isfinite(value) and abs(value - target) <= tolerance))

    @classmethod
    def at_most(cls, name: str, value: float, bound: float, slack: float = 0.0) -> CheckResult:
        return cls(name, float(value), float(bound), float(slack), bool(value <= bound + slack))

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "target": _number(self.target),
                "tolerance": _number(self.tolerance), "value": _number(self.value)}


@dataclass(frozen=True, eq=False)
class VerificationReport:
    """An McReport with the acceptance checks evaluated on it."""

    report: McReport
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(check.passed for check in self.checks) and not self.report.partial

    def to_json(self) -> str:
        content = {"checks": [check.to_dict() for check in self.checks], "passed": self.passed,
                   "report": self.report.to_dict()}
        return json.dumps(content, sort_keys=True, indent=2)
