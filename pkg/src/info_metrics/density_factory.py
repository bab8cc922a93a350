from __future__ import annotations

import numpy as np
from scipy import special, stats

from .density_model import DensityModel
from .metrics_error import MetricsError


class DensityFactory:
    """
    Factory class for the analytic density fixtures.

    Methods:
        get_density(name, **params): Builds the named density.
        gaussian(mean, sd): Normal density.
        uniform(low, high): Uniform density.
        mixture(weights, means, sds): Gaussian mixture.
        student_t(nu, standardized): Student-t density, optionally with unit variance.
    """

    @staticmethod
    def get_density(name: str, **params) -> DensityModel:
        """
        Builds a density from its name.

        Args:
            name (str): One of "gaussian", "uniform", "mixture", "student-t".
            **params: Parameters of the chosen fixture.

        Returns:
            DensityModel: The density.

        Raises:
            MetricsError: If the name is unknown.
        """
        builders = {
            "gaussian": DensityFactory.gaussian,
            "uniform": DensityFactory.uniform,
            "mixture": DensityFactory.mixture,
            "student-t": DensityFactory.student_t,
        }
        if name not in builders:
            raise MetricsError(f"unknown density '{name}', expected one of {sorted(builders)}")
        return builders[name](**params)

    @staticmethod
    def gaussian(mean: float = 0.0, sd: float = 1.0) -> DensityModel:
        if sd <= 0.0:
            raise MetricsError(f"sd must be positive, got {sd}")
        return DensityModel(
            name=f"N({mean:g},{sd * sd:g})",
            pdf=lambda x: stats.norm.pdf(x, mean, sd),
            score=lambda x: -(np.asarray(x) - mean) / (sd * sd),
            support=(-np.inf, np.inf),
            mean=float(mean),
            variance=float(sd * sd),
            log_pdf=lambda x: stats.norm.logpdf(x, mean, sd),
        )

    @staticmethod
    def uniform(low: float = 0.0, high: float = 1.0) -> DensityModel:
        if high <= low:
            raise MetricsError(f"need low < high, got [{low}, {high}]")
        width = high - low
        return DensityModel(
            name=f"U({low:g},{high:g})",
            pdf=lambda x: stats.uniform.pdf(x, low, width),
            score=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
            support=(float(low), float(high)),
            mean=0.5 * (low + high),
            variance=width * width / 12.0,
            log_pdf=lambda x: stats.uniform.logpdf(x, low, width),
        )

    @staticmethod
    def mixture(weights=(0.5, 0.5), means=(-1.0, 1.0), sds=(0.5, 0.5)) -> DensityModel:
        weights, means, sds = (np.asarray(v, dtype=float) for v in (weights, means, sds))
        if not (weights.shape == means.shape == sds.shape) or np.any(weights <= 0.0) or np.any(sds <= 0.0):
            raise MetricsError("mixture needs matching positive weights and sds")
        weights = weights / weights.sum()
        mean = float(np.dot(weights, means))
        variance = float(np.dot(weights, sds**2 + means**2) - mean**2)

        def log_components(x):
            x = np.asarray(x, dtype=float)[..., None]
            return np.log(weights) + stats.norm.logpdf(x, means, sds)

        def log_pdf(x):
            return special.logsumexp(log_components(x), axis=-1)

        def score(x):
            logs = log_components(x)
            posterior = np.exp(logs - special.logsumexp(logs, axis=-1, keepdims=True))
            slopes = -(np.asarray(x, dtype=float)[..., None] - means) / sds**2
            return np.sum(posterior * slopes, axis=-1)

        return DensityModel(
            name="mixture",
            pdf=lambda x: np.exp(log_pdf(x)),
            score=score,
            support=(-np.inf, np.inf),
            mean=mean,
            variance=variance,
            log_pdf=log_pdf,
            scale=float(sds.min()),
        )

    @staticmethod
    def student_t(nu: float = 10.0, standardized: bool = True) -> DensityModel:
        if nu <= 2.0:
            raise MetricsError(f"nu must exceed 2 for a finite variance, got {nu}")
        scale = np.sqrt((nu - 2.0) / nu) if standardized else 1.0

        def score(x):
            y = np.asarray(x, dtype=float) / scale
            return -(nu + 1.0) * y / (nu + y * y) / scale

        return DensityModel(
            name=f"t({nu:g})",
            pdf=lambda x: stats.t.pdf(x, nu, scale=scale),
            score=score,
            support=(-np.inf, np.inf),
            mean=0.0,
            variance=float(scale * scale * nu / (nu - 2.0)),
            log_pdf=lambda x: stats.t.logpdf(x, nu, scale=scale),
        )


def standardize(model: DensityModel) -> DensityModel:
    """Rescale F to (F − mean)/sd, the density y ↦ sd·f(mean + sd·y)."""
    mu, sd = model.mean, model.sd
    lower, upper = model.support
    return DensityModel(
        name=f"{model.name}-standardized",
        pdf=lambda y: sd * model.pdf(mu + sd * np.asarray(y, dtype=float)),
        score=lambda y: sd * model.score(mu + sd * np.asarray(y, dtype=float)),
        support=((lower - mu) / sd, (upper - mu) / sd),
        mean=0.0,
        variance=1.0,
        log_pdf=lambda y: np.log(sd) + model.logpdf(mu + sd * np.asarray(y, dtype=float)),
        breakpoints=tuple((b - mu) / sd for b in model.breakpoints),
        scale=model.scale / sd,
        validate=model.validate,
    )
