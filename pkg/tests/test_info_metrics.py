import numpy as np
import pytest
from scipy import stats

from src.gaussian_engine.rng_stream import derive_stream
from src.info_metrics.de_bruijn import de_bruijn_gap, interpolated_fisher
from src.info_metrics.density_factory import DensityFactory, standardize
from src.info_metrics.density_model import DensityGrid, DensityModel, ProductDensityModel
from src.info_metrics.divergences import (
    entropy,
    fisher_information,
    relative_entropy,
    standardized_fisher,
    total_variation,
)
from src.info_metrics.inequalities import (
    InequalityRecord,
    inequality_suite,
    multivariate_trace_bound,
    product_total_variation,
)
from src.info_metrics.kde import kde_model, silverman_bandwidth
from src.info_metrics.metrics_error import MetricsError

LOOSE_GRID = DensityGrid(epsabs=1e-8, epsrel=1e-6)


class TestDensityModel:
    """Test suite for density fixtures and their construction checks."""

    def test_unknown_density(self):
        """Test that the factory refuses unknown names."""
        with pytest.raises(MetricsError):
            DensityFactory.get_density("cauchy")

    def test_factory_by_name(self):
        """Test that named fixtures carry their parameters."""
        model = DensityFactory.get_density("student-t", nu=5.0)
        assert model.variance == pytest.approx(1.0)
        assert DensityFactory.get_density("uniform", low=0.0, high=2.0).support == (0.0, 2.0)

    def test_unnormalized(self):
        """Test that a density not integrating to one is refused."""
        with pytest.raises(MetricsError):
            DensityModel("double", lambda x: 2.0 * stats.norm.pdf(x), lambda x: -np.asarray(x),
                         (-np.inf, np.inf), 0.0, 1.0)

    def test_wrong_score(self):
        """Test that a score failing the Stein identity is refused."""
        with pytest.raises(MetricsError):
            DensityModel("bad-score", stats.norm.pdf, lambda x: -2.0 * np.asarray(x), (-np.inf, np.inf), 0.0, 1.0)

    def test_invalid_parameters(self):
        """Test fixture parameter checks."""
        with pytest.raises(MetricsError):
            DensityFactory.gaussian(0.0, 0.0)
        with pytest.raises(MetricsError):
            DensityFactory.uniform(1.0, 1.0)
        with pytest.raises(MetricsError):
            DensityFactory.student_t(2.0)
        with pytest.raises(MetricsError):
            DensityFactory.mixture(weights=(1.0,), means=(0.0, 1.0), sds=(1.0, 1.0))

    def test_standardize(self):
        """Test that the standardized mixture has mean 0 and variance 1."""
        model = standardize(DensityFactory.mixture())
        assert model.mean == 0.0
        assert model.variance == 1.0
        assert model.expectation(lambda x: x * x) == pytest.approx(1.0, rel=1e-8)

    def test_jump_edges(self):
        """Test that the uniform is flagged as jumping at its edges."""
        assert not DensityFactory.uniform().stein_applicable
        assert DensityFactory.gaussian().stein_applicable


class TestDivergences:
    """Test suite for entropy, relative entropy, Fisher information and total variation."""

    def test_gaussian_entropy(self):
        """Test h(N(0,1)) = ½ log(2πe)."""
        assert entropy(DensityFactory.gaussian()) == pytest.approx(0.5 * np.log(2 * np.pi * np.e), rel=1e-8)

    def test_uniform_entropy(self):
        """Test h(U(0,2)) = log 2."""
        assert entropy(DensityFactory.uniform(0.0, 2.0)) == pytest.approx(np.log(2.0), rel=1e-8)

    def test_gaussian_divergence(self):
        """Test D(N(0,1)‖N(0,4)) = ½(¼ + log 4 − 1)."""
        value = relative_entropy(DensityFactory.gaussian(), DensityFactory.gaussian(0.0, 2.0))
        assert value == pytest.approx(0.5 * (0.25 + np.log(4.0) - 1.0), rel=1e-8)

    def test_self_divergence(self):
        """Test D(f‖f) = 0."""
        mixture = DensityFactory.mixture()
        assert relative_entropy(mixture, mixture) == pytest.approx(0.0, abs=1e-10)

    def test_negative_divergence_warns(self, caplog):
        """Test that a log-density off by a constant is clamped to 0 with a warning."""
        offset = DensityModel(name="offset", pdf=stats.norm.pdf, score=lambda x: -np.asarray(x),
                              support=(-np.inf, np.inf), mean=0.0, variance=1.0,
                              log_pdf=lambda x: stats.norm.logpdf(x) - 0.1)
        with caplog.at_level("WARNING"):
            assert relative_entropy(offset, DensityFactory.gaussian()) == 0.0
        assert "came out as" in caplog.text

    def test_support_mismatch(self):
        """Test that mass outside the reference support gives an infinite divergence."""
        assert relative_entropy(DensityFactory.gaussian(), DensityFactory.uniform()) == float("inf")
        inside = relative_entropy(DensityFactory.uniform(), DensityFactory.gaussian())
        assert inside == pytest.approx(0.5 * np.log(2 * np.pi) + 1.0 / 6.0, rel=1e-8)

    def test_gaussian_fisher(self):
        """Test J(N(0,σ²)) = 1/σ²."""
        assert fisher_information(DensityFactory.gaussian()) == pytest.approx(1.0, rel=1e-8)
        assert fisher_information(DensityFactory.gaussian(3.0, 2.0)) == pytest.approx(0.25, rel=1e-8)
        assert standardized_fisher(DensityFactory.gaussian(0.0, 2.0)) == pytest.approx(0.0, abs=1e-8)

    def test_student_fisher(self):
        """Test J = (ν+1)/((ν+3)s²) for the standardized t(10)."""
        expected = 11.0 / (13.0 * 0.8)
        assert fisher_information(DensityFactory.student_t(10.0)) == pytest.approx(expected, rel=1e-7)

    def test_uniform_fisher(self):
        """Test that a density with jumps has infinite Fisher information."""
        assert fisher_information(DensityFactory.uniform()) == float("inf")

    def test_shifted_gaussians(self):
        """Test d_TV(N(0,1), N(0.5,1)) = 2Φ(0.25) − 1."""
        value = total_variation(DensityFactory.gaussian(), DensityFactory.gaussian(0.5, 1.0))
        assert value == pytest.approx(2.0 * stats.norm.cdf(0.25) - 1.0, rel=1e-8)

    def test_disjoint_supports(self):
        """Test that disjoint uniforms are at total variation 1."""
        value = total_variation(DensityFactory.uniform(0.0, 1.0), DensityFactory.uniform(2.0, 3.0))
        assert value == pytest.approx(1.0, abs=1e-8)


class TestDeBruijn:
    """Test suite for the de Bruijn identity."""

    def test_gaussian(self):
        """Test that both sides vanish for N(0, 1)."""
        lhs, rhs = de_bruijn_gap(DensityFactory.gaussian())
        assert lhs == pytest.approx(0.0, abs=1e-10)
        assert rhs == pytest.approx(0.0, abs=1e-6)

    def test_mixture(self):
        """Test the identity for the standardized bimodal mixture."""
        lhs, rhs = de_bruijn_gap(standardize(DensityFactory.mixture()))
        assert lhs > 0.01
        assert abs(lhs - rhs) < 1e-3

    def test_interpolation_at_gaussian(self):
        """Test that Gaussian interpolation keeps J = 1."""
        assert interpolated_fisher(DensityFactory.gaussian(), 0.5) == pytest.approx(1.0, abs=1e-6)

    def test_requires_standardized(self):
        """Test that unstandardized densities and t outside (0, 1) are refused."""
        with pytest.raises(MetricsError):
            de_bruijn_gap(DensityFactory.gaussian(0.0, 2.0))
        with pytest.raises(MetricsError):
            interpolated_fisher(DensityFactory.gaussian(), 1.0)

    def test_grid_limit(self):
        """Test that a grid too fine for the limit is refused."""
        tight = DensityGrid(min_points=2**5, max_points=2**8)
        with pytest.raises(MetricsError):
            interpolated_fisher(DensityFactory.gaussian(), 1e-4, tight)


class TestInequalities:
    """Test suite for the inequality checks against the Gaussian."""

    def test_record(self):
        """Test ordering with slack and serialization."""
        record = InequalityRecord("x", 1.0, 1.0 - 1e-12)
        assert record.satisfied
        assert record.to_dict()["asserted"] is True
        assert not InequalityRecord("y", 2.0, 1.0).satisfied

    def test_gaussian_suite(self):
        """Test that every quantity vanishes at the Gaussian."""
        report = inequality_suite(DensityFactory.gaussian())
        assert report.quantities["d_tv"] == pytest.approx(0.0, abs=1e-10)
        assert report.quantities["fisher_st"] == pytest.approx(0.0, abs=1e-8)
        assert all(record.satisfied for record in report.records)

    @pytest.mark.parametrize("fixture", [
        standardize(DensityFactory.mixture()),
        DensityFactory.student_t(10.0),
    ])
    def test_asserted_bounds(self, fixture):
        """Test Pinsker and log-Sobolev on non-Gaussian fixtures."""
        report = inequality_suite(fixture)
        assert report.record("pinsker").satisfied
        assert report.record("log-sobolev").satisfied
        assert report.quantities["d_tv"] > 0.0
        assert not report.record("shimizu-sup-J").asserted

    def test_suite_needs_standardized(self):
        """Test that the suite refuses a non-standard density."""
        with pytest.raises(MetricsError):
            inequality_suite(DensityFactory.uniform())

    def test_missing_record(self):
        """Test lookup of an unknown record."""
        with pytest.raises(KeyError):
            inequality_suite(DensityFactory.gaussian()).record("nonexistent")


class TestMultivariateBound:
    """Test suite for the trace bound of product densities."""

    def test_mixture_and_gaussian(self):
        """Test the chain for (mixture, N(0,4))."""
        F = ProductDensityModel((DensityFactory.mixture(), DensityFactory.gaussian(0.0, 2.0)))
        report = multivariate_trace_bound(F)
        assert report.quantities["op_norm"] == pytest.approx(4.0)
        assert report.quantities["d_tv"] > 0.0
        assert report.record("pinsker").satisfied
        assert report.record("entropy-trace").satisfied
        assert report.name == "mixture×N(0,4)"

    def test_gaussian_product(self):
        """Test that a Gaussian product has zero divergence and distance."""
        F = ProductDensityModel((DensityFactory.gaussian(), DensityFactory.gaussian(1.0, 0.5)))
        assert product_total_variation(F) == pytest.approx(0.0, abs=1e-12)
        report = multivariate_trace_bound(F)
        assert report.quantities["trace"] == pytest.approx(0.0, abs=1e-7)

    def test_high_dimension(self):
        """Test that four components skip the total-variation link."""
        F = ProductDensityModel(tuple(DensityFactory.gaussian() for _ in range(4)))
        with pytest.raises(MetricsError):
            product_total_variation(F)
        report = multivariate_trace_bound(F)
        assert report.quantities["d_tv"] is None
        assert [record.name for record in report.records] == ["entropy-trace"]

    def test_empty_product(self):
        """Test that a product needs a component."""
        with pytest.raises(MetricsError):
            ProductDensityModel(())


class TestKde:
    """Test suite for kernel density estimates."""

    def test_silverman(self):
        """Test Silverman's rule."""
        samples = derive_stream(1, 0).generator().standard_normal(1000)
        expected = 1.06 * np.std(samples, ddof=1) * 1000 ** -0.2
        assert silverman_bandwidth(samples) == pytest.approx(expected)

    def test_moments(self):
        """Test that the estimate has the sample mean and variance plus h²."""
        samples = derive_stream(2, 0).generator().standard_normal(500)
        model = kde_model(samples, bandwidth=0.3)
        assert model.mean == pytest.approx(np.mean(samples))
        assert model.variance == pytest.approx(np.var(samples) + 0.09)
        assert model.scale == 0.3

    def test_score(self):
        """Test the analytic score against a difference of the log-density."""
        model = kde_model(derive_stream(3, 0).generator().standard_normal(400))
        step = 1e-5
        difference = (model.logpdf(0.3 + step) - model.logpdf(0.3 - step)) / (2 * step)
        assert model.score(0.3) == pytest.approx(difference, rel=1e-5)

    def test_close_to_source(self):
        """Test that a KDE of normal draws is close to N(0, 1) in total variation."""
        model = kde_model(derive_stream(4, 0).generator().standard_normal(5000))
        assert total_variation(model, DensityFactory.gaussian(), LOOSE_GRID) < 0.05

    def test_invalid_samples(self):
        """Test sample and bandwidth checks."""
        with pytest.raises(MetricsError):
            kde_model(np.arange(50.0))
        with pytest.raises(MetricsError):
            kde_model(np.append(np.arange(200.0), np.nan))
        with pytest.raises(MetricsError):
            kde_model(np.ones(200))
        with pytest.raises(MetricsError):
            kde_model(np.arange(200.0), bandwidth="scott")
        with pytest.raises(MetricsError):
            kde_model(np.arange(200.0), bandwidth=-1.0)
