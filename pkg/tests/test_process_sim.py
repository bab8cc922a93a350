import io

import numpy as np
import pytest
from scipy import integrate, stats

from src.gaussian_engine.rng_stream import derive_stream
from src.special_constants.hermite_spec import HermiteSpec
from src.special_constants.normalization import const_b_rosenblatt
from src.special_constants.quadrature import weighted_norm_H
from src.process_sim.hermite_paths import (
    lattice_variance,
    sample_fbm,
    sample_hermite_marginal,
    sample_hermite_path,
)
from src.process_sim.integrals import sample_moving_average, sample_vasicek, wiener_integral
from src.process_sim.kernels import partial1_KH, volterra_constant, volterra_kernel_KH
from src.process_sim.path_io import path_envelope, read_path_csv, write_field_csv, write_path_csv
from src.process_sim.path_types import ProcessKind
from src.process_sim.rosenblatt_grid import rosenblatt_f_design, sample_rosenblatt_grid, sample_rosenblatt_marginal
from src.process_sim.sample_types import FieldSample, LatticeConfig, SamplePath
from src.process_sim.sheets import sample_hermite_sheet
from src.process_sim.simulation_error import SimulationError


def within(draws: np.ndarray, target: float, width: float = 4.0) -> bool:
    """Whether the mean of ``draws`` lies within ``width`` standard errors of ``target``."""
    error = draws.std(ddof=1) / np.sqrt(draws.size)
    return abs(draws.mean() - target) < width * error


class TestSampleTypes:
    """Test suite for path and field containers."""

    def test_path_starts_at_zero(self):
        """Test that a path with a nonzero first value is refused."""
        with pytest.raises(SimulationError):
            SamplePath(1.0, 2, [0.5, 1.0, 2.0])

    def test_path_length(self):
        """Test that n + 1 values are required."""
        with pytest.raises(SimulationError):
            SamplePath(1.0, 3, [0.0, 1.0])

    def test_grid(self):
        """Test the uniform time grid and grid lookups."""
        path = SamplePath(2.0, 4, [0.0, 1.0, 2.0, 3.0, 4.0])
        assert path.step == pytest.approx(0.5)
        assert np.allclose(path.times, [0.0, 0.5, 1.0, 1.5, 2.0])
        assert path.value_at(1.5) == 3.0
        with pytest.raises(SimulationError):
            path.value_at(0.7)

    def test_values_are_read_only(self):
        """Test that stored values cannot be modified."""
        path = SamplePath(1.0, 2, [0.0, 1.0, 2.0])
        with pytest.raises(ValueError):
            path.values[1] = 5.0

    def test_field_zero_faces(self):
        """Test that a field must vanish where a coordinate is 0."""
        values = np.ones((3, 3))
        with pytest.raises(SimulationError):
            FieldSample((1.0, 1.0), (2, 2), values)
        values[0, :] = 0.0
        values[:, 0] = 0.0
        field = FieldSample((1.0, 2.0), (2, 2), values)
        assert field.d == 2
        assert field.steps == (0.5, 1.0)

    def test_lattice_floor(self):
        """Test that inner lattices below 8 points are refused."""
        with pytest.raises(SimulationError):
            LatticeConfig(4)


class TestFractionalBrownianMotion:
    """Test suite for fBm paths."""

    def test_starts_at_zero(self):
        """Test path(0) = 0 and the grid size."""
        path = sample_fbm(derive_stream(1, 0), 0.7, 2.0, 64)
        assert path.values[0] == 0.0
        assert path.values.shape == (65,)
        assert path.kind is ProcessKind.FBM
        assert path.spec.q == 1

    def test_brownian_variance(self):
        """Test Var(B_1) = 1 at H = 0.5 over 1000 paths."""
        squares = np.array([sample_fbm(derive_stream(2, r), 0.5, 1.0, 16).values[-1] ** 2 for r in range(1000)])
        assert within(squares, 1.0)

    def test_covariance(self):
        """Test E[X_1 X_0.5] = 0.5 at H = 0.7 over 1000 paths."""
        products = []
        for r in range(1000):
            path = sample_fbm(derive_stream(3, r), 0.7, 1.0, 64)
            products.append(path.value_at(1.0) * path.value_at(0.5))
        assert within(np.array(products), 0.5)

    def test_rough_paths_have_no_spec(self):
        """Test that H <= 1/2 drivers carry only their Hurst index."""
        path = sample_fbm(derive_stream(1, 0), 0.3, 1.0, 16)
        assert path.spec is None
        assert path.hurst == 0.3


class TestHermitePaths:
    """Test suite for lattice-sum Hermite processes."""

    def test_gaussian_lattice_variance(self):
        """Test that at q = 1 the lattice variance is the fBm variance N^{2H}."""
        assert lattice_variance(0.7, 1, 64) == pytest.approx(64**1.4, rel=1e-10)

    def test_path_shape(self):
        """Test grid, start and metadata of a Hermite path."""
        spec = HermiteSpec.scalar(2, 0.7)
        path = sample_hermite_path(derive_stream(1, 0), spec, 1.0, 16, LatticeConfig(256))
        assert path.values.shape == (17,)
        assert path.values[0] == 0.0
        assert path.params["lattice_n"] == 256
        assert path.hurst == 0.7

    def test_gaussian_reduction_variance(self):
        """Test Var(Z_1) = 1 for q = 1."""
        draws = sample_hermite_marginal(derive_stream(4, 0), HermiteSpec.scalar(1, 0.7), LatticeConfig(256), 2000)
        assert within(draws**2, 1.0)

    def test_rosenblatt_variance(self):
        """Test Var(Z_1) = 1 for q = 2 at every lattice size."""
        draws = sample_hermite_marginal(derive_stream(5, 0), HermiteSpec.scalar(2, 0.7), LatticeConfig(512), 2000)
        assert within(draws**2, 1.0)
        assert within(draws, 0.0)

    def test_rosenblatt_is_skewed(self):
        """Test that the q = 2 marginal is visibly non-Gaussian."""
        draws = sample_hermite_marginal(derive_stream(6, 0), HermiteSpec.scalar(2, 0.7), LatticeConfig(1024), 4000)
        assert stats.skew(draws) > 0.2

    def test_self_similarity(self):
        """Test Var(Z_0.5) against the lattice covariance, itself close to 0.5^{2H}."""
        spec = HermiteSpec.scalar(2, 0.8)
        exact = lattice_variance(0.9, 2, 128) / lattice_variance(0.9, 2, 256)
        assert exact == pytest.approx(0.5**1.6, rel=0.05)
        squares = np.array([
            sample_hermite_path(derive_stream(7, r), spec, 1.0, 4, LatticeConfig(256)).value_at(0.5) ** 2
            for r in range(1000)
        ])
        assert within(squares, exact)


class TestVolterraKernel:
    """Test suite for K^H and its time derivative."""

    def test_derivative_matches_kernel(self):
        """Test ∂₁K^H against a central difference of K^H."""
        h = 1e-4
        difference = (volterra_kernel_KH(0.7, 0.8 + h, 0.3) - volterra_kernel_KH(0.7, 0.8 - h, 0.3)) / (2 * h)
        assert partial1_KH(0.7, 0.8, 0.3) == pytest.approx(difference, rel=1e-3)

    def test_rosenblatt_identity(self):
        """Test ∫_0^{0.4} ∂₁K(0.7, a) ∂₁K(0.4, a) da = H(2H − 1)|0.3|^{2H−2} at H = 0.8."""
        H = 0.8
        c = volterra_constant(H)
        smooth = lambda a: c**2 * (0.7 * 0.4) ** (H - 0.5) * (0.7 - a) ** (H - 1.5)
        value, _ = integrate.quad(smooth, 0.0, 0.4, weight="alg", wvar=(1.0 - 2.0 * H, H - 1.5))
        assert value == pytest.approx(H * (2 * H - 1) * 0.3 ** (2 * H - 2), rel=1e-3)

    def test_positive(self):
        """Test positivity for t > s."""
        assert partial1_KH(0.6, 1.0, 0.2) > 0.0
        assert volterra_kernel_KH(0.6, 1.0, 0.2) > 0.0

    def test_domain(self):
        """Test that s >= t and H outside (1/2, 1) are refused."""
        with pytest.raises(SimulationError):
            partial1_KH(0.7, 0.3, 0.5)
        with pytest.raises(SimulationError):
            volterra_constant(0.5)


class TestRosenblattGrid:
    """Test suite for the double-integral Rosenblatt generator."""

    def test_path_shape(self):
        """Test grid, start and kind of a grid path."""
        path = sample_rosenblatt_grid(derive_stream(1, 0), 0.7, 1.0, 8, 64)
        assert path.values.shape == (9,)
        assert path.values[0] == 0.0
        assert path.kind is ProcessKind.ROSENBLATT_GRID

    def test_divisibility(self):
        """Test that n must divide inner_m and inner_m >= 32."""
        with pytest.raises(SimulationError):
            sample_rosenblatt_grid(derive_stream(1, 0), 0.7, 1.0, 7, 64)
        with pytest.raises(SimulationError):
            sample_rosenblatt_grid(derive_stream(1, 0), 0.7, 1.0, 4, 16)

    def test_discretized_variance(self):
        """Test that the discretized R_1 has variance close to 1."""
        design = rosenblatt_f_design(0.8, 1.0, 256)
        scale = const_b_rosenblatt(0.8) / 256
        variance = 2.0 * scale**2 * np.sum(design.cell_average(1.0) ** 2)
        assert variance == pytest.approx(1.0, abs=0.15)

    def test_marginal_variance(self):
        """Test the sampled variance against the discretized one."""
        design = rosenblatt_f_design(0.8, 1.0, 128)
        scale = const_b_rosenblatt(0.8) / 128
        variance = 2.0 * scale**2 * np.sum(design.cell_average(1.0) ** 2)
        draws = sample_rosenblatt_marginal(derive_stream(8, 0), 0.8, 128, 2000)
        assert within(draws**2, variance)
        assert within(draws, 0.0)

    def test_matches_lattice_marginal(self):
        """Test that grid and lattice draws of R_1 at H = 0.7 share one law."""
        grid = sample_rosenblatt_marginal(derive_stream(9, 0), 0.7, 256, 400)
        lattice = sample_hermite_marginal(derive_stream(9, 1), HermiteSpec.scalar(2, 0.7), LatticeConfig(2048), 400)
        assert stats.ks_2samp(grid, lattice).pvalue > 0.01


class TestHermiteSheet:
    """Test suite for two-parameter Hermite sheets."""

    def test_zero_faces(self):
        """Test shape and vanishing faces."""
        spec = HermiteSpec(2, (0.7, 0.8))
        field = sample_hermite_sheet(derive_stream(1, 0), spec, (1.0, 1.0), (4, 8), LatticeConfig(32))
        assert field.values.shape == (5, 9)
        assert np.all(field.values[0, :] == 0.0)
        assert np.all(field.values[:, 0] == 0.0)

    def test_unit_variance(self):
        """Test Var(Z_{1,1}) = 1 over 1000 sheets."""
        spec = HermiteSpec(2, (0.7, 0.8))
        squares = np.array([
            sample_hermite_sheet(derive_stream(9, r), spec, (1.0, 1.0), (2, 2), LatticeConfig(32)).values[-1, -1] ** 2
            for r in range(1000)
        ])
        assert within(squares, 1.0)

    def test_needs_two_axes(self):
        """Test that a scalar spec is refused."""
        with pytest.raises(SimulationError):
            sample_hermite_sheet(derive_stream(1, 0), HermiteSpec.scalar(2, 0.7), (1.0,), (4,), LatticeConfig(32))


class TestIntegrals:
    """Test suite for Wiener integrals, moving averages and Vasicek paths."""

    def test_constant_integrand_telescopes(self):
        """Test ∫ 1 dZ = Z_{t_end}."""
        path = sample_fbm(derive_stream(1, 0), 0.7, 1.0, 128)
        assert wiener_integral(lambda u: np.ones_like(u), path) == pytest.approx(path.values[-1])

    def test_isometry(self):
        """Test Var(∫ e^{−u} dB^H) against the weighted norm at H = 0.8."""
        f = lambda u: np.exp(-np.asarray(u))
        draws = np.array([wiener_integral(f, sample_fbm(derive_stream(10, r), 0.8, 20.0, 2000)) for r in range(1000)])
        assert within(draws**2, weighted_norm_H(f, 0.8, domain=(0.0, 20.0)))
        assert within(draws, 0.0)

    def test_unit_kernel_is_identity(self):
        """Test that a moving average with x = 1 returns the driver."""
        path = sample_fbm(derive_stream(2, 0), 0.7, 1.0, 64)
        average = sample_moving_average(lambda u: np.ones_like(u), path)
        assert np.allclose(average.values, path.values)
        assert average.kind is ProcessKind.MOVING_AVERAGE

    def test_linearity(self):
        """Test MA(x1 + x2) = MA(x1) + MA(x2)."""
        path = sample_fbm(derive_stream(3, 0), 0.7, 5.0, 256)
        x1 = lambda u: np.exp(-np.asarray(u))
        x2 = lambda u: np.cos(np.asarray(u))
        total = sample_moving_average(lambda u: x1(u) + x2(u), path).values
        parts = sample_moving_average(x1, path).values + sample_moving_average(x2, path).values
        assert np.allclose(total, parts, atol=1e-12)

    def test_vasicek_skeleton(self):
        """Test that a zero driver gives b(1 − e^{−at})."""
        path = SamplePath(4.0, 16, np.zeros(17))
        vasicek = sample_vasicek(0.5, 2.0, path)
        assert np.allclose(vasicek.values, 2.0 * (1.0 - np.exp(-0.5 * path.times)))
        assert vasicek.params["a"] == 0.5

    def test_vasicek_is_ou_average(self):
        """Test that b = 0 equals the moving average of e^{−au}."""
        path = sample_fbm(derive_stream(4, 0), 0.7, 10.0, 512)
        vasicek = sample_vasicek(1.0, 0.0, path)
        average = sample_moving_average(lambda u: np.exp(-np.asarray(u)), path)
        assert np.allclose(vasicek.values, average.values, atol=1e-10)

    def test_euler_agreement(self):
        """Test the explicit solution against an Euler scheme at n = 4096."""
        path = sample_fbm(derive_stream(5, 0), 0.7, 10.0, 4096)
        a, b = 1.0, 2.0
        exact = sample_vasicek(a, b, path).values
        euler = np.zeros_like(exact)
        for k, dz in enumerate(path.increments):
            euler[k + 1] = euler[k] + a * (b - euler[k]) * path.step + dz
        assert np.max(np.abs(euler - exact)) < 0.05 * np.max(np.abs(exact))

    def test_vasicek_domain(self):
        """Test that a <= 0 is refused."""
        with pytest.raises(SimulationError):
            sample_vasicek(0.0, 1.0, SamplePath(1.0, 2, [0.0, 0.0, 0.0]))


class TestPathIO:
    """Test suite for path and field serialization."""

    def test_round_trip(self):
        """Test that a written path reads back exactly."""
        path = sample_fbm(derive_stream(1, 0), 0.7, 2.0, 32)
        buffer = io.StringIO()
        write_path_csv(path, buffer)
        buffer.seek(0)
        restored = read_path_csv(buffer, hurst=0.7)
        assert restored.n == 32
        assert restored.t_end == pytest.approx(2.0)
        assert np.array_equal(restored.values, path.values)
        assert restored.kind is ProcessKind.OBSERVED

    def test_missing_columns(self):
        """Test that files without t,value columns are refused."""
        with pytest.raises(SimulationError):
            read_path_csv(io.StringIO("x,y\n0,0\n1,1\n"))

    def test_non_uniform_grid(self):
        """Test that an irregular grid is refused."""
        with pytest.raises(SimulationError):
            read_path_csv(io.StringIO("t,value\n0,0\n0.1,1\n0.5,2\n"))

    def test_nonzero_start(self):
        """Test that a path not starting at 0 is refused."""
        with pytest.raises(SimulationError):
            read_path_csv(io.StringIO("t,value\n0,1\n1,2\n"))

    def test_field_rows(self):
        """Test the t1,t2,value layout of a field file."""
        values = np.zeros((3, 2))
        values[1:, 1:] = [[1.0], [2.0]]
        buffer = io.StringIO()
        write_field_csv(FieldSample((1.0, 1.0), (2, 1), values), buffer)
        lines = buffer.getvalue().strip().splitlines()
        assert lines[0] == "t1,t2,value"
        assert len(lines) == 7

    def test_envelope(self):
        """Test the JSON envelope of a path."""
        path = sample_fbm(derive_stream(1, 0), 0.7, 1.0, 8)
        envelope = path_envelope(path, seed=1)
        assert envelope["kind"] == "fbm"
        assert envelope["q"] == 1
        assert envelope["seed"] == 1
