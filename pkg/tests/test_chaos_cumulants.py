import io
from math import factorial

import numpy as np
import pytest

from src.gaussian_engine.rng_stream import derive_stream
from src.chaos_cumulants.cumulant_error import CumulantError
from src.chaos_cumulants.kernel_matrix import KernelMatrix, kernel_from_function, random_kernel
from src.chaos_cumulants.rosenblatt_pair import rosenblatt_kernel_pair
from src.chaos_cumulants.trace import cumulant_trace, cumulant_traces, sample_second_chaos, spectrum
from src.process_sim.rosenblatt_grid import rosenblatt_f_design, sample_rosenblatt_marginal
from src.special_constants.normalization import const_b_rosenblatt
from src.stats.cumulants import empirical_cumulants


def diagonal_kernel(m: int = 4, delta: float = 0.5) -> KernelMatrix:
    return KernelMatrix(delta * (np.arange(m) + 0.5), delta, np.eye(m))


class TestKernelMatrix:
    """Test suite for discretized kernels."""

    def test_symmetrizes(self):
        """Test that an asymmetric kernel is replaced by its symmetric part."""
        kernel = KernelMatrix([0.25, 0.75], 0.5, [[1.0, 2.0], [0.0, 1.0]])
        assert np.array_equal(kernel.a, [[1.0, 1.0], [1.0, 1.0]])

    def test_shape_mismatch(self):
        """Test that the matrix must match the grid."""
        with pytest.raises(CumulantError):
            KernelMatrix([0.5], 1.0, np.eye(2))

    def test_invalid_entries(self):
        """Test that non-finite entries and non-positive widths are refused."""
        with pytest.raises(CumulantError):
            KernelMatrix([0.25, 0.75], 0.5, [[np.inf, 0.0], [0.0, 1.0]])
        with pytest.raises(CumulantError):
            KernelMatrix([0.5], 0.0, [[1.0]])

    def test_singular_diagonal(self):
        """Test that a kernel singular on u = v is sampled off the diagonal."""
        kernel = kernel_from_function(lambda u, v: np.abs(u - v) ** -0.3, m=16)
        assert np.all(np.isfinite(kernel.a))
        assert kernel.a[3, 3] > kernel.a[3, 4]

    def test_scalar_callable(self):
        """Test that scalar-only callables are evaluated pointwise."""
        kernel = kernel_from_function(lambda u, v: float(u) * float(v), m=4)
        assert kernel.a[1, 2] == pytest.approx(0.375 * 0.625)

    def test_addition(self):
        """Test kernel addition on a shared grid and refusal across grids."""
        total = diagonal_kernel() + diagonal_kernel().scaled(2.0)
        assert np.allclose(total.a, 3.0 * np.eye(4))
        with pytest.raises(CumulantError):
            diagonal_kernel() + diagonal_kernel(delta=0.25)

    def test_csv(self):
        """Test the dense CSV layout."""
        buffer = io.StringIO()
        random_kernel(derive_stream(1, 0), m=5).to_csv(buffer)
        rows = buffer.getvalue().strip().splitlines()
        assert len(rows) == 5
        assert len(rows[0].split(",")) == 5


class TestCumulantTrace:
    """Test suite for trace-formula cumulants."""

    def test_diagonal_kernel(self):
        """Test κ_p = 2^{p−1}(p−1)! m λ^p for a diagonal kernel with λ = 0.5."""
        kernel = diagonal_kernel()
        assert np.allclose(spectrum(kernel), 0.5)
        for p in range(2, 6):
            assert cumulant_trace(kernel, p) == pytest.approx(2 ** (p - 1) * factorial(p - 1) * 4 * 0.5**p)

    def test_traces_agree(self):
        """Test that the batched traces match single evaluations."""
        kernel = random_kernel(derive_stream(2, 0), m=6)
        traces = cumulant_traces(kernel, p_max=5)
        assert sorted(traces) == [2, 3, 4, 5]
        assert traces[4] == pytest.approx(cumulant_trace(kernel, 4))

    def test_order_range(self):
        """Test that orders outside 2..8 are refused."""
        with pytest.raises(CumulantError):
            cumulant_trace(diagonal_kernel(), 1)
        with pytest.raises(CumulantError):
            cumulant_traces(diagonal_kernel(), 9)


class TestSecondChaos:
    """Test suite for second-chaos sampling."""

    def test_mean_and_variance(self):
        """Test E = 0 and Var = κ2 over 200000 draws."""
        kernel = random_kernel(derive_stream(3, 0), m=8)
        draws = sample_second_chaos(derive_stream(3, 1), kernel, 200000)
        mean_error = draws.std(ddof=1) / np.sqrt(draws.size)
        assert abs(draws.mean()) < 4.0 * mean_error
        squares = (draws - draws.mean()) ** 2
        variance_error = squares.std(ddof=1) / np.sqrt(squares.size)
        assert abs(squares.mean() - cumulant_trace(kernel, 2)) < 4.0 * variance_error

    def test_reproducible(self):
        """Test that a stream replays its draws."""
        kernel = random_kernel(derive_stream(4, 0), m=4)
        first = sample_second_chaos(derive_stream(4, 1), kernel, 10)
        second = sample_second_chaos(derive_stream(4, 1), kernel, 10)
        assert np.array_equal(first, second)

    def test_positive_count(self):
        """Test that n must be positive."""
        with pytest.raises(CumulantError):
            sample_second_chaos(derive_stream(1, 0), diagonal_kernel(), 0)


class TestRosenblattPair:
    """Test suite for the two Rosenblatt kernel representations."""

    def test_cumulants_agree(self):
        """Test that κ2..κ4 of αR_1 + βR_0.5 agree within 5% across representations."""
        kf, kg = rosenblatt_kernel_pair(0.7, 0.5, 1.0, 1.0, 1.0, m=256)
        cf, cg = cumulant_traces(kf), cumulant_traces(kg)
        for p in (2, 3, 4):
            assert cf[p] == pytest.approx(cg[p], rel=0.05)

    def test_grid_sampler_cumulants(self):
        """Test κ₂ and κ₃ of grid draws against the traces of the same discretized kernel."""
        design = rosenblatt_f_design(0.7, 1.0, 64)
        kernel = KernelMatrix(design.midpoints, 1.0 / 64,
                              const_b_rosenblatt(0.7) * design.kernel_matrix(1.0, 1.0 / 64))
        traces = cumulant_traces(kernel, 3)
        draws = sample_rosenblatt_marginal(derive_stream(14, 0), 0.7, 64, 20000)
        estimate = empirical_cumulants(draws, p_max=3)
        for p in (2, 3):
            assert abs(estimate.values[p - 1] - traces[p]) < 4.0 * estimate.std_errors[p - 1]

    def test_times_ordered(self):
        """Test that s must not exceed t."""
        with pytest.raises(CumulantError):
            rosenblatt_kernel_pair(0.7, 1.5, 1.0, 1.0, 1.0, m=64)
