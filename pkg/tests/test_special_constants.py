from math import factorial, gamma, pi, sqrt

import numpy as np
import pytest
from scipy import integrate, special

from src.special_constants.constants_error import ConstantsError, DomainError, RankUndeterminedError
from src.special_constants.hermite import hermite_coefficients, hermite_poly, hermite_rank
from src.special_constants.hermite_spec import HermiteSpec
from src.special_constants.normalization import (
    const_B_Hq,
    const_b_rosenblatt,
    const_b_sheet,
    const_c1_sheet,
    const_c_hermite,
    hermite_ou_stationary_variance,
    qv_fluctuation_exponent,
    vasicek_fluctuation_rates,
    vasicek_limit_scale,
)
from src.special_constants.quadrature import (
    QuadratureSpec,
    const_b_mavg,
    const_sigma_H,
    power_kernel_form,
    sigma_inner_integral,
    weighted_norm_H,
)


def c1_formula(q: int, H: float) -> float:
    """c_{1,H} for d = 1 written out term by term."""
    h = 1.0 + (H - 1.0) / q
    b = sqrt(H * (2 * H - 1)) / sqrt(factorial(q) * (h * (2 * h - 1)) ** q)
    numerator = 2.0 * 2.0 * b**4 * (h * (2 * h - 1)) ** (2 * q)
    denominator = (4 * h - 3) * (4 * h - 2) * ((2 * h - 2) * (q - 1) + 1) ** 2 * ((h - 1) * (q - 1) + 1) ** 2
    return numerator / denominator


def exponential(u):
    return np.exp(-np.asarray(u, dtype=float))


class TestHermiteSpec:
    """Test suite for the Hermite parameter bundle."""

    def test_derived_exponents(self):
        """Test H0 and H' of a scalar spec."""
        spec = HermiteSpec.scalar(2, 0.7)
        assert spec.h0[0] == pytest.approx(0.85)
        assert spec.h_prime[0] == pytest.approx(0.7)
        assert spec.d == 1

    def test_h0_range(self):
        """Test that H0 lies in (1 − 1/(2q), 1) over a grid."""
        for q in (1, 2, 3, 4):
            for H in (0.51, 0.7, 0.99):
                h0 = HermiteSpec.scalar(q, H).h0[0]
                assert 1.0 - 1.0 / (2 * q) < h0 < 1.0

    def test_invalid_hurst(self):
        """Test the message for H outside (0.5, 1)."""
        with pytest.raises(DomainError, match=r"H must lie in \(0.5, 1\)"):
            HermiteSpec.scalar(2, 1.2)

    def test_invalid_order(self):
        """Test that q must be a positive integer."""
        with pytest.raises(DomainError):
            HermiteSpec(0, (0.7,))

    def test_axes_broadcast(self):
        """Test that a scalar spec repeats its H on every axis."""
        assert list(HermiteSpec.scalar(2, 0.8).axes(2)) == [0.8, 0.8]
        with pytest.raises(DomainError):
            HermiteSpec(2, (0.7, 0.8)).axes(3)


class TestHermitePolynomials:
    """Test suite for Hermite polynomials, coefficients and rank."""

    def test_values(self):
        """Test He_2(0), He_3(2) and He_1(x)."""
        assert hermite_poly(2, 0.0) == pytest.approx(-1.0)
        assert hermite_poly(3, 2.0) == pytest.approx(2.0)
        for x in (-1.0, 0.0, 3.5):
            assert hermite_poly(1, x) == pytest.approx(x)

    def test_vectorized(self):
        """Test evaluation on arrays."""
        x = np.array([0.0, 1.0, 2.0])
        assert np.allclose(hermite_poly(2, x), x**2 - 1.0)

    def test_negative_degree(self):
        """Test that negative degrees are refused."""
        with pytest.raises(DomainError):
            hermite_poly(-1, 0.0)

    def test_coefficients_of_h2(self):
        """Test c(x² − 1) = (0, 1, 0)."""
        coefficients = hermite_coefficients(lambda x: x**2 - 1.0, 3)
        assert np.allclose(coefficients, [0.0, 1.0, 0.0], atol=1e-10)

    def test_coefficients_of_cube(self):
        """Test x³ = He_3 + 3 He_1."""
        coefficients = hermite_coefficients(lambda x: x**3, 3)
        assert np.allclose(coefficients, [3.0, 0.0, 1.0], atol=1e-10)

    def test_orthogonality(self):
        """Test that He_j has the unit coefficient vector e_j for j <= 8."""
        for j in range(1, 9):
            expected = np.zeros(8)
            expected[j - 1] = 1.0
            assert np.allclose(hermite_coefficients(lambda x, j=j: hermite_poly(j, x), 8), expected, atol=1e-8)

    def test_absolute_value(self):
        """Test c_2 of |x| − √(2/π) against 1/√(2π) at two node counts."""
        g = lambda x: np.abs(x) - sqrt(2.0 / pi)
        coarse = hermite_coefficients(g, 2, nodes=64)
        fine = hermite_coefficients(g, 2, nodes=128)
        assert abs(fine[0]) < 1e-10
        assert fine[1] == pytest.approx(1.0 / sqrt(2.0 * pi), rel=1e-2)
        assert coarse[1] == pytest.approx(fine[1], rel=2e-2)

    def test_scalar_callable(self):
        """Test that scalar-only functions are evaluated node by node."""
        coefficients = hermite_coefficients(lambda x: float(x) ** 2 - 1.0, 2)
        assert np.allclose(coefficients, [0.0, 1.0], atol=1e-10)

    def test_too_few_nodes(self):
        """Test that nodes < 2·kmax is refused."""
        with pytest.raises(ConstantsError):
            hermite_coefficients(lambda x: x, 8, nodes=10)

    def test_non_finite(self):
        """Test that non-finite node values are refused."""
        with pytest.raises(ConstantsError):
            hermite_coefficients(lambda x: np.where(x > 0, np.inf, 0.0), 2)

    def test_ranks(self):
        """Test the rank of He_2, He_3 and cos(x) − e^{−1/2}."""
        assert hermite_rank(lambda x: x**2 - 1.0) == 2
        assert hermite_rank(lambda x: x**3 - 3.0 * x) == 3
        assert hermite_rank(lambda x: np.cos(x) - np.exp(-0.5)) == 2

    def test_rank_undetermined(self):
        """Test that a constant has no rank."""
        with pytest.raises(RankUndeterminedError):
            hermite_rank(lambda x: np.full_like(x, 5.0))


class TestNormalizationConstants:
    """Test suite for the closed-form constants."""

    def test_c_hermite_beta_identity(self):
        """Test c² q! β(H0 − ½, 2 − 2H0)^q = H(2H − 1)."""
        c = const_c_hermite(HermiteSpec.scalar(1, 0.7))
        assert c**2 * special.beta(0.2, 0.6) == pytest.approx(0.7 * 0.4, rel=1e-10)
        c = const_c_hermite(HermiteSpec.scalar(2, 0.6))
        assert c**2 * 2.0 * special.beta(0.3, 0.4) ** 2 == pytest.approx(0.6 * 0.2, rel=1e-10)

    def test_c_hermite_positive(self):
        """Test positivity over a grid of (q, H)."""
        for q in range(1, 5):
            for H in (0.55, 0.65, 0.75, 0.85, 0.95):
                assert const_c_hermite(HermiteSpec.scalar(q, H)) > 0.0

    def test_b_rosenblatt(self):
        """Test b_H at 3/4 and its vanishing near 1/2."""
        assert const_b_rosenblatt(0.75) == pytest.approx(4.0 / 7.0 * sqrt(2.0 / 3.0), rel=1e-12)
        assert const_b_rosenblatt(0.5 + 1e-9) < 1e-3
        assert 0.0 < const_b_rosenblatt(0.9) < np.inf

    def test_B_Hq(self):
        """Test B_{0.8,2} against the formula and the guard at q = 1."""
        h0 = 0.9
        shift = 1.6 + 0.2
        expected = 0.8 * 0.6 / sqrt((h0 - 0.5) * (4 * h0 - 3)) * gamma(shift) / (shift - 1.0)
        assert const_B_Hq(0.8, 2) == pytest.approx(expected, rel=1e-12)
        with pytest.raises(DomainError):
            const_B_Hq(0.6, 1)
        assert const_B_Hq(0.9, 1) > 0.0

    def test_b_sheet(self):
        """Test b = 1 for fBm and the product structure for d = 2."""
        assert const_b_sheet(HermiteSpec.scalar(1, 0.7)) == pytest.approx(1.0)
        single_a = const_b_sheet(HermiteSpec.scalar(2, 0.7))
        single_b = const_b_sheet(HermiteSpec.scalar(2, 0.8))
        assert 0.0 < single_a < np.inf
        assert const_b_sheet(HermiteSpec(2, (0.7, 0.8))) == pytest.approx(sqrt(2.0) * single_a * single_b)

    def test_c1_sheet(self):
        """Test c_{1,H} for d = 1 against the written-out formula."""
        assert const_c1_sheet(HermiteSpec.scalar(2, 0.8)) == pytest.approx(c1_formula(2, 0.8), rel=1e-12)
        assert const_c1_sheet(HermiteSpec.scalar(3, 0.7)) == pytest.approx(c1_formula(3, 0.7), rel=1e-12)

    def test_c1_sheet_two_axes(self):
        """Test that equal axes give c_{1,H}(d=2) = 2 c_{1,H}(d=1)²."""
        single = const_c1_sheet(HermiteSpec.scalar(2, 0.8))
        assert const_c1_sheet(HermiteSpec(2, (0.8, 0.8))) == pytest.approx(2.0 * single**2, rel=1e-12)
        assert const_c1_sheet(HermiteSpec.scalar(2, 0.8), d=2) == pytest.approx(2.0 * single**2, rel=1e-12)

    def test_c1_sheet_guard(self):
        """Test the guard for q = 1, H <= 3/4."""
        with pytest.raises(DomainError):
            const_c1_sheet(HermiteSpec.scalar(1, 0.7))
        assert const_c1_sheet(HermiteSpec.scalar(1, 0.8)) > 0.0

    def test_ou_variance(self):
        """Test a^{−2H} H Γ(2H)."""
        assert hermite_ou_stationary_variance(1.0, 0.7) == pytest.approx(0.7 * gamma(1.4))
        assert hermite_ou_stationary_variance(2.0, 0.7) == pytest.approx(2.0**-1.4 * 0.7 * gamma(1.4))

    def test_qv_exponent(self):
        """Test the three regimes of the quadratic-variation rate."""
        assert qv_fluctuation_exponent(1, 0.6) == pytest.approx(0.5)
        assert qv_fluctuation_exponent(1, 0.9) == pytest.approx(0.2)
        assert qv_fluctuation_exponent(2, 0.8) == pytest.approx(0.2)

    def test_vasicek_rates(self):
        """Test the drift-estimator regimes."""
        assert vasicek_fluctuation_rates(2, 0.7) == pytest.approx((0.3, 0.3, 0.0))
        assert vasicek_fluctuation_rates(1, 0.6) == pytest.approx((0.5, 0.4, 0.0))
        assert vasicek_fluctuation_rates(1, 0.75).log_power == pytest.approx(0.5)
        assert vasicek_fluctuation_rates(1, 0.9).a_exponent == pytest.approx(0.2)

    def test_vasicek_limit_scale(self):
        """Test the non-central scale of the drift-estimator limit."""
        scale = vasicek_limit_scale(1.0, 0.8, 2)
        assert scale.a_scale == pytest.approx(const_B_Hq(0.8, 2) / (2 * 0.64 * gamma(1.6)))
        assert scale.b_scale == pytest.approx(1.0)


class TestSingularQuadrature:
    """Test suite for the power-kernel quadratures."""

    def test_spec_validation(self):
        """Test that fewer than 8 points per axis is refused."""
        with pytest.raises(DomainError):
            QuadratureSpec(points_per_axis=4)

    def test_flat_kernel(self):
        """Test the exponent-0 form on the unit square."""
        assert power_kernel_form([1.0, 1.0], 0.5, 0.0) == pytest.approx(1.0)

    def test_indicator_norm(self):
        """Test ‖1_[0,t]‖²_H = t^{2H}."""
        for t in (0.5, 1.0, 2.0):
            value = weighted_norm_H(lambda u: np.ones_like(u), 0.7, (0.0, t))
            assert value == pytest.approx(t**1.4, rel=1e-8)

    def test_exponential_norm(self):
        """Test ‖e^{−u}‖²_H = HΓ(2H) at H = 3/4."""
        assert weighted_norm_H(exponential, 0.75, (0.0, np.inf)) == pytest.approx(0.75 * sqrt(pi) / 2, rel=1e-3)

    def test_zero_norm(self):
        """Test that the zero function has norm 0."""
        assert weighted_norm_H(lambda u: 0.0, 0.7) == 0.0

    def test_norm_domain(self):
        """Test that H <= 1/2 is refused."""
        with pytest.raises(DomainError):
            weighted_norm_H(exponential, 0.5)

    def test_b_mavg_exponential(self):
        """Test b(0.7, 2) for e^{−u} against the reduction ∬ e^{−u−v}|u−v|^e = Γ(e + 1)."""
        h0 = 0.85
        exponent = 2.0 * h0 - 2.0
        expected = 0.7 * 0.4 / sqrt((h0 - 0.5) * (4 * h0 - 3)) * gamma(exponent + 1.0)
        assert const_b_mavg(0.7, 2, exponential) == pytest.approx(expected, rel=1e-3)

    def test_b_mavg_bilinear(self):
        """Test b(H, q) for the zero kernel and for a doubled kernel."""
        assert const_b_mavg(0.7, 2, lambda u: 0.0) == 0.0
        single = const_b_mavg(0.7, 2, exponential)
        assert const_b_mavg(0.7, 2, lambda u: 2.0 * exponential(u)) == pytest.approx(4.0 * single, rel=1e-10)

    def test_b_mavg_guard(self):
        """Test that q = 1 needs H > 3/4."""
        with pytest.raises(DomainError):
            const_b_mavg(0.7, 1, exponential)

    def test_sigma_inner_integral(self):
        """Test the closed form against algebraic-weight quadrature and at x = 0."""
        H, x = 0.6, 1.5
        s = 2.0 * H - 2.0
        left, _ = integrate.quad(lambda w: np.exp(-abs(w)), x - 40.0, x, weight="alg", wvar=(0.0, s))
        right, _ = integrate.quad(lambda w: np.exp(-abs(w)), x, x + 40.0, weight="alg", wvar=(s, 0.0))
        assert sigma_inner_integral(H, x) == pytest.approx(0.5 * (left + right), rel=1e-6)
        assert sigma_inner_integral(H, 0.0) == pytest.approx(gamma(s + 1.0), rel=1e-10)

    def test_sigma_inner_integral_even(self):
        """Test that I(x) is even."""
        assert sigma_inner_integral(0.6, -2.3) == pytest.approx(sigma_inner_integral(0.6, 2.3), rel=1e-12)

    def test_sigma_H(self):
        """Test that σ_H converges and is stable under the truncation start."""
        default = const_sigma_H(0.6)
        shifted = const_sigma_H(0.6, QuadratureSpec(tail_cutoff=40.0))
        assert 0.0 < default.value < np.inf
        assert default.error < 1e-3 * default.value
        assert shifted.value == pytest.approx(default.value, rel=1e-3)
        assert 0.0 < const_sigma_H(0.74).value < np.inf

    def test_sigma_H_domain(self):
        """Test that H >= 3/4 is refused."""
        with pytest.raises(DomainError):
            const_sigma_H(0.75)
