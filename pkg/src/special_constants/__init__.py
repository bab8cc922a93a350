from .constants_error import ConstantsError, DomainError, QuadratureError, RankUndeterminedError
from .hermite import hermite_coefficients, hermite_poly, hermite_rank
from .hermite_spec import HermiteSpec
from .normalization import (
    FluctuationRates,
    LimitScale,
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
from .quadrature import (
    DEFAULT_QUADRATURE,
    QuadratureResult,
    QuadratureSpec,
    const_b_mavg,
    const_sigma_H,
    power_kernel_form,
    sigma_inner_integral,
    singular_double_integral,
    weighted_norm_H,
)
from .quadrature_types import QuadratureScheme
