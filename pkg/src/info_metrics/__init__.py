from .metrics_error import MetricsError
from .density_model import DEFAULT_GRID, DensityGrid, DensityModel, ProductDensityModel
from .density_factory import DensityFactory, standardize
from .divergences import entropy, fisher_information, relative_entropy, standardized_fisher, total_variation
from .de_bruijn import de_bruijn_gap, interpolated_fisher, require_standardized
from .inequalities import (
    InequalityRecord,
    InequalityReport,
    inequality_suite,
    multivariate_trace_bound,
    product_total_variation,
    sup_distance,
)
from .kde import kde_model, silverman_bandwidth
