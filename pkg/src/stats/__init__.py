from .stats_error import EstimationError, GridMismatchError, StatsError
from .increments import IncrementCell, generalized_increment, lattice_increments, qv_limit_statistic, quadratic_variation
from .variations import estimate_hurst_qv
from .functionals import moving_average_second_moment, quadratic_functional_GT
from .vasicek import VasicekEstimate, restrict, vasicek_estimators
from .cumulants import CumulantEstimate, empirical_cumulants
from .report import CheckResult, McReport, VerificationReport
from .harness import NUMERICAL_ERRORS, Experiment, run_replications, verify
from .conjecture import CONJECTURE_POINTS, CONJECTURE_VALUES, ProbeResult, rosenblatt_cdf_probe
from .experiment_factory import ExperimentFactory
