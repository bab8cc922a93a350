from .hermite_paths import lattice_scale, lattice_variance, sample_fbm, sample_hermite_marginal, sample_hermite_path
from .integrals import sample_moving_average, sample_vasicek, wiener_integral
from .kernels import partial1_KH, volterra_constant, volterra_kernel_KH
from .path_io import field_envelope, path_envelope, read_path_csv, write_field_csv, write_path_csv
from .path_types import Normalization, ProcessKind
from .rosenblatt_grid import (
    GramDesign,
    rosenblatt_f_design,
    rosenblatt_g_design,
    sample_rosenblatt_grid,
    sample_rosenblatt_marginal,
)
from .sample_types import FieldSample, LatticeConfig, SamplePath
from .sheets import sample_hermite_sheet
from .simulation_error import SimulationError
