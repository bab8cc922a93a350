from enum import Enum


class ProcessKind(Enum):
    """
    Enumeration of the generators a sample path can come from.
    """
    FBM = "fbm"
    HERMITE = "hermite"
    ROSENBLATT_GRID = "rosenblatt-grid"
    MOVING_AVERAGE = "moving-average"
    VASICEK = "vasicek"
    OBSERVED = "observed"


class Normalization(Enum):
    """
    Enumeration of lattice normalizations.
    """
    EXACT_FINITE_N = "exact-finite-n"
