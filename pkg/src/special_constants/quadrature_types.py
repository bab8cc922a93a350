from enum import Enum


class QuadratureScheme(Enum):
    """
    Enumeration of the singular double-integral schemes.
    """
    TENSOR_GAUSS_LEGENDRE_DIAGONAL_SPLIT = "tensor-gauss-legendre-diagonal-split"
