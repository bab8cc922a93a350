from .cumulant_error import CumulantError
from .kernel_matrix import KernelMatrix, kernel_from_function, random_kernel
from .rosenblatt_pair import rosenblatt_kernel_pair
from .trace import cumulant_trace, cumulant_traces, sample_second_chaos, spectrum
