from enum import Enum


class Command(Enum):
    SIMULATE = "simulate"
    ESTIMATE = "estimate"
    QV = "qv"
    GT = "gt"
    CUMULANTS = "cumulants"
    INFO = "info"
    CONJECTURE = "conjecture"
    VERIFY = "verify"


class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"


class ExitCode(Enum):
    SUCCESS = 0
    NUMERICAL_ERROR = 1
    USAGE = 2
    VERIFICATION_FAILED = 3
