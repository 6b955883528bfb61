from .quantization import Quantization, MAX_TYPES, MAX_LEVELS, MAX_SCHEDULES
from .bruteforce import (
    enumerate_schedules,
    inner_values,
    inner_min,
    minimax_bruteforce,
    quantization_gap,
    OracleReport,
    certify,
)
from .lp import lp_inner_value
from .sequences import feasible_sequence_orders, nature_sequence

__all__ = [
    # quantization
    "Quantization",
    "MAX_TYPES",
    "MAX_LEVELS",
    "MAX_SCHEDULES",
    # bruteforce
    "enumerate_schedules",
    "inner_values",
    "inner_min",
    "minimax_bruteforce",
    "quantization_gap",
    "OracleReport",
    "certify",
    # lp
    "lp_inner_value",
    # sequences
    "feasible_sequence_orders",
    "nature_sequence",
]
