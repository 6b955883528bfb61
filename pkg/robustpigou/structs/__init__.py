from .constants import PROB_TOL, MONO_TOL, BISECT_XTOL, MEAN_TOL
from .schedule import AllocationSchedule, ScheduleStats
from .mechanism import Mechanism
from .conditional_mean import ConditionalMean, MeanClass
from .policy import Policy, PolicyKind
from .report import RunReport

__all__ = [
    # constants
    "PROB_TOL",
    "MONO_TOL",
    "BISECT_XTOL",
    "MEAN_TOL",
    # schedule
    "AllocationSchedule",
    "ScheduleStats",
    # mechanism
    "Mechanism",
    # conditional_mean
    "ConditionalMean",
    "MeanClass",
    # policy
    "Policy",
    "PolicyKind",
    # report
    "RunReport",
]
