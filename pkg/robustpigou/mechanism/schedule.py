import numpy as np
from typing import Sequence

from robustpigou.core import Scenario
from robustpigou.structs import AllocationSchedule, ScheduleStats


def make_schedule(
    values: Sequence[float],
    scenario: Scenario,
) -> AllocationSchedule:
    """
    Validate raw quantities against a scenario's grid and cap.

    Args:
        values (Sequence[float]): One quantity per grid point.
        scenario (Scenario): Supplies the grid length and the cap A.

    Returns:
        AllocationSchedule: The accepted schedule.

    Raises:
        ValueError: If `values` does not align with the type grid.
        OutOfRange: At the first quantity outside [0, A].
        NonMonotone: At the first decrease.
    """
    values = np.asarray(values, dtype=float)
    if values.shape != (scenario.types.n,):
        raise ValueError(
            f"Schedule has {values.size} values for a grid of {scenario.types.n} types."
        )
    return AllocationSchedule(values=values, cap=scenario.cap)


def schedule_stats(
    schedule: AllocationSchedule,
    scenario: Scenario,
) -> ScheduleStats:
    """
    Min and max over positive-weight points, and the mean Σ f_i q_i.
    """
    weights = scenario.types.weights
    support = schedule.values[weights > 0]
    return ScheduleStats(
        min=float(support.min()),
        max=float(support.max()),
        mean=float(np.dot(weights, schedule.values)),
    )
