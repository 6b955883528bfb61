import numpy as np
from dataclasses import dataclass

from robustpigou.errors import NonMonotone, OutOfRange
from robustpigou.structs.constants import MONO_TOL


@dataclass(frozen=True, eq=False)
class AllocationSchedule:
    """
    A nondecreasing map from the type grid to quantities in [0, cap].

    Incentive compatibility admits exactly these schedules, so construction
    rejects anything else. Values within `MONO_TOL` outside [0, cap] are
    clipped onto the interval.

    Attributes:
        values (np.ndarray): Read-only quantities aligned with the type grid.
        cap (float): The quantity cap A.

    Raises:
        OutOfRange: At the first index outside [0, cap].
        NonMonotone: At the first index where the schedule decreases.
    """

    values: np.ndarray
    cap: float

    def __post_init__(self):
        if not isinstance(self.cap, (int, float)):
            raise TypeError("'cap' must be of type int or float.")
        values = np.array(self.values, dtype=float)
        if values.ndim != 1:
            raise ValueError("'values' must be one-dimensional.")

        outside = np.flatnonzero(
            ~np.isfinite(values)
            | (values < -MONO_TOL)
            | (values > self.cap + MONO_TOL)
        )
        if outside.size:
            raise OutOfRange(int(outside[0]))

        drops = np.flatnonzero(np.diff(values) < -MONO_TOL)
        if drops.size:
            raise NonMonotone(int(drops[0]) + 1)

        values = np.clip(values, 0.0, self.cap)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "cap", float(self.cap))

    def __len__(self) -> int:
        return int(self.values.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AllocationSchedule):
            return NotImplemented
        return self.cap == other.cap and np.array_equal(
            self.values, other.values
        )

    def to_list(self) -> list:
        return self.values.tolist()


@dataclass(frozen=True)
class ScheduleStats:
    """
    Summary of a schedule over positive-weight grid points.

    Attributes:
        min (float): Lowest quantity.
        max (float): Highest quantity.
        mean (float): Σ f_i q_i.
    """

    min: float
    max: float
    mean: float
