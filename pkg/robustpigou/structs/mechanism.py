import numpy as np
from dataclasses import dataclass

from robustpigou.structs.schedule import AllocationSchedule


@dataclass(frozen=True, eq=False)
class Mechanism:
    """
    An allocation schedule paired with envelope-consistent transfers.

    Attributes:
        schedule (AllocationSchedule): Quantities per grid point.
        transfers (np.ndarray): Payment t_i collected from each type.
        utilities (np.ndarray): Induced indirect utilities U(θ_i).
        u0 (float): Utility pinned for the lowest type, U(θ_1).
    """

    schedule: AllocationSchedule
    transfers: np.ndarray
    utilities: np.ndarray
    u0: float

    def __post_init__(self):
        if not isinstance(self.schedule, AllocationSchedule):
            raise TypeError("'schedule' must be of type AllocationSchedule.")
        if not isinstance(self.u0, (int, float)):
            raise TypeError("'u0' must be of type int or float.")

        transfers = np.array(self.transfers, dtype=float)
        utilities = np.array(self.utilities, dtype=float)
        if transfers.shape != self.schedule.values.shape:
            raise ValueError("'transfers' must align with the schedule.")
        if utilities.shape != self.schedule.values.shape:
            raise ValueError("'utilities' must align with the schedule.")

        transfers.setflags(write=False)
        utilities.setflags(write=False)
        object.__setattr__(self, "transfers", transfers)
        object.__setattr__(self, "utilities", utilities)
