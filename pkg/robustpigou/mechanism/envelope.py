import numpy as np
from typing import List, Tuple

from robustpigou.core import Scenario
from robustpigou.structs import AllocationSchedule, Mechanism, MONO_TOL


def transfers_from_allocation(
    schedule: AllocationSchedule,
    scenario: Scenario,
    u0: float = 0.0,
) -> Mechanism:
    """
    Complete a schedule into a mechanism through the envelope identity.

    U(θ_1) = u0 and U(θ_{i+1}) = U(θ_i) + u_θ(q_i, θ_i)·(θ_{i+1} − θ_i), a
    left-Riemann sum of ∫u_θ along the allocation. Transfers follow as
    t_i = u(q_i, θ_i) − U(θ_i). Transfers are pinned only up to a constant,
    which is why `u0` is a parameter.

    Args:
        schedule (AllocationSchedule): A monotone allocation.
        scenario (Scenario): Supplies the grid and the utility family.
        u0 (float): Utility of the lowest type.

    Returns:
        Mechanism: The schedule with its transfers and induced utilities.
    """
    grid = scenario.types.grid
    q = schedule.values

    increments = scenario.utility.type_derivative(q[:-1], grid[:-1]) * np.diff(
        grid
    )
    utilities = u0 + np.concatenate(([0.0], np.cumsum(increments)))
    transfers = scenario.utility.value(q, grid) - utilities

    return Mechanism(
        schedule=schedule,
        transfers=transfers,
        utilities=utilities,
        u0=float(u0),
    )


def verify_ic(
    mechanism: Mechanism,
    scenario: Scenario,
) -> List[Tuple[int, int]]:
    """
    Exhaustive pairwise incentive-compatibility check on the grid.

    Args:
        mechanism (Mechanism): Allocation and transfers to check.
        scenario (Scenario): Supplies the grid and the utility family.

    Returns:
        List[Tuple[int, int]]: Pairs (i, j) where type i strictly prefers
        reporting θ_j by more than `MONO_TOL`.
    """
    grid = scenario.types.grid
    q = mechanism.schedule.values
    t = mechanism.transfers

    # payoff[i, j]: type i reporting j
    payoff = scenario.utility.value(q[None, :], grid[:, None]) - t[None, :]
    truthful = np.diag(payoff)
    rows, cols = np.nonzero(payoff > truthful[:, None] + MONO_TOL)
    return [(int(i), int(j)) for i, j in zip(rows, cols)]
