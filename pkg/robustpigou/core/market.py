import numpy as np

from robustpigou.structs import AllocationSchedule
from robustpigou.core.utility import UtilityModel
from robustpigou.core.scenario import Scenario


def demand(price, theta, model: UtilityModel, cap: float):
    """
    Quantity an agent of type θ buys at a per-unit price.

    Args:
        price (float | np.ndarray): Per-unit price p.
        theta (float | np.ndarray): Agent type(s).
        model (UtilityModel): Utility family.
        cap (float): Quantity cap A > 0.

    Returns:
        float | np.ndarray: argmax over q ∈ [0, cap] of u(q, θ) − p·q.
    """
    if cap <= 0:
        raise ValueError("'cap' must be greater than zero.")
    return model.demand(price, theta, cap)


def grid_demand(scenario: Scenario, prices) -> np.ndarray:
    """Demand at every grid type; `prices` is a scalar or one price per type."""
    return np.broadcast_to(
        demand(prices, scenario.types.grid, scenario.utility, scenario.cap),
        scenario.types.grid.shape,
    ).astype(float)


def laissez_faire(scenario: Scenario) -> AllocationSchedule:
    """
    The no-intervention allocation: every type buys at marginal cost.

    Args:
        scenario (Scenario): Market primitives.

    Returns:
        AllocationSchedule: q(θ_i) = demand(c, θ_i).
    """
    return AllocationSchedule(
        values=grid_demand(scenario, scenario.cost),
        cap=scenario.cap,
    )


def surplus(values: np.ndarray, scenario: Scenario) -> np.ndarray:
    """
    Private surplus Σ f_i [u(q_i, θ_i) − c·q_i] along the last axis.

    Accepts a single schedule or a stack of schedules, one per row.
    """
    grid = scenario.types.grid
    per_type = scenario.utility.value(values, grid) - scenario.cost * values
    return per_type @ scenario.types.weights
