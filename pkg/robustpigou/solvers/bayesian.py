import numpy as np

from robustpigou.core import Scenario, Sign, grid_demand
from robustpigou.solvers.ironing import pool_adjacent_violators
from robustpigou.solvers.regulator import require_strict_concavity
from robustpigou.structs import AllocationSchedule, ConditionalMean
from robustpigou.utils.logger import SystemLogger


def _wedge_prices(scenario: Scenario, m: ConditionalMean) -> np.ndarray:
    if m.values.shape != scenario.types.grid.shape:
        raise ValueError("'m' must align with the type grid.")
    if scenario.sign is Sign.POSITIVE:
        return scenario.cost - m.values
    return scenario.cost + m.values


def pointwise_demand(scenario: Scenario, m: ConditionalMean) -> np.ndarray:
    """
    Demand at the type-specific Pigouvian price c ∓ m_i, before any ironing.

    The result need not be monotone and is therefore returned as a plain array.
    """
    return grid_demand(scenario, _wedge_prices(scenario, m))


def bayesian_pointwise(
    scenario: Scenario,
    m: ConditionalMean,
) -> AllocationSchedule:
    """
    Allocation of a regulator who knows m(θ) and prices each type at its own expected externality.

    q_B(θ_i) = demand(c − m_i, θ_i) for benefits and demand(c + m_i, θ_i) for
    harms. If the wedge breaks monotonicity, adjacent violators are pooled
    into a common quantity so the comparator stays implementable; this is
    logged.

    Args:
        scenario (Scenario): Strictly concave market primitives.
        m (ConditionalMean): The known conditional mean.

    Returns:
        AllocationSchedule: The (ironed) Bayesian allocation.
    """
    require_strict_concavity(scenario)
    values, pooled = pool_adjacent_violators(
        scenario.utility,
        _wedge_prices(scenario, m),
        scenario.types,
        scenario.cap,
    )
    if pooled:
        SystemLogger.get_logger().info(
            "bayesian allocation ironed: pointwise wedge broke monotonicity"
        )
    return AllocationSchedule(values=values, cap=scenario.cap)
