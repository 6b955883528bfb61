import numpy as np
from scipy.optimize import linprog

from robustpigou.errors import RobustPigouError
from robustpigou.core import Scenario, Sign
from robustpigou.structs import AllocationSchedule, MeanClass


def lp_inner_value(schedule: AllocationSchedule, scenario: Scenario) -> float:
    """
    Nature's inner problem solved as a generic linear program.

    Variables are the conditional means m_i ≥ 0 (≤ ξ̄ under a support bound)
    with Σ f_i m_i = μ and the benchmark's monotonicity written as pairwise
    inequalities. Used to cross-check the closed forms on small grids.

    Returns:
        float: Signed worst-case externality.

    Raises:
        RobustPigouError: If the solver does not report an optimum.
    """
    weights = scenario.types.weights
    q = schedule.values
    n = q.size
    positive = scenario.sign is Sign.POSITIVE

    objective = weights * q if positive else -(weights * q)

    a_ub, b_ub = None, None
    if scenario.mean_class is not MeanClass.ANY and n > 1:
        steps = np.zeros((n - 1, n))
        rows = np.arange(n - 1)
        # nondecreasing: m_i − m_{i+1} ≤ 0
        steps[rows, rows] = 1.0
        steps[rows, rows + 1] = -1.0
        if scenario.mean_class is MeanClass.NONINCREASING:
            steps = -steps
        a_ub, b_ub = steps, np.zeros(n - 1)

    result = linprog(
        objective,
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=weights[None, :],
        b_eq=[scenario.mu],
        bounds=[(0.0, scenario.xi_bar)] * n,
        method="highs",
    )
    if result.status != 0:
        raise RobustPigouError(f"linear program failed: {result.message}")
    return float(result.fun)
