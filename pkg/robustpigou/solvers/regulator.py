import numpy as np
from typing import Optional, Tuple

from robustpigou.errors import MissingBound, Unsupported, WrongRegime
from robustpigou.core import (
    Benchmark,
    Scenario,
    Sign,
    grid_demand,
    laissez_faire,
)
from robustpigou.worstcase import tail_shares, worst_case_welfare
from robustpigou.solvers.ironing import pool_adjacent_violators
from robustpigou.structs import AllocationSchedule, Policy, PolicyKind
from robustpigou.utils.logger import SystemLogger
from robustpigou.utils.roots import find_root


def _policy(
    kind: PolicyKind,
    parameter: Optional[float],
    values: np.ndarray,
    scenario: Scenario,
    foc_residual: Optional[float] = None,
    iterations: int = 0,
    notes: Tuple[str, ...] = (),
) -> Policy:
    schedule = AllocationSchedule(values=values, cap=scenario.cap)
    return Policy(
        kind=kind,
        parameter=parameter,
        schedule=schedule,
        guarantee=worst_case_welfare(schedule, scenario),
        foc_residual=foc_residual,
        iterations=iterations,
        notes=tuple(notes),
    )


def _require_cell(scenario: Scenario, cells: set, instrument: str) -> None:
    if (scenario.sign, scenario.benchmark) not in cells:
        raise WrongRegime(
            f"A {instrument} is not optimal for sign={scenario.sign.value}, "
            f"benchmark={scenario.benchmark.value}."
        )


def require_strict_concavity(scenario: Scenario) -> None:
    if not scenario.utility.strictly_concave:
        raise Unsupported(
            f"{scenario.utility.family.value} utility is handled by the applications module."
        )


def floor_condition(floor: float, scenario: Scenario, lf: np.ndarray) -> float:
    """
    E_F[(c − u_q(q̲, θ))·1{q^LF(θ) < q̲}], nondecreasing in the floor.
    """
    binding = lf < floor
    grid = scenario.types.grid[binding]
    return float(
        np.dot(
            scenario.types.weights[binding],
            scenario.cost - scenario.utility.marginal(floor, grid),
        )
    )


def ceiling_condition(
    ceiling: float, scenario: Scenario, lf: np.ndarray
) -> float:
    """
    E_F[(u_q(q̄, θ) − c)·1{q^LF(θ) > q̄}], nonincreasing in the ceiling.
    """
    binding = lf > ceiling
    grid = scenario.types.grid[binding]
    return float(
        np.dot(
            scenario.types.weights[binding],
            scenario.utility.marginal(ceiling, grid) - scenario.cost,
        )
    )


def solve_floor(scenario: Scenario) -> Policy:
    """
    Optimal quantity floor for benefits whose correlation with types is unknown or negative.

    The floor equates the expected marginal surplus lost on constrained types
    with μ. The left-hand side is nondecreasing in the floor, so bisection on
    [q^LF(θ_1), A] is exact up to `BISECT_XTOL`. When even the smallest binding
    floor overshoots μ the floor is non-binding; when the condition stays below
    μ up to A the corner q̲ = A is returned.

    Args:
        scenario (Scenario): Positive sign, Unknown or NegativeCorr benchmark.

    Returns:
        Policy: Floor(q̲) with schedule max{q^LF, q̲}.

    Raises:
        WrongRegime: For any other sign/benchmark cell.
        Unsupported: For utility families that are not strictly concave.
    """
    _require_cell(
        scenario,
        {
            (Sign.POSITIVE, Benchmark.UNKNOWN),
            (Sign.POSITIVE, Benchmark.NEGATIVE_CORR),
        },
        "quantity floor",
    )
    require_strict_concavity(scenario)
    logger = SystemLogger.get_logger()

    lf = laissez_faire(scenario).values
    mu, cap = scenario.mu, scenario.cap
    lower = float(lf[0])
    notes, residual, iterations = [], None, 0

    def excess(floor: float) -> float:
        return floor_condition(floor, scenario, lf) - mu

    if mu == 0 or lower >= cap:
        floor = lower
        notes.append("non-binding")
    else:
        at_lowest = lf <= lower
        right_limit = float(
            np.dot(
                scenario.types.weights[at_lowest],
                scenario.cost
                - scenario.utility.marginal(
                    lower, scenario.types.grid[at_lowest]
                ),
            )
        )
        if right_limit >= mu:
            floor = lower
            notes.append("non-binding")
        elif excess(cap) <= 0:
            floor = cap
            notes.append("corner")
        else:
            floor, iterations = find_root(excess, lower, cap)
            residual = excess(floor)

    logger.debug(f"floor={floor:.12g} notes={notes}")
    return _policy(
        PolicyKind.FLOOR,
        floor,
        np.maximum(lf, floor),
        scenario,
        foc_residual=residual,
        iterations=iterations,
        notes=notes,
    )


def solve_ceiling(scenario: Scenario) -> Policy:
    """
    Optimal quantity ceiling for harms whose correlation with types is unknown or positive.

    Mirrors the floor: q̄ solves E_F[(u_q(q̄, θ) − c)·1{q^LF(θ) > q̄}] = μ, a
    condition that is nonincreasing in the ceiling. q̄ = 0 is a ban.

    Raises:
        WrongRegime: For any other sign/benchmark cell.
        Unsupported: For utility families that are not strictly concave.
    """
    _require_cell(
        scenario,
        {
            (Sign.NEGATIVE, Benchmark.UNKNOWN),
            (Sign.NEGATIVE, Benchmark.POSITIVE_CORR),
        },
        "quantity ceiling",
    )
    require_strict_concavity(scenario)
    logger = SystemLogger.get_logger()

    lf = laissez_faire(scenario).values
    mu = scenario.mu
    upper = float(lf[-1])
    notes, residual, iterations = [], None, 0

    def excess(ceiling: float) -> float:
        return ceiling_condition(ceiling, scenario, lf) - mu

    if mu == 0 or upper <= 0:
        ceiling = upper
        notes.append("non-binding")
    else:
        at_highest = lf >= upper
        left_limit = float(
            np.dot(
                scenario.types.weights[at_highest],
                scenario.utility.marginal(
                    upper, scenario.types.grid[at_highest]
                )
                - scenario.cost,
            )
        )
        if left_limit >= mu:
            ceiling = upper
            notes.append("non-binding")
        elif excess(0.0) <= 0:
            ceiling = 0.0
            notes.append("ban")
        else:
            ceiling, iterations = find_root(excess, 0.0, upper)
            residual = excess(ceiling)

    logger.debug(f"ceiling={ceiling:.12g} notes={notes}")
    return _policy(
        PolicyKind.CEILING,
        ceiling,
        np.minimum(lf, ceiling),
        scenario,
        foc_residual=residual,
        iterations=iterations,
        notes=notes,
    )


def solve_price(scenario: Scenario) -> Policy:
    """
    Uniform Pigouvian wedge for the two Chebyshev cells.

    A subsidy of μ when benefits rise with the type, a tax of μ when harms
    fall with it; the schedule is demand at c ∓ μ.

    Raises:
        WrongRegime: Outside (Positive, PositiveCorr) and (Negative, NegativeCorr).
    """
    cell = (scenario.sign, scenario.benchmark)
    if cell == (Sign.POSITIVE, Benchmark.POSITIVE_CORR):
        kind, price = PolicyKind.UNIFORM_SUBSIDY, scenario.cost - scenario.mu
    elif cell == (Sign.NEGATIVE, Benchmark.NEGATIVE_CORR):
        kind, price = PolicyKind.UNIFORM_TAX, scenario.cost + scenario.mu
    else:
        raise WrongRegime(
            f"A uniform price is not optimal for sign={scenario.sign.value}, "
            f"benchmark={scenario.benchmark.value}."
        )
    return _policy(kind, scenario.mu, grid_demand(scenario, price), scenario)


def solve_shortfall(scenario: Scenario) -> Policy:
    """
    Optimal policy when the externality is also known to lie in [0, ξ̄].

    On monotone schedules Nature's tail functional is linear with per-type
    weight ξ̄·share_i/f_i, so the regulator faces a type-specific price
    c ∓ wedge_i. Pointwise demand at those prices is ironed into a monotone
    schedule by pooling adjacent violators. When the tail fits inside the
    lowest atom the result coincides with the quantity floor.

    Raises:
        MissingBound: Without `xi_bar`.
        WrongRegime: In the Chebyshev cells, where the bound never binds.
        Unsupported: For utility families that are not strictly concave.
    """
    if scenario.xi_bar is None:
        raise MissingBound("solve_shortfall requires 'xi_bar'.")
    if not scenario.concentrating:
        raise WrongRegime(
            "The support bound does not bind in the Chebyshev cells."
        )
    require_strict_concavity(scenario)

    weights = scenario.types.weights
    positive = scenario.sign is Sign.POSITIVE
    if scenario.mu > 0:
        alpha = min(scenario.mu / scenario.xi_bar, 1.0)
        wedge = (
            scenario.xi_bar * tail_shares(weights, alpha, upper=not positive)
        ) / weights
    else:
        wedge = np.zeros_like(weights)

    prices = scenario.cost - wedge if positive else scenario.cost + wedge
    values, pooled = pool_adjacent_violators(
        scenario.utility, prices, scenario.types, scenario.cap
    )
    return _policy(
        PolicyKind.TAIL_SUBSIDY if positive else PolicyKind.TAIL_TAX,
        scenario.xi_bar,
        values,
        scenario,
        notes=("ironed",) if pooled else (),
    )


def solve(scenario: Scenario) -> Policy:
    """
    Dispatch to the optimal instrument for the scenario's sign and benchmark.

    (Positive, Unknown) and (Positive, NegativeCorr) get a floor,
    (Positive, PositiveCorr) a subsidy, (Negative, Unknown) and
    (Negative, PositiveCorr) a ceiling, (Negative, NegativeCorr) a tax. With a
    support bound the concentrating cells are solved by `solve_shortfall`.

    Raises:
        Unsupported: For unit demand, which the vaccines application covers.
    """
    require_strict_concavity(scenario)
    logger = SystemLogger.get_logger()
    logger.info(
        f"solving sign={scenario.sign.value} benchmark={scenario.benchmark.value} "
        f"n={scenario.types.n} mu={scenario.mu:.6g} xi_bar={scenario.xi_bar}"
    )

    if scenario.xi_bar is not None and scenario.concentrating:
        return solve_shortfall(scenario)
    if not scenario.concentrating:
        return solve_price(scenario)
    if scenario.sign is Sign.POSITIVE:
        return solve_floor(scenario)
    return solve_ceiling(scenario)
