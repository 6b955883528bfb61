import numpy as np

from robustpigou.errors import Unsupported, WrongUtility
from robustpigou.core import (
    Benchmark,
    LinearUnitDemand,
    Scenario,
    Sign,
    TypeDistribution,
    grid_demand,
    laissez_faire,
)
from robustpigou.worstcase import worst_case_welfare
from robustpigou.structs import (
    AllocationSchedule,
    ConditionalMean,
    Policy,
    PolicyKind,
    MEAN_TOL,
)
from robustpigou.utils.logger import SystemLogger

INDIFFERENCE_NOTE = "indifferent across a continuum of allocations"


def mandate_threshold(c: float, types: TypeDistribution) -> float:
    """
    Average allocative loss of a mandate, E_F[(c − θ)₊].
    """
    return types.expectation(np.maximum(c - types.grid, 0.0))


def ban_threshold(c: float, types: TypeDistribution) -> float:
    """
    Average surplus destroyed by a ban, E_F[(θ − c)₊].
    """
    return types.expectation(np.maximum(types.grid - c, 0.0))


def mandate_guarantee(scenario: Scenario) -> float:
    """Worst-case welfare of q ≡ 1 under a benefit: E_F[θ − c] + μ."""
    return scenario.types.mean - scenario.cost + scenario.mu


def laissez_faire_guarantee(scenario: Scenario) -> float:
    """Worst-case welfare of q = 1{θ > c} under a benefit with unknown correlation."""
    lowest_buys = scenario.types.lowest > scenario.cost
    return ban_threshold(scenario.cost, scenario.types) + (
        scenario.mu if lowest_buys else 0.0
    )


def _check_unit_demand(scenario: Scenario) -> None:
    if not isinstance(scenario.utility, LinearUnitDemand):
        raise WrongUtility(
            "Vaccine policies are defined for unit demand only."
        )
    if scenario.xi_bar is not None:
        raise Unsupported("Support bounds are not modeled for unit demand.")


def _policy(kind, parameter, values, scenario, notes=()) -> Policy:
    schedule = AllocationSchedule(values=values, cap=scenario.cap)
    return Policy(
        kind=kind,
        parameter=parameter,
        schedule=schedule,
        guarantee=worst_case_welfare(schedule, scenario),
        notes=tuple(notes),
    )


def robust_vaccine_policy(scenario: Scenario) -> Policy:
    """
    Robust policy for a unit-demand good with an externality.

    Benefits with unknown or negative correlation: mandate when μ reaches
    `mandate_threshold`, laissez-faire otherwise. Benefits with positive
    correlation: subsidy μ, so q = 1{θ > c − μ}. Harms mirror this with a ban
    against `ban_threshold` and a tax μ under negative correlation. At the
    threshold itself the regulator is indifferent; the corner instrument is
    returned with a note.

    Args:
        scenario (Scenario): Unit-demand market primitives.

    Returns:
        Policy: Mandate, Ban, LaissezFaire, UniformSubsidy or UniformTax.

    Raises:
        WrongUtility: For any other utility family.
        Unsupported: When a support bound is set.
    """
    _check_unit_demand(scenario)
    logger = SystemLogger.get_logger()
    c, mu, n = scenario.cost, scenario.mu, scenario.types.n

    if scenario.sign is Sign.POSITIVE:
        if scenario.benchmark is Benchmark.POSITIVE_CORR:
            return _policy(
                PolicyKind.UNIFORM_SUBSIDY,
                mu,
                grid_demand(scenario, c - mu),
                scenario,
            )
        threshold = mandate_threshold(c, scenario.types)
        corner_kind, corner_values = PolicyKind.MANDATE, np.ones(n)
    else:
        if scenario.benchmark is Benchmark.NEGATIVE_CORR:
            return _policy(
                PolicyKind.UNIFORM_TAX,
                mu,
                grid_demand(scenario, c + mu),
                scenario,
            )
        threshold = ban_threshold(c, scenario.types)
        corner_kind, corner_values = PolicyKind.BAN, np.zeros(n)

    logger.debug(f"unit-demand threshold={threshold:.12g} mu={mu:.12g}")
    if abs(mu - threshold) <= MEAN_TOL:
        return _policy(
            corner_kind, None, corner_values, scenario, (INDIFFERENCE_NOTE,)
        )
    if mu > threshold:
        return _policy(corner_kind, None, corner_values, scenario)
    return _policy(
        PolicyKind.LAISSEZ_FAIRE,
        None,
        laissez_faire(scenario).values,
        scenario,
    )


def bayesian_mandate_condition(
    scenario: Scenario,
    m: ConditionalMean,
) -> bool:
    """
    Whether a regulator who knows m(θ) would mandate the good.

    True iff every prefix sum Σ_{i≤k} f_i (θ_i − c + m_i) is nonnegative
    (within 1e−9). Implies μ ≥ `mandate_threshold`, never conversely in
    general.
    """
    types = scenario.types
    prefix = np.cumsum(
        types.weights * (types.grid - scenario.cost + m.values)
    )
    return bool(np.all(prefix >= -MEAN_TOL))
