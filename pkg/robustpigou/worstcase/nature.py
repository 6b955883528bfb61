import numpy as np

from robustpigou.errors import MissingBound
from robustpigou.core import Scenario, Sign, surplus
from robustpigou.mechanism import schedule_stats
from robustpigou.structs import (
    AllocationSchedule,
    ConditionalMean,
    MeanClass,
    MEAN_TOL,
)


def signed(scenario: Scenario, value: float) -> float:
    """Externalities enter welfare with a plus sign for benefits and a minus sign for harms."""
    return value if scenario.sign is Sign.POSITIVE else -value


def tail_shares(weights: np.ndarray, alpha: float, upper: bool = False):
    """
    Probability mass each atom contributes to the lowest (or highest) α of the distribution.

    The atom straddling the α quantile is split proportionally, so the shares
    sum to α exactly and the tail functional is exact for step schedules.

    Args:
        weights (np.ndarray): Type probabilities f_i.
        alpha (float): Tail mass in [0, 1].
        upper (bool): Take the upper tail instead of the lower one.

    Returns:
        np.ndarray: Share of each atom in the tail.
    """
    w = weights[::-1] if upper else weights
    reach = np.cumsum(w)
    shares = np.clip(np.minimum(reach, alpha) - (reach - w), 0.0, None)
    return shares[::-1] if upper else shares


def worst_case_externality(
    schedule: AllocationSchedule,
    scenario: Scenario,
) -> float:
    """
    Signed externality term under Nature's worst conditional mean.

    Positive sign: μ·min q when Nature is free to concentrate on low types
    (Unknown, NegativeCorr), μ·mean q when m must be nondecreasing.
    Negative sign mirrors this with −μ·max q and −μ·mean q.

    Args:
        schedule (AllocationSchedule): The regulator's allocation.
        scenario (Scenario): Market primitives and benchmark.

    Returns:
        float: The externality contribution to worst-case welfare.
    """
    stats = schedule_stats(schedule, scenario)
    if not scenario.concentrating:
        return signed(scenario, scenario.mu * stats.mean)
    if scenario.sign is Sign.POSITIVE:
        return scenario.mu * stats.min
    return -scenario.mu * stats.max


def worst_case_bounded(
    schedule: AllocationSchedule,
    scenario: Scenario,
) -> float:
    """
    Worst-case externality when the externality is known to lie in [0, ξ̄].

    Nature puts m = ξ̄ on a tail of mass α = μ/ξ̄: the lower tail for benefits,
    the upper tail for harms, giving ξ̄·∫₀^α q(F⁻¹(u)) du (resp. its upper-tail
    mirror). In the two Chebyshev cells the bound does not bind and the value
    is ±μ·mean q.

    Raises:
        MissingBound: If the scenario carries no `xi_bar`.
    """
    if scenario.xi_bar is None:
        raise MissingBound("worst_case_bounded requires 'xi_bar'.")

    weights = scenario.types.weights
    if not scenario.concentrating:
        return signed(
            scenario, scenario.mu * float(np.dot(weights, schedule.values))
        )
    if scenario.mu == 0:
        return 0.0

    alpha = min(scenario.mu / scenario.xi_bar, 1.0)
    shares = tail_shares(
        weights, alpha, upper=scenario.sign is Sign.NEGATIVE
    )
    return signed(
        scenario, scenario.xi_bar * float(np.dot(shares, schedule.values))
    )


def _extreme_averages(
    q: np.ndarray,
    weights: np.ndarray,
    mean_class: MeanClass,
):
    """
    Σ f m q / μ for each extreme point of the conditional-mean polytope.

    ANY: unit atoms. NONINCREASING: scaled lower indicators 1{i ≤ k}.
    NONDECREASING: scaled upper indicators 1{i ≥ k}. Also returns the scale
    factor each extreme point applies to μ.
    """
    if mean_class is MeanClass.ANY:
        return q.copy(), 1.0 / weights

    if mean_class is MeanClass.NONINCREASING:
        mass = np.cumsum(weights)
        return np.cumsum(weights * q) / mass, 1.0 / mass

    mass = np.cumsum(weights[::-1])[::-1]
    return np.cumsum((weights * q)[::-1])[::-1] / mass, 1.0 / mass


def _extreme_strategy(
    index: int,
    scale: float,
    n: int,
    mean_class: MeanClass,
) -> np.ndarray:
    m = np.zeros(n)
    if mean_class is MeanClass.ANY:
        m[index] = scale
    elif mean_class is MeanClass.NONINCREASING:
        m[: index + 1] = scale
    else:
        m[index:] = scale
    return m


def nature_best_response(
    schedule: AllocationSchedule,
    scenario: Scenario,
) -> ConditionalMean:
    """
    An explicit conditional mean attaining the worst case.

    Without a support bound the search runs over the extreme points of the
    benchmark's polytope and returns the first minimizer (maximizer for
    harms). With a bound, the concentrating cells return the tail indicator
    m = ξ̄ on the α-tail; the Chebyshev cells search the extreme points whose
    scale stays below ξ̄.

    Args:
        schedule (AllocationSchedule): The regulator's allocation.
        scenario (Scenario): Market primitives and benchmark.

    Returns:
        ConditionalMean: Nature's strategy, in the benchmark's class.
    """
    weights = scenario.types.weights
    q = schedule.values
    mean_class = scenario.mean_class
    mu = scenario.mu

    if scenario.xi_bar is not None and scenario.concentrating and mu > 0:
        alpha = min(mu / scenario.xi_bar, 1.0)
        shares = tail_shares(
            weights, alpha, upper=scenario.sign is Sign.NEGATIVE
        )
        return ConditionalMean(
            values=scenario.xi_bar * shares / weights,
            mean_class=mean_class,
        )

    averages, scales = _extreme_averages(q, weights, mean_class)
    admissible = weights > 0
    if scenario.xi_bar is not None:
        admissible &= mu * scales <= scenario.xi_bar + MEAN_TOL

    if scenario.sign is Sign.POSITIVE:
        ranked = np.where(admissible, averages, np.inf)
        index = int(np.argmin(ranked))
    else:
        ranked = np.where(admissible, averages, -np.inf)
        index = int(np.argmax(ranked))

    return ConditionalMean(
        values=_extreme_strategy(
            index, mu * scales[index], q.size, mean_class
        ),
        mean_class=mean_class,
    )


def externality_under(
    m: ConditionalMean,
    schedule: AllocationSchedule,
    scenario: Scenario,
) -> float:
    """Signed E_f[m·q] for a given Nature strategy."""
    return signed(
        scenario, m.expected_product(scenario.types.weights, schedule.values)
    )


def worst_case_welfare(
    schedule: AllocationSchedule,
    scenario: Scenario,
) -> float:
    """
    The regulator's max-min objective evaluated at one schedule.

    Σ f_i [u(q_i, θ_i) − c·q_i] plus the worst-case externality; the bounded
    variant is used whenever the scenario carries `xi_bar`.

    Raises:
        MissingBound: Propagated from the bounded variant.
    """
    private = float(surplus(schedule.values, scenario))
    if scenario.xi_bar is not None:
        return private + worst_case_bounded(schedule, scenario)
    return private + worst_case_externality(schedule, scenario)
