import numpy as np
from itertools import combinations_with_replacement
from joblib import Parallel, delayed
from typing import Iterator, List, Tuple
from dataclasses import dataclass

from robustpigou.core import Scenario, Sign, surplus
from robustpigou.oracle.quantization import Quantization
from robustpigou.structs import AllocationSchedule, MeanClass, MEAN_TOL
from robustpigou.utils.logger import SystemLogger


def _check_alignment(quantization: Quantization, scenario: Scenario) -> None:
    if scenario.types.n != quantization.n_types:
        raise ValueError(
            f"Scenario has {scenario.types.n} types, quantization expects {quantization.n_types}."
        )


def enumerate_schedules(
    quantization: Quantization,
    scenario: Scenario,
) -> Iterator[AllocationSchedule]:
    """
    Every nondecreasing map from the grid into the quantity levels, once each.

    Schedules are yielded in lexicographic order of their level indices.
    """
    _check_alignment(quantization, scenario)
    levels = quantization.levels(scenario.cap)
    for combo in combinations_with_replacement(
        range(quantization.n_levels), quantization.n_types
    ):
        yield AllocationSchedule(values=levels[list(combo)], cap=scenario.cap)


def _indicator_averages(values: np.ndarray, weights: np.ndarray, upper: bool):
    """Row-wise averages of q over lower prefixes (or upper suffixes), with the scale of each indicator."""
    if upper:
        mass = np.cumsum(weights[::-1])[::-1]
        sums = np.cumsum((values * weights)[:, ::-1], axis=1)[:, ::-1]
    else:
        mass = np.cumsum(weights)
        sums = np.cumsum(values * weights, axis=1)
    return sums / mass, 1.0 / mass


def _greedy_tail(values: np.ndarray, weights: np.ndarray, alpha: float, order):
    """Fractional knapsack: fill m = ξ̄ along `order` until mass α is spent."""
    sorted_q = np.take_along_axis(values, order, axis=1)
    sorted_w = weights[order]
    reach = np.cumsum(sorted_w, axis=1)
    shares = np.clip(np.minimum(reach, alpha) - (reach - sorted_w), 0.0, None)
    return np.sum(shares * sorted_q, axis=1)


def inner_values(values: np.ndarray, scenario: Scenario) -> np.ndarray:
    """
    Nature's signed optimum for each row of a stack of schedules.

    Searches the extreme points of the discretized conditional-mean polytope:
    unit atoms for the unrestricted class, scaled lower or upper indicators for
    the monotone classes. With a support bound the unrestricted and
    tail-concentrating classes are solved by filling m = ξ̄ greedily, and the
    indicator search keeps only extreme points whose scale stays below ξ̄.
    """
    values = np.atleast_2d(values)
    weights = scenario.types.weights
    mu = scenario.mu
    positive = scenario.sign is Sign.POSITIVE
    mean_class = scenario.mean_class
    xi_bar = scenario.xi_bar

    if mu == 0:
        return np.zeros(values.shape[0])

    if xi_bar is not None and scenario.concentrating:
        alpha = min(mu / xi_bar, 1.0)
        if mean_class is MeanClass.ANY:
            order = np.argsort(values if positive else -values, axis=1, kind="stable")
        else:
            order = np.broadcast_to(np.arange(values.shape[1]), values.shape)
            if not positive:
                order = order[:, ::-1]
        tail = xi_bar * _greedy_tail(values, weights, alpha, order)
        return tail if positive else -tail

    if mean_class is MeanClass.ANY:
        candidates = values
        scales = 1.0 / weights
    else:
        candidates, scales = _indicator_averages(
            values, weights, upper=mean_class is MeanClass.NONDECREASING
        )

    admissible = np.broadcast_to(weights > 0, candidates.shape)
    if xi_bar is not None:
        admissible = admissible & (mu * scales <= xi_bar + MEAN_TOL)

    if positive:
        return mu * np.where(admissible, candidates, np.inf).min(axis=1)
    return -mu * np.where(admissible, candidates, -np.inf).max(axis=1)


def inner_min(schedule: AllocationSchedule, scenario: Scenario) -> float:
    """
    Nature's optimum against one schedule by direct extreme-point search.

    Minimizes Σ f_i m_i q_i for benefits and maximizes it for harms; the result
    carries the welfare sign.
    """
    return float(inner_values(schedule.values[None, :], scenario)[0])


def _best_in_partition(
    rows: np.ndarray,
    values: np.ndarray,
    scenario: Scenario,
) -> Tuple[float, int]:
    block = values[rows]
    objective = surplus(block, scenario) + inner_values(block, scenario)
    k = int(np.argmax(objective))
    return float(objective[k]), int(rows[k])


def minimax_bruteforce(
    scenario: Scenario,
    quantization: Quantization,
    n_jobs: int = 1,
) -> Tuple[float, AllocationSchedule]:
    """
    Max over quantized monotone schedules of surplus plus Nature's optimum.

    The enumeration is partitioned by the first schedule coordinate and the
    partitions are evaluated on a thread pool; the merge keeps the first
    maximum, so ties resolve to the lexicographically smallest schedule.

    Args:
        scenario (Scenario): Market primitives on an `n_types` grid.
        quantization (Quantization): Enumeration size.
        n_jobs (int): Worker threads for the partitions.

    Returns:
        Tuple[float, AllocationSchedule]: The best value and its schedule.
    """
    _check_alignment(quantization, scenario)
    logger = SystemLogger.get_logger()

    levels = quantization.levels(scenario.cap)
    index = np.array(
        list(
            combinations_with_replacement(
                range(quantization.n_levels), quantization.n_types
            )
        ),
        dtype=int,
    )
    values = levels[index]
    partitions: List[np.ndarray] = [
        rows
        for rows in (
            np.flatnonzero(index[:, 0] == j)
            for j in range(quantization.n_levels)
        )
        if rows.size
    ]

    results = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_best_in_partition)(rows, values, scenario)
        for rows in partitions
    )

    best_value, best_row = results[0]
    for value, row in results[1:]:
        if value > best_value:
            best_value, best_row = value, row

    logger.debug(
        f"enumerated {index.shape[0]} schedules in {len(partitions)} partitions, best={best_value:.12g}"
    )
    return best_value, AllocationSchedule(
        values=values[best_row], cap=scenario.cap
    )


def quantization_gap(scenario: Scenario, quantization: Quantization) -> float:
    """
    Bound on |solver guarantee − brute-force value| from rounding to the level grid.

    level_spacing · max_i u_q(0, θ_i) + level_spacing · (c + μ).
    """
    spacing = quantization.spacing(scenario.cap)
    marginal = float(
        np.max(scenario.utility.marginal(0.0, scenario.types.grid))
    )
    return spacing * marginal + spacing * (scenario.cost + scenario.mu)


@dataclass(frozen=True)
class OracleReport:
    """
    Verdict of a brute-force certification.

    Attributes:
        quantization (Quantization): Enumeration size.
        best_value (float): Brute-force max-min value.
        best_schedule (AllocationSchedule): Schedule attaining it.
        solver_value (float): Guarantee reported by the solver.
        gap (float): Allowed discrepancy from quantization.
        passed (bool): Whether |solver_value − best_value| ≤ gap.
    """

    quantization: Quantization
    best_value: float
    best_schedule: AllocationSchedule
    solver_value: float
    gap: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "quantization": self.quantization.to_dict(),
            "best_value": self.best_value,
            "best_schedule": self.best_schedule.to_list(),
            "solver_value": self.solver_value,
            "gap": self.gap,
            "passed": self.passed,
        }


def certify(
    scenario: Scenario,
    quantization: Quantization,
    solver_value: float,
    n_jobs: int = 1,
) -> OracleReport:
    """
    Compare a solver's guarantee against the brute-force minimax value.

    Args:
        scenario (Scenario): Market primitives on an `n_types` grid.
        quantization (Quantization): Enumeration size.
        solver_value (float): Guarantee to certify.
        n_jobs (int): Worker threads for the enumeration.

    Returns:
        OracleReport: The verdict with its gap bound.
    """
    best_value, best_schedule = minimax_bruteforce(
        scenario, quantization, n_jobs=n_jobs
    )
    gap = quantization_gap(scenario, quantization)
    passed = abs(solver_value - best_value) <= gap
    if not passed:
        SystemLogger.get_logger().warning(
            f"oracle check failed: solver={solver_value:.12g} "
            f"bruteforce={best_value:.12g} gap={gap:.12g}"
        )
    return OracleReport(
        quantization=quantization,
        best_value=best_value,
        best_schedule=best_schedule,
        solver_value=float(solver_value),
        gap=gap,
        passed=bool(passed),
    )
