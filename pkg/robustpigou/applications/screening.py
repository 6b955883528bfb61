import math
import numpy as np
from itertools import combinations_with_replacement
from joblib import Parallel, delayed
from typing import Iterator, List, Tuple
from dataclasses import dataclass

from robustpigou.errors import ConfigError, TooLarge
from robustpigou.core import TypeDistribution, Violation
from robustpigou.oracle import MAX_SCHEDULES
from robustpigou.structs import AllocationSchedule, Policy, PolicyKind, MONO_TOL
from robustpigou.utils.logger import SystemLogger


@dataclass(frozen=True, eq=False)
class ScreeningMechanism:
    """
    A direct mechanism allocating a scarce good with waiting as the screening device.

    Attributes:
        q (np.ndarray): Probability of receiving the good, per grid point.
        t (np.ndarray): Waiting time, per grid point.
        capacity (float): Quantity Q ∈ (0, 1) available to the unit mass of agents.
    """

    q: np.ndarray
    t: np.ndarray
    capacity: float

    def __post_init__(self):
        if not isinstance(self.capacity, (int, float)):
            raise TypeError("'capacity' must be of type int or float.")
        q = np.array(self.q, dtype=float)
        t = np.array(self.t, dtype=float)
        if q.ndim != 1 or q.shape != t.shape:
            raise ValueError("'q' and 't' must be one-dimensional and of equal length.")
        q.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "t", t)

    def utilities(self, types: TypeDistribution) -> np.ndarray:
        """U(θ_i) = θ_i q_i − t_i, per unit of waiting cost."""
        return types.grid * self.q - self.t

    def violations(self, types: TypeDistribution) -> List[str]:
        found = []
        if self.q.size != types.n:
            return [f"mechanism has {self.q.size} points, grid has {types.n}"]
        if np.any(self.q < -MONO_TOL) or np.any(self.q > 1 + MONO_TOL):
            found.append("q outside [0, 1]")
        if np.any(self.t < -MONO_TOL):
            found.append("negative waiting time")
        if float(np.dot(types.weights, self.q)) > self.capacity + MONO_TOL:
            found.append("capacity exceeded")
        if np.any(np.diff(self.q) < -MONO_TOL):
            found.append("q not nondecreasing")
        if np.any(np.diff(self.utilities(types)) < -MONO_TOL):
            found.append("utility not nondecreasing")
        return found

    def to_dict(self) -> dict:
        return {
            "q": self.q.tolist(),
            "t": self.t.tolist(),
            "capacity": self.capacity,
        }


@dataclass(frozen=True, eq=False)
class ScreeningCase:
    """
    Inputs of the costly screening application.

    Attributes:
        types (TypeDistribution): Distribution of θ = value / waiting cost.
        mu (float): Mean waiting cost.
        capacity (float): Quantity Q ∈ (0, 1) of the good.
    """

    types: TypeDistribution
    mu: float
    capacity: float

    @classmethod
    def from_dict(cls, data: dict) -> "ScreeningCase":
        """
        Args:
            data (dict): Configuration with `[types]`, `mu` and `[capacity] Q`.

        Raises:
            ConfigError: If keys are missing or mistyped.
        """
        capacity = data.get("capacity")
        if not isinstance(capacity, dict) or "Q" not in capacity:
            raise ConfigError("Screening requires a [capacity] table with 'Q'.")
        if not isinstance(data.get("types"), dict):
            raise ConfigError("Missing [types] table.")
        try:
            return cls(
                types=TypeDistribution.from_dict(data["types"]),
                mu=float(data["mu"]),
                capacity=float(capacity["Q"]),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"Invalid screening configuration: {e}") from e

    def replace(self, **changes) -> "ScreeningCase":
        fields = {"types": self.types, "mu": self.mu, "capacity": self.capacity}
        fields.update(changes)
        return ScreeningCase(**fields)

    def violations(self) -> List[Violation]:
        found = [Violation(f, m) for f, m in self.types.violations()]
        if not math.isfinite(self.mu) or self.mu < 0:
            found.append(Violation("mu", "mu must be finite and nonnegative"))
        if not (0 < self.capacity < 1):
            found.append(Violation("capacity.Q", "Q must lie in (0, 1)"))
        return found

    def to_dict(self) -> dict:
        return {
            "types": self.types.to_dict(),
            "mu": self.mu,
            "capacity": {"Q": self.capacity},
        }


def lottery(Q: float, types: TypeDistribution) -> ScreeningMechanism:
    """
    Give every type the good with probability Q and make nobody wait.

    Raises:
        ValueError: Unless 0 < Q < 1.
    """
    if not (0 < Q < 1):
        raise ValueError("Lottery capacity must lie in (0, 1).")
    return ScreeningMechanism(
        q=np.full(types.n, float(Q)),
        t=np.zeros(types.n),
        capacity=float(Q),
    )


def screening_worst_case(
    mech: ScreeningMechanism,
    mu: float,
    types: TypeDistribution,
) -> float:
    """
    Worst-case aggregate surplus μ·(θ_1 q_1 − t_1).

    Nature puts all waiting cost on the bottom type, where utility is lowest.
    """
    return mu * float(types.grid[0] * mech.q[0] - mech.t[0])


def envelope_waits(
    q: np.ndarray,
    u0: float,
    types: TypeDistribution,
) -> np.ndarray:
    """
    Waiting times that make (q, t) incentive compatible with U(θ_1) = u0.

    U accumulates q_{i−1}(θ_i − θ_{i−1}) between grid points; t = θq − U.
    """
    gaps = np.diff(types.grid)
    utility = u0 + np.concatenate(([0.0], np.cumsum(q[:-1] * gaps)))
    return types.grid * q - utility


def _count(n_types: int, n_q_levels: int, n_u_levels: int) -> int:
    return math.comb(n_q_levels + n_types - 1, n_types) * n_u_levels


def _check_size(n_types: int, n_q_levels: int, n_u_levels: int) -> int:
    size = _count(n_types, n_q_levels, n_u_levels)
    if size > MAX_SCHEDULES:
        raise TooLarge(f"{size} screening mechanisms exceed {MAX_SCHEDULES}.")
    return size


def _mechanisms(
    types: TypeDistribution,
    Q: float,
    n_q_levels: int,
    n_u_levels: int,
    first: int,
) -> Iterator[ScreeningMechanism]:
    q_levels = np.linspace(0.0, 1.0, n_q_levels)
    shares = np.linspace(0.0, 1.0, n_u_levels)
    for tail in combinations_with_replacement(
        range(first, n_q_levels), types.n - 1
    ):
        q = q_levels[[first, *tail]]
        if float(np.dot(types.weights, q)) > Q + MONO_TOL:
            continue
        for s in shares:
            u0 = s * types.grid[0] * q[0]
            yield ScreeningMechanism(
                q=q,
                t=np.maximum(envelope_waits(q, u0, types), 0.0),
                capacity=Q,
            )


def enumerate_screening_mechanisms(
    types: TypeDistribution,
    Q: float,
    n_q_levels: int = 6,
    n_u_levels: int = 6,
) -> Iterator[ScreeningMechanism]:
    """
    Every grid mechanism with nondecreasing q within capacity and envelope waits.

    q takes values on an even grid of [0, 1]; the bottom utility u0 ranges
    over an even grid of [0, θ_1 q_1] so that no wait is negative. Waiting
    times are derived, never free.

    Raises:
        TooLarge: When the enumeration exceeds the brute-force bound.
    """
    _check_size(types.n, n_q_levels, n_u_levels)
    for first in range(n_q_levels):
        yield from _mechanisms(types, Q, n_q_levels, n_u_levels, first)


def _best_in_partition(
    first: int,
    types: TypeDistribution,
    mu: float,
    Q: float,
    n_q_levels: int,
    n_u_levels: int,
) -> Tuple[float, ScreeningMechanism]:
    best_value, best_mech = -np.inf, None
    for mech in _mechanisms(types, Q, n_q_levels, n_u_levels, first):
        value = screening_worst_case(mech, mu, types)
        if value > best_value:
            best_value, best_mech = value, mech
    return best_value, best_mech


def best_screening_value(
    types: TypeDistribution,
    mu: float,
    Q: float,
    n_q_levels: int = 6,
    n_u_levels: int = 6,
    n_jobs: int = 1,
) -> Tuple[float, ScreeningMechanism]:
    """
    Exhaustive search over `enumerate_screening_mechanisms` for the best worst case.

    The search is split by the bottom type's q level and run on a thread pool.
    Partitions are merged in order; ties keep the first mechanism found.

    Returns:
        Tuple[float, ScreeningMechanism]: Best worst-case value and a mechanism attaining it.

    Raises:
        TooLarge: When the enumeration exceeds the brute-force bound.
    """
    size = _check_size(types.n, n_q_levels, n_u_levels)
    results = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_best_in_partition)(first, types, mu, Q, n_q_levels, n_u_levels)
        for first in range(n_q_levels)
    )
    best_value, best_mech = -np.inf, None
    for value, mech in results:
        if mech is not None and value > best_value:
            best_value, best_mech = value, mech

    SystemLogger.get_logger().debug(
        f"screening search over {size} candidates, best={best_value:.12g}"
    )
    return best_value, best_mech


def solve_screening(case: ScreeningCase) -> Policy:
    """
    Robustly optimal screening policy: a lottery at capacity with no waiting.

    Returns:
        Policy: Lottery(Q) with q ≡ Q and guarantee μ·θ_1·Q.
    """
    mech = lottery(case.capacity, case.types)
    notes = () if case.types.lowest > 0 else ("not unique: lowest type is 0",)
    return Policy(
        kind=PolicyKind.LOTTERY,
        parameter=case.capacity,
        schedule=AllocationSchedule(values=mech.q, cap=1.0),
        guarantee=screening_worst_case(mech, case.mu, case.types),
        notes=notes,
    )
