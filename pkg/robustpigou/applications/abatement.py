import math
import numpy as np
from enum import Enum
from typing import List, Union
from dataclasses import dataclass

from robustpigou.errors import ConfigError
from robustpigou.core import TypeDistribution, Violation
from robustpigou.structs import AllocationSchedule, Policy, PolicyKind, MONO_TOL
from robustpigou.utils.logger import SystemLogger
from robustpigou.utils.roots import find_root


class CostFamily(Enum):
    """
    Abatement cost families.

    Values:
        QUADRATIC: C(q, θ) = γθq²/2.
    """

    QUADRATIC = "QUADRATIC"


@dataclass(frozen=True)
class QuadraticCost:
    """
    C(q, θ) = γ·θ·q²/2, so C_q = γθq and C_qθ = γq > 0 for q > 0.

    Attributes:
        gamma (float): Scale γ > 0. Checked by `violations()`.
    """

    gamma: float = 1.0
    family = CostFamily.QUADRATIC

    def __post_init__(self):
        if not isinstance(self.gamma, (int, float)):
            raise TypeError("'gamma' must be of type int or float.")

    def value(self, q, theta):
        return 0.5 * self.gamma * theta * q**2

    def marginal(self, q, theta):
        return self.gamma * theta * q

    def violations(self) -> List[Violation]:
        if not math.isfinite(self.gamma) or self.gamma <= 0:
            return [Violation("cost.gamma", "gamma must be finite and positive")]
        return []

    def to_dict(self) -> dict:
        return {"family": self.family.value, "gamma": self.gamma}


class PenaltyMarker(Enum):
    """
    Symbolic penalty for falling short of the floor.

    Values:
        INFEASIBLE: An unbounded payment; the floor is a hard constraint.
    """

    INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class PaymentSchedule:
    """
    Payment owed by the industry as a function of its abatement.

    Nothing is owed at or above the floor; below it the industry pays
    `penalty`, which is either a finite amount or `PenaltyMarker.INFEASIBLE`.

    Attributes:
        floor (float): Required abatement q̲.
        penalty (float | PenaltyMarker): Payment for q < q̲.
    """

    floor: float
    penalty: Union[float, PenaltyMarker] = PenaltyMarker.INFEASIBLE

    def __post_init__(self):
        if not isinstance(self.floor, (int, float)):
            raise TypeError("'floor' must be of type int or float.")
        if not isinstance(self.penalty, (int, float, PenaltyMarker)):
            raise TypeError(
                "'penalty' must be of type int, float or PenaltyMarker."
            )

    def payment(self, q: float) -> Union[float, PenaltyMarker]:
        if q >= self.floor - MONO_TOL:
            return 0.0
        return self.penalty


@dataclass(frozen=True, eq=False)
class AbatementCase:
    """
    Inputs of the industry abatement application.

    Attributes:
        cost (QuadraticCost): Abatement cost model.
        types (TypeDistribution): Distribution of the cost shifter θ.
        mu (float): Mean benefit per unit of abatement.
        q_max (float): Largest feasible abatement.
    """

    cost: QuadraticCost
    types: TypeDistribution
    mu: float
    q_max: float = 1.0

    @classmethod
    def from_dict(cls, data: dict) -> "AbatementCase":
        """
        Args:
            data (dict): Configuration with a `[cost]` table (gamma, optional q_max),
                a `[types]` table and `mu`.

        Raises:
            ConfigError: If keys are missing or mistyped.
        """
        cost_table = data.get("cost")
        if not isinstance(cost_table, dict):
            raise ConfigError("Abatement requires a [cost] table with 'gamma'.")
        if not isinstance(data.get("types"), dict):
            raise ConfigError("Missing [types] table.")
        try:
            return cls(
                cost=QuadraticCost(gamma=float(cost_table["gamma"])),
                types=TypeDistribution.from_dict(data["types"]),
                mu=float(data["mu"]),
                q_max=float(cost_table.get("q_max", 1.0)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"Invalid abatement configuration: {e}") from e

    def replace(self, **changes) -> "AbatementCase":
        fields = {
            "cost": self.cost,
            "types": self.types,
            "mu": self.mu,
            "q_max": self.q_max,
        }
        fields.update(changes)
        return AbatementCase(**fields)

    def violations(self) -> List[Violation]:
        found = [Violation(f, m) for f, m in self.types.violations()]
        found.extend(self.cost.violations())
        if not math.isfinite(self.mu) or self.mu < 0:
            found.append(Violation("mu", "mu must be finite and nonnegative"))
        if not math.isfinite(self.q_max) or self.q_max <= 0:
            found.append(
                Violation("cost.q_max", "q_max must be finite and positive")
            )
        return found

    def to_dict(self) -> dict:
        return {
            "cost": self.cost.to_dict(),
            "types": self.types.to_dict(),
            "mu": self.mu,
            "q_max": self.q_max,
        }


def abatement_condition(
    q: float,
    cost: QuadraticCost,
    types: TypeDistribution,
) -> float:
    """E_F[C_q(q, θ)]."""
    return types.expectation(cost.marginal(q, types.grid))


def abatement_guarantee(
    cost: QuadraticCost,
    types: TypeDistribution,
    mu: float,
    q: float,
) -> float:
    """Worst-case welfare of a uniform abatement level q: μ·q − E_F[C(q, θ)]."""
    return mu * q - types.expectation(cost.value(q, types.grid))


def solve_abatement_floor(
    cost: QuadraticCost,
    types: TypeDistribution,
    mu: float,
    q_max: float = 1.0,
) -> Policy:
    """
    Robust abatement requirement when the benefit's correlation with costs is unknown.

    The floor solves E_F[C_q(q̲, θ)] = μ. If marginal cost at zero already
    exceeds μ there is no intervention; if the condition stays below μ up to
    `q_max`, the industry is held to maximal abatement.

    Args:
        cost (QuadraticCost): Abatement cost model.
        types (TypeDistribution): Distribution of the cost shifter.
        mu (float): Mean benefit per unit of abatement.
        q_max (float): Largest feasible abatement.

    Returns:
        Policy: LaissezFaire, Floor(q̲) or Ban(q_max), with q ≡ q̲ for every type.
    """
    logger = SystemLogger.get_logger()
    notes, residual, iterations = [], None, 0

    def excess(q: float) -> float:
        return abatement_condition(q, cost, types) - mu

    if excess(0.0) >= 0:
        kind, floor = PolicyKind.LAISSEZ_FAIRE, 0.0
    elif excess(q_max) <= 0:
        kind, floor = PolicyKind.BAN, q_max
        notes.append("corner")
    else:
        kind = PolicyKind.FLOOR
        floor, iterations = find_root(excess, 0.0, q_max)
        residual = excess(floor)
        logger.debug(
            f"abatement floor={floor:.12g} closed form={mu / (cost.gamma * types.mean):.12g}"
        )

    schedule = AllocationSchedule(values=np.full(types.n, floor), cap=q_max)
    return Policy(
        kind=kind,
        parameter=floor,
        schedule=schedule,
        guarantee=abatement_guarantee(cost, types, mu, floor),
        foc_residual=residual,
        iterations=iterations,
        notes=tuple(notes),
    )


def industry_response(
    schedule: PaymentSchedule,
    theta: float,
    cost: QuadraticCost,
) -> float:
    """
    Abatement chosen by an industry of type θ facing a payment schedule.

    Above the floor cost rises with abatement and nothing is paid, so the
    floor is the best compliant choice. Below it the cheapest option is to
    abate nothing and pay the penalty; an infeasible penalty rules that out.
    Ties go to the floor.
    """
    if schedule.floor <= 0:
        return 0.0
    if schedule.penalty is PenaltyMarker.INFEASIBLE:
        return float(schedule.floor)

    comply = cost.value(schedule.floor, theta)
    shirk = cost.value(0.0, theta) + schedule.penalty
    return float(schedule.floor) if comply <= shirk else 0.0
