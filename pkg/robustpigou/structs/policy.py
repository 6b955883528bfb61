from enum import Enum
from typing import Optional, Tuple
from dataclasses import dataclass, field

from robustpigou.structs.schedule import AllocationSchedule


class PolicyKind(Enum):
    """
    Instruments the regulator can end up choosing.

    Values:
        FLOOR: Quantity floor q̲, laissez-faire above it.
        CEILING: Quantity ceiling q̄, laissez-faire below it.
        UNIFORM_SUBSIDY: Per-unit subsidy equal to μ.
        UNIFORM_TAX: Per-unit tax equal to μ.
        LAISSEZ_FAIRE: No intervention.
        MANDATE: Unit-demand floor, q ≡ 1.
        BAN: Activity prohibited (unit demand), or maximal abatement (industry).
        LOTTERY: Capacity-constrained lottery q ≡ Q with no waiting.
        TAIL_SUBSIDY: Type-specific subsidy on the lower tail under a support bound.
        TAIL_TAX: Type-specific tax on the upper tail under a support bound.
    """

    FLOOR = "Floor"
    CEILING = "Ceiling"
    UNIFORM_SUBSIDY = "UniformSubsidy"
    UNIFORM_TAX = "UniformTax"
    LAISSEZ_FAIRE = "LaissezFaire"
    MANDATE = "Mandate"
    BAN = "Ban"
    LOTTERY = "Lottery"
    TAIL_SUBSIDY = "TailSubsidy"
    TAIL_TAX = "TailTax"


@dataclass(frozen=True)
class Policy:
    """
    A solver's output.

    Attributes:
        kind (PolicyKind): The instrument.
        parameter (Optional[float]): Its scalar parameter (floor, ceiling, wedge, capacity), if any.
        schedule (AllocationSchedule): The induced allocation on the type grid.
        guarantee (float): Worst-case welfare of `schedule`.
        foc_residual (Optional[float]): First-order-condition residual at an interior solution.
        iterations (int): Root-finding iterations spent.
        notes (Tuple[str, ...]): Flags such as corner solutions, indifference or ironing.
    """

    kind: PolicyKind
    parameter: Optional[float]
    schedule: AllocationSchedule
    guarantee: float
    foc_residual: Optional[float] = None
    iterations: int = 0
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not isinstance(self.kind, PolicyKind):
            raise TypeError("'kind' must be of type PolicyKind.")
        if not isinstance(self.schedule, AllocationSchedule):
            raise TypeError("'schedule' must be of type AllocationSchedule.")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "parameter": self.parameter,
            "guarantee": self.guarantee,
            "foc_residual": self.foc_residual,
            "iterations": self.iterations,
            "notes": list(self.notes),
        }
