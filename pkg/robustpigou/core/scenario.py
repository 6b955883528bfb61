import math
from enum import Enum
from typing import List, Optional
from dataclasses import dataclass

from robustpigou.errors import ConfigError
from robustpigou.structs import MeanClass
from robustpigou.core.distribution import TypeDistribution
from robustpigou.core.utility import (
    UtilityModel,
    UtilityFactory,
    QuadraticUtility,
    LinearUnitDemand,
)


class Sign(Enum):
    """
    Direction of the externality.

    Values:
        POSITIVE: Consumption benefits others (ξ ≥ 0).
        NEGATIVE: Consumption harms others.
    """

    POSITIVE = "Positive"
    NEGATIVE = "Negative"


class Benchmark(Enum):
    """
    What the regulator knows about the correlation between types and externalities.

    Values:
        UNKNOWN: Nothing beyond the unconditional mean μ.
        POSITIVE_CORR: m(θ) is nondecreasing.
        NEGATIVE_CORR: m(θ) is nonincreasing.
    """

    UNKNOWN = "Unknown"
    POSITIVE_CORR = "PositiveCorr"
    NEGATIVE_CORR = "NegativeCorr"

    @property
    def mean_class(self) -> MeanClass:
        return {
            Benchmark.UNKNOWN: MeanClass.ANY,
            Benchmark.POSITIVE_CORR: MeanClass.NONDECREASING,
            Benchmark.NEGATIVE_CORR: MeanClass.NONINCREASING,
        }[self]


@dataclass(frozen=True)
class Violation:
    """
    One broken scenario invariant.

    Attributes:
        field (str): Configuration key at fault.
        message (str): The invariant that does not hold.
    """

    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.field}: {self.message}"


@dataclass(frozen=True, eq=False)
class Scenario:
    """
    Market primitives of one regulation problem.

    Attributes:
        utility (UtilityModel): Agents' utility family.
        types (TypeDistribution): Type grid and weights.
        cost (float): Marginal cost c > 0.
        mu (float): Mean externality μ ≥ 0.
        cap (float): Quantity cap A > 0.
        sign (Sign): Direction of the externality.
        benchmark (Benchmark): Correlation benchmark.
        xi_bar (Optional[float]): Support bound ξ̄ ≥ μ on the externality, if known.
    """

    utility: UtilityModel
    types: TypeDistribution
    cost: float
    mu: float
    cap: float = 1.0
    sign: Sign = Sign.POSITIVE
    benchmark: Benchmark = Benchmark.UNKNOWN
    xi_bar: Optional[float] = None

    def __post_init__(self):
        if not isinstance(self.utility, UtilityModel):
            raise TypeError("'utility' must be of type UtilityModel.")
        if not isinstance(self.types, TypeDistribution):
            raise TypeError("'types' must be of type TypeDistribution.")
        if not isinstance(self.cost, (int, float)):
            raise TypeError("'cost' must be of type int or float.")
        if not isinstance(self.mu, (int, float)):
            raise TypeError("'mu' must be of type int or float.")
        if not isinstance(self.cap, (int, float)):
            raise TypeError("'cap' must be of type int or float.")
        if not isinstance(self.sign, Sign):
            raise TypeError("'sign' must be of type Sign.")
        if not isinstance(self.benchmark, Benchmark):
            raise TypeError("'benchmark' must be of type Benchmark.")
        if self.xi_bar is not None and not isinstance(
            self.xi_bar, (int, float)
        ):
            raise TypeError("'xi_bar' must be of type int or float.")

    @property
    def mean_class(self) -> MeanClass:
        return self.benchmark.mean_class

    @property
    def concentrating(self) -> bool:
        """
        True in the cells where Nature piles the externality on one tail.

        Positive sign with Unknown/NegativeCorr and Negative sign with
        Unknown/PositiveCorr; the remaining two cells are governed by
        Chebyshev's sum inequality.
        """
        if self.sign is Sign.POSITIVE:
            return self.benchmark is not Benchmark.POSITIVE_CORR
        return self.benchmark is not Benchmark.NEGATIVE_CORR

    def replace(self, **changes) -> "Scenario":
        fields = {
            "utility": self.utility,
            "types": self.types,
            "cost": self.cost,
            "mu": self.mu,
            "cap": self.cap,
            "sign": self.sign,
            "benchmark": self.benchmark,
            "xi_bar": self.xi_bar,
        }
        fields.update(changes)
        return Scenario(**fields)

    def to_dict(self) -> dict:
        return {
            "utility": self.utility.to_dict(),
            "types": self.types.to_dict(),
            "cost": self.cost,
            "mu": self.mu,
            "cap": self.cap,
            "sign": self.sign.value,
            "benchmark": self.benchmark.value,
            "xi_bar": self.xi_bar,
        }


def lookup_enum(enum_cls, value, name: str):
    """
    Case- and separator-insensitive enum lookup.

    "PositiveCorr", "positive_corr" and "POSITIVE-CORR" all resolve to
    `Benchmark.POSITIVE_CORR`.

    Raises:
        ConfigError: If `value` is not a string or names no member.
    """
    if not isinstance(value, str):
        raise ConfigError(f"'{name}' must be a string.")
    key = "".join(ch for ch in value.upper() if ch.isalpha())
    for member in enum_cls:
        if "".join(ch for ch in member.name if ch.isalpha()) == key:
            return member
    raise ConfigError(f"Unknown {name} '{value}'.")


def _number(data: dict, key: str, default=None, required: bool = True):
    value = data.get(key, default)
    if value is None:
        if required:
            raise ConfigError(f"Missing required key '{key}'.")
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"'{key}' must be a number.")
    return float(value)


class ScenarioFactory:
    """
    Builds a `Scenario` from a parsed configuration dictionary.
    """

    @staticmethod
    def from_dict(data: dict) -> Scenario:
        """
        Args:
            data (dict): Top-level configuration with `utility`, `types`, `cost`,
                `mu` and optional `cap`, `sign`, `benchmark`, `xi_bar`.

        Returns:
            Scenario: The parsed scenario, not yet validated.

        Raises:
            ConfigError: If keys are missing, mistyped, or name unknown enum members.
        """
        utility_table = data.get("utility")
        types_table = data.get("types")
        if not isinstance(utility_table, dict):
            raise ConfigError("Missing [utility] table.")
        if not isinstance(types_table, dict):
            raise ConfigError("Missing [types] table.")

        return Scenario(
            utility=UtilityFactory.from_dict(utility_table),
            types=TypeDistribution.from_dict(types_table),
            cost=_number(data, "cost"),
            mu=_number(data, "mu"),
            cap=_number(data, "cap", default=1.0),
            sign=lookup_enum(Sign, data.get("sign", "positive"), "sign"),
            benchmark=lookup_enum(
                Benchmark, data.get("benchmark", "unknown"), "benchmark"
            ),
            xi_bar=_number(data, "xi_bar", required=False),
        )


def validate(scenario: Scenario) -> List[Violation]:
    """
    List every broken scenario invariant; never raises.

    Args:
        scenario (Scenario): The scenario to check.

    Returns:
        List[Violation]: Empty if and only if the scenario is well formed.
    """
    found = [Violation(f, m) for f, m in scenario.types.violations()]

    if isinstance(scenario.utility, QuadraticUtility):
        beta = scenario.utility.beta
        if not math.isfinite(beta) or beta <= 0:
            found.append(
                Violation("utility.beta", "beta must be finite and positive")
            )
    if isinstance(scenario.utility, LinearUnitDemand) and scenario.cap != 1.0:
        found.append(Violation("cap", "unit demand requires cap = 1"))

    if not math.isfinite(scenario.cost) or scenario.cost <= 0:
        found.append(Violation("cost", "cost must be finite and positive"))
    if not math.isfinite(scenario.mu) or scenario.mu < 0:
        found.append(Violation("mu", "mu must be finite and nonnegative"))
    if not math.isfinite(scenario.cap) or scenario.cap <= 0:
        found.append(Violation("cap", "cap must be finite and positive"))

    if scenario.xi_bar is not None:
        if not math.isfinite(scenario.xi_bar) or scenario.xi_bar < 0:
            found.append(
                Violation("xi_bar", "xi_bar must be finite and nonnegative")
            )
        elif scenario.xi_bar < scenario.mu:
            found.append(Violation("xi_bar", "xi_bar < mu"))
        elif scenario.xi_bar == 0:
            found.append(Violation("xi_bar", "xi_bar must be positive"))
    return found
