from .utility import (
    UtilityFamily,
    UtilityModel,
    QuadraticUtility,
    LinearUnitDemand,
    UtilityFactory,
)
from .distribution import TypeDistribution
from .scenario import (
    Sign,
    Benchmark,
    Scenario,
    ScenarioFactory,
    Violation,
    validate,
    lookup_enum,
)
from .market import demand, grid_demand, laissez_faire, surplus

__all__ = [
    # utility
    "UtilityFamily",
    "UtilityModel",
    "QuadraticUtility",
    "LinearUnitDemand",
    "UtilityFactory",
    # distribution
    "TypeDistribution",
    # scenario
    "Sign",
    "Benchmark",
    "Scenario",
    "ScenarioFactory",
    "Violation",
    "validate",
    "lookup_enum",
    # market
    "demand",
    "grid_demand",
    "laissez_faire",
    "surplus",
]
