from typing import List


class RobustPigouError(ValueError):
    """
    Base class for every domain error raised by the toolkit.

    Subclasses `ValueError` so callers that only guard against bad input values
    keep working without importing this module.
    """


class NonMonotone(RobustPigouError):
    """
    Raised when an allocation schedule decreases along the type grid.

    Args:
        index (int): First grid index at which the schedule drops below its predecessor.
    """

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"Schedule decreases at grid index {index}.")


class OutOfRange(RobustPigouError):
    """
    Raised when an allocation falls outside [0, cap].

    Args:
        index (int): First grid index holding an out-of-range quantity.
    """

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"Quantity at grid index {index} is outside [0, cap].")


class WrongRegime(RobustPigouError):
    """Raised when a solver is called for a sign/benchmark cell it does not cover."""


class MissingBound(RobustPigouError):
    """Raised when a bounded-support functional is requested without `xi_bar`."""


class Unsupported(RobustPigouError):
    """Raised when an operation does not support the scenario's utility family or application."""


class WrongUtility(RobustPigouError):
    """Raised when an application receives a utility family it is not defined for."""


class TooLarge(RobustPigouError):
    """Raised when a brute-force enumeration would exceed its size bound."""


class ConfigError(RobustPigouError):
    """Raised when a configuration file cannot be read or is missing required keys."""


class ScenarioInvalid(RobustPigouError):
    """
    Raised when a parsed scenario breaks one or more of its invariants.

    Args:
        violations (list): The `Violation` records reported by validation.
    """

    def __init__(self, violations: List):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"Scenario is invalid: {lines}")
