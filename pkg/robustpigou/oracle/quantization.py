import math
import numpy as np
from dataclasses import dataclass

from robustpigou.errors import TooLarge

MAX_TYPES = 7
MAX_LEVELS = 9
MAX_SCHEDULES = 10**6


@dataclass(frozen=True)
class Quantization:
    """
    Size of a brute-force enumeration.

    Attributes:
        n_types (int): Grid points, at most 7.
        n_levels (int): Quantity levels spread uniformly over [0, A], at most 9.

    Raises:
        TooLarge: If either count or the number of monotone schedules
            C(n_types + n_levels − 1, n_types) exceeds its bound.
    """

    n_types: int
    n_levels: int

    def __post_init__(self):
        if not isinstance(self.n_types, int):
            raise TypeError("'n_types' must be of type int.")
        if not isinstance(self.n_levels, int):
            raise TypeError("'n_levels' must be of type int.")
        if self.n_types < 1:
            raise ValueError("'n_types' must be greater than zero.")
        if self.n_levels < 1:
            raise ValueError("'n_levels' must be greater than zero.")

        if self.n_types > MAX_TYPES:
            raise TooLarge(f"n_types={self.n_types} exceeds {MAX_TYPES}.")
        if self.n_levels > MAX_LEVELS:
            raise TooLarge(f"n_levels={self.n_levels} exceeds {MAX_LEVELS}.")
        if self.size >= MAX_SCHEDULES:
            raise TooLarge(f"{self.size} schedules exceed {MAX_SCHEDULES}.")

    @property
    def size(self) -> int:
        """Number of nondecreasing maps from the grid into the level set."""
        return math.comb(self.n_types + self.n_levels - 1, self.n_types)

    def levels(self, cap: float) -> np.ndarray:
        return np.linspace(0.0, cap, self.n_levels)

    def spacing(self, cap: float) -> float:
        if self.n_levels == 1:
            return float(cap)
        return float(cap) / (self.n_levels - 1)

    def to_dict(self) -> dict:
        return {
            "n_types": self.n_types,
            "n_levels": self.n_levels,
            "size": self.size,
        }
