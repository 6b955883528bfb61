import numpy as np
from enum import Enum
from typing import List
from dataclasses import dataclass

from robustpigou.structs.constants import MEAN_TOL


class MeanClass(Enum):
    """
    Monotonicity class of Nature's conditional-mean function m(θ).

    Values:
        ANY: No restriction beyond the mean.
        NONDECREASING: m rises with the type (positively correlated benefits).
        NONINCREASING: m falls with the type (negatively correlated benefits).
    """

    ANY = "Any"
    NONDECREASING = "Nondecreasing"
    NONINCREASING = "Nonincreasing"


@dataclass(frozen=True, eq=False)
class ConditionalMean:
    """
    Nature's strategy: the expected per-unit externality at each grid point.

    Attributes:
        values (np.ndarray): Read-only m_i ≥ 0 aligned with the type grid.
        mean_class (MeanClass): Declared monotonicity class.
    """

    values: np.ndarray
    mean_class: MeanClass = MeanClass.ANY

    def __post_init__(self):
        if not isinstance(self.mean_class, MeanClass):
            raise TypeError("'mean_class' must be of type MeanClass.")
        values = np.array(self.values, dtype=float)
        if values.ndim != 1:
            raise ValueError("'values' must be one-dimensional.")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def violations(
        self,
        weights: np.ndarray,
        mu: float,
        xi_bar: float = None,
    ) -> List[str]:
        """
        Check membership in the ambiguity set for a given distribution and mean.

        Args:
            weights (np.ndarray): Type probabilities f_i.
            mu (float): Required mean μ.
            xi_bar (float, optional): Support bound ξ̄ on m.

        Returns:
            List[str]: Descriptions of broken constraints, empty when feasible.
        """
        found = []
        if self.values.shape != np.shape(weights):
            return ["values do not align with the type grid"]
        if np.any(self.values < -MEAN_TOL):
            found.append("values must be nonnegative")
        if abs(float(np.dot(weights, self.values)) - mu) > MEAN_TOL:
            found.append("mean differs from mu")
        if xi_bar is not None and np.any(self.values > xi_bar + MEAN_TOL):
            found.append("values exceed xi_bar")

        steps = np.diff(self.values)
        if self.mean_class is MeanClass.NONDECREASING and np.any(
            steps < -MEAN_TOL
        ):
            found.append("values must be nondecreasing")
        if self.mean_class is MeanClass.NONINCREASING and np.any(
            steps > MEAN_TOL
        ):
            found.append("values must be nonincreasing")
        return found

    def expected_product(self, weights: np.ndarray, q: np.ndarray) -> float:
        """E_f[m·q]."""
        return float(np.dot(weights, self.values * q))
