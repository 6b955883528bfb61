import numpy as np
from enum import Enum
from abc import ABC, abstractmethod
from dataclasses import dataclass

from robustpigou.errors import ConfigError
from robustpigou.utils.roots import find_root


class UtilityFamily(Enum):
    """
    Functional forms of the agents' consumption utility.

    Values:
        QUADRATIC: u(q, θ) = θq − (β/2)q², strictly concave in q.
        LINEAR_UNIT_DEMAND: u(q, θ) = θq on q ∈ [0, 1], the non-strictly-concave limit case.
    """

    QUADRATIC = "QUADRATIC"
    LINEAR_UNIT_DEMAND = "LINEAR_UNIT_DEMAND"


def _scalar_or_array(values):
    if np.ndim(values) == 0:
        return float(values)
    return values


class UtilityModel(ABC):
    """
    Interface every utility family implements.

    Solvers only rely on `value`, `marginal`, `type_derivative` and `demand`,
    so a new family plugs in without touching them. All methods broadcast over
    numpy arrays.
    """

    family: UtilityFamily
    strictly_concave: bool

    @abstractmethod
    def value(self, q, theta):
        """u(q, θ)."""
        pass

    @abstractmethod
    def marginal(self, q, theta):
        """u_q(q, θ)."""
        pass

    @abstractmethod
    def type_derivative(self, q, theta):
        """u_θ(q, θ), the integrand of the envelope identity."""
        pass

    @abstractmethod
    def demand(self, price, theta, cap: float):
        """
        Argmax over q ∈ [0, cap] of u(q, θ) − price·q.

        Args:
            price (float | np.ndarray): Per-unit price faced by the agent.
            theta (float | np.ndarray): Agent type(s).
            cap (float): Quantity cap A.

        Returns:
            float | np.ndarray: Quantity demanded.
        """
        pass

    def pooled_demand(
        self,
        prices: np.ndarray,
        thetas: np.ndarray,
        weights: np.ndarray,
        cap: float,
    ) -> float:
        """
        Common quantity maximizing Σ w_i [u(q, θ_i) − p_i q] over [0, cap].

        Used when adjacent types are pooled. The default solves the pooled
        first-order condition by bisection on the aggregate marginal surplus,
        which is nonincreasing in q for concave utilities.

        Args:
            prices (np.ndarray): Per-type prices of the pooled block.
            thetas (np.ndarray): Types of the pooled block.
            weights (np.ndarray): Probability weights of the pooled block.
            cap (float): Quantity cap A.

        Returns:
            float: The pooled quantity.
        """

        def slope(q: float) -> float:
            return float(
                np.dot(weights, self.marginal(q, thetas) - prices)
            )

        if slope(0.0) <= 0.0:
            return 0.0
        if slope(cap) >= 0.0:
            return float(cap)
        root, _ = find_root(slope, 0.0, cap)
        return root

    def to_dict(self) -> dict:
        return {"family": self.family.value}


@dataclass(frozen=True)
class QuadraticUtility(UtilityModel):
    """
    u(q, θ) = θq − (β/2)q².

    Args:
        beta (float): Curvature β > 0. Checked by scenario validation.
    """

    beta: float = 1.0
    family = UtilityFamily.QUADRATIC
    strictly_concave = True

    def __post_init__(self):
        if not isinstance(self.beta, (int, float)):
            raise TypeError("'beta' must be of type int or float.")

    def value(self, q, theta):
        return theta * q - 0.5 * self.beta * q**2

    def marginal(self, q, theta):
        return theta - self.beta * q

    def type_derivative(self, q, theta):
        return q

    def demand(self, price, theta, cap: float):
        return _scalar_or_array(
            np.clip((theta - price) / self.beta, 0.0, cap)
        )

    def pooled_demand(
        self,
        prices: np.ndarray,
        thetas: np.ndarray,
        weights: np.ndarray,
        cap: float,
    ) -> float:
        raw = np.dot(weights, thetas - prices) / (self.beta * weights.sum())
        return float(np.clip(raw, 0.0, cap))

    def to_dict(self) -> dict:
        return {"family": self.family.value, "beta": self.beta}


@dataclass(frozen=True)
class LinearUnitDemand(UtilityModel):
    """
    u(q, θ) = θq with q ∈ [0, 1].

    Demand is the indicator 1{θ > p}; an agent exactly indifferent (θ = p)
    does not buy.
    """

    family = UtilityFamily.LINEAR_UNIT_DEMAND
    strictly_concave = False

    def value(self, q, theta):
        return theta * q

    def marginal(self, q, theta):
        return theta + 0.0 * q

    def type_derivative(self, q, theta):
        return q

    def demand(self, price, theta, cap: float):
        return _scalar_or_array(
            np.where(np.asarray(theta) > price, min(cap, 1.0), 0.0)
        )


class UtilityFactory:
    """
    Builds utility models from their configuration tables.
    """

    @staticmethod
    def from_dict(data: dict) -> UtilityModel:
        """
        Args:
            data (dict): The `[utility]` table, e.g. {"family": "quadratic", "beta": 1.0}.

        Returns:
            UtilityModel: The configured model.

        Raises:
            ConfigError: If the family is missing or unknown.
        """
        family = data.get("family")
        if not isinstance(family, str):
            raise ConfigError("'utility.family' must be provided as a string.")

        key = "".join(ch for ch in family.upper() if ch.isalpha())
        if key == "QUADRATIC":
            beta = data.get("beta", 1.0)
            if not isinstance(beta, (int, float)):
                raise ConfigError("'utility.beta' must be a number.")
            return QuadraticUtility(beta=float(beta))
        if key == "LINEARUNITDEMAND":
            return LinearUnitDemand()
        raise ConfigError(f"Unknown utility family '{family}'.")
