import numpy as np
from typing import List, Sequence, Tuple
from dataclasses import dataclass

from robustpigou.errors import ConfigError
from robustpigou.structs.constants import PROB_TOL


@dataclass(frozen=True, eq=False)
class TypeDistribution:
    """
    A finite type grid θ_1 < … < θ_n with probability weights f_1..f_n.

    Continuous type distributions are represented by their grid
    discretization. Construction only checks shapes; the probabilistic
    invariants are reported by `violations()` so a malformed configuration can
    be listed rather than aborted on.

    Attributes:
        grid (np.ndarray): Read-only array of types.
        weights (np.ndarray): Read-only array of probabilities aligned with `grid`.
    """

    grid: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        grid = np.array(self.grid, dtype=float)
        weights = np.array(self.weights, dtype=float)

        if grid.ndim != 1 or weights.ndim != 1:
            raise ValueError("'grid' and 'weights' must be one-dimensional.")
        if grid.size == 0:
            raise ValueError("'grid' must contain at least one type.")
        if grid.shape != weights.shape:
            raise ValueError("'grid' and 'weights' must have equal length.")

        grid.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(cls, low: float, high: float, n: int) -> "TypeDistribution":
        """
        Equal-weight discretization of the uniform distribution on [low, high].

        Args:
            low (float): Lowest type.
            high (float): Highest type.
            n (int): Number of grid points, endpoints included.

        Returns:
            TypeDistribution: The discretized distribution.
        """
        if not isinstance(n, int) or n < 1:
            raise ValueError("'n' must be a positive integer.")
        grid = np.linspace(low, high, n)
        return cls(grid=grid, weights=np.full(n, 1.0 / n))

    @classmethod
    def discrete(
        cls,
        grid: Sequence[float],
        weights: Sequence[float],
    ) -> "TypeDistribution":
        return cls(grid=np.asarray(grid), weights=np.asarray(weights))

    @classmethod
    def from_dict(cls, data: dict) -> "TypeDistribution":
        """
        Build the distribution from the `[types]` configuration table.

        Args:
            data (dict): Either {"family": "uniform", "range": [a, b], "n": n}
                or {"family": "discrete", "grid": [...], "weights": [...]}.

        Returns:
            TypeDistribution: The configured distribution.

        Raises:
            ConfigError: If keys are missing or malformed.
        """
        family = str(data.get("family", "uniform")).lower()
        try:
            if family == "uniform":
                low, high = data["range"]
                return cls.uniform(float(low), float(high), int(data["n"]))
            if family == "discrete":
                return cls.discrete(data["grid"], data["weights"])
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"Invalid [types] table: {e}") from e
        raise ConfigError(f"Unknown types family '{family}'.")

    @property
    def n(self) -> int:
        return int(self.grid.size)

    @property
    def cdf(self) -> np.ndarray:
        """F(θ_k) = Σ_{i≤k} f_i."""
        return np.cumsum(self.weights)

    @property
    def lowest(self) -> float:
        return float(self.grid[0])

    @property
    def mean(self) -> float:
        return self.expectation(self.grid)

    def expectation(self, values: np.ndarray) -> float:
        """Σ f_i v_i for values aligned with the grid."""
        return float(np.dot(self.weights, values))

    def with_size(self, n: int) -> "TypeDistribution":
        """
        Re-discretize an equal-weight grid at a new resolution.

        Raises:
            ValueError: If the distribution is not an equal-weight grid.
        """
        if n == self.n:
            return self
        if not np.allclose(self.weights, self.weights[0]):
            raise ValueError(
                "Only equal-weight grids can be re-discretized."
            )
        return TypeDistribution.uniform(
            float(self.grid[0]), float(self.grid[-1]), n
        )

    def violations(self) -> List[Tuple[str, str]]:
        """
        Check the probabilistic invariants.

        Returns:
            List[Tuple[str, str]]: (field, message) pairs, empty when valid.
        """
        found = []
        if not np.all(np.isfinite(self.grid)):
            found.append(("types.grid", "types must be finite"))
        elif np.any(self.grid < 0):
            found.append(("types.grid", "types must be nonnegative"))
        if self.n > 1 and np.any(np.diff(self.grid) <= 0):
            found.append(("types.grid", "types must be strictly increasing"))
        if np.any(self.weights <= 0):
            found.append(("types.weights", "weights must be strictly positive"))
        if abs(float(self.weights.sum()) - 1.0) > PROB_TOL:
            found.append(("types.weights", "weights not normalized"))
        return found

    def to_dict(self) -> dict:
        return {
            "grid": self.grid.tolist(),
            "weights": self.weights.tolist(),
        }
