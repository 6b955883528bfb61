import numpy as np
from typing import Tuple

from robustpigou.core import UtilityModel, TypeDistribution


def pool_adjacent_violators(
    model: UtilityModel,
    prices: np.ndarray,
    types: TypeDistribution,
    cap: float,
) -> Tuple[np.ndarray, bool]:
    """
    Monotone allocation maximizing Σ f_i [u(q_i, θ_i) − p_i q_i] over nondecreasing q.

    Each type starts in its own block at its pointwise demand. Whenever a
    block sits above its right neighbour the two are merged and re-solved with
    `model.pooled_demand`, until the block values are nondecreasing.

    Args:
        model (UtilityModel): Strictly concave utility family.
        prices (np.ndarray): Per-type effective prices p_i.
        types (TypeDistribution): Grid and weights.
        cap (float): Quantity cap A.

    Returns:
        Tuple[np.ndarray, bool]: The ironed quantities and whether any types were pooled.
    """
    grid = types.grid
    weights = types.weights
    prices = np.broadcast_to(np.asarray(prices, dtype=float), grid.shape)

    # [start, end, value]
    blocks = []
    for i in range(grid.size):
        blocks.append(
            [
                i,
                i + 1,
                model.pooled_demand(
                    prices[i : i + 1], grid[i : i + 1], weights[i : i + 1], cap
                ),
            ]
        )
        while len(blocks) > 1 and blocks[-2][2] > blocks[-1][2]:
            start = blocks[-2][0]
            end = blocks[-1][1]
            del blocks[-2:]
            blocks.append(
                [
                    start,
                    end,
                    model.pooled_demand(
                        prices[start:end],
                        grid[start:end],
                        weights[start:end],
                        cap,
                    ),
                ]
            )

    values = np.empty(grid.size)
    for start, end, value in blocks:
        values[start:end] = value
    pooled = any(end - start > 1 for start, end, _ in blocks)
    return values, pooled
