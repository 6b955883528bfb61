from .ironing import pool_adjacent_violators
from .regulator import (
    floor_condition,
    ceiling_condition,
    solve_floor,
    solve_ceiling,
    solve_price,
    solve_shortfall,
    solve,
)
from .bayesian import pointwise_demand, bayesian_pointwise

__all__ = [
    # ironing
    "pool_adjacent_violators",
    # regulator
    "floor_condition",
    "ceiling_condition",
    "solve_floor",
    "solve_ceiling",
    "solve_price",
    "solve_shortfall",
    "solve",
    # bayesian
    "pointwise_demand",
    "bayesian_pointwise",
]
