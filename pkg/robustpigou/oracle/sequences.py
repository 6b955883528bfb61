import numpy as np
from typing import List

from robustpigou.core import TypeDistribution
from robustpigou.structs import ConditionalMean, MeanClass, PROB_TOL


def _tail_mass(types: TypeDistribution, upper: bool) -> np.ndarray:
    if upper:
        return np.cumsum(types.weights[::-1])[::-1]
    return types.cdf


def feasible_sequence_orders(
    types: TypeDistribution,
    upper: bool = False,
) -> List[int]:
    """
    Orders n for which some grid tail carries exactly 1/n of the probability.

    Only for these n does the sequence m_n = nμ·1{F(θ) ≤ 1/n} keep mean μ on
    the grid. With `upper` the tails are measured from the top type down.

    Returns:
        List[int]: Feasible orders in increasing order.
    """
    orders = set()
    for mass in _tail_mass(types, upper):
        n = int(round(1.0 / mass))
        if n >= 1 and abs(1.0 / n - mass) <= PROB_TOL:
            orders.add(n)
    return sorted(orders)


def nature_sequence(
    types: TypeDistribution,
    mu: float,
    n: int,
    upper: bool = False,
) -> ConditionalMean:
    """
    Nature's n-th approximating strategy: mass nμ on the lowest 1/n of the types.

    With `upper` the mass sits on the highest 1/n instead, the mirror used for
    harmful externalities. As n grows through its feasible values, E_f[m_n q]
    falls to μ·min q (rises to μ·max q) for monotone q.

    Raises:
        ValueError: If no tail of the grid carries exactly 1/n.
    """
    mass = _tail_mass(types, upper)
    on_tail = mass <= 1.0 / n + PROB_TOL
    if abs(float(types.weights[on_tail].sum()) - 1.0 / n) > PROB_TOL:
        raise ValueError(f"Order {n} is not feasible on this grid.")
    return ConditionalMean(
        values=np.where(on_tail, n * mu, 0.0),
        mean_class=MeanClass.NONDECREASING if upper else MeanClass.NONINCREASING,
    )
