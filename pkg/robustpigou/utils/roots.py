from typing import Callable, Tuple
from scipy.optimize import bisect

from robustpigou.structs.constants import BISECT_XTOL
from robustpigou.utils.logger import SystemLogger


def find_root(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    xtol: float = BISECT_XTOL,
) -> Tuple[float, int]:
    """
    Bracketed bisection for a scalar first-order condition.

    The caller guarantees a sign change on [lower, upper]; corner cases are
    resolved before the bracket is handed over.

    Args:
        func (Callable[[float], float]): Residual whose root is sought.
        lower (float): Left end of the bracket.
        upper (float): Right end of the bracket.
        xtol (float): Absolute tolerance on the root.

    Returns:
        Tuple[float, int]: The root and the number of bisection iterations.
    """
    root, result = bisect(
        func,
        lower,
        upper,
        xtol=xtol,
        maxiter=200,
        full_output=True,
    )
    SystemLogger.get_logger().debug(
        f"bisection on [{lower:.6g}, {upper:.6g}] converged to {root:.12g} "
        f"after {result.iterations} iterations"
    )
    return float(root), int(result.iterations)
