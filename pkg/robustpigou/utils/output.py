import os
import json
import hashlib
import numpy as np
import pandas as pd
from typing import TYPE_CHECKING

from robustpigou.errors import ConfigError

if TYPE_CHECKING:
    from robustpigou.core import TypeDistribution
    from robustpigou.structs import ConditionalMean, Mechanism

FLOAT_FORMAT = "%.12g"


def config_hash(data: dict) -> str:
    """
    First 16 hex digits of the SHA-256 of `data` serialized with sorted keys.

    Args:
        data (dict): Parsed configuration plus any flags that change results.

    Returns:
        str: Stable content hash used as the output directory name.
    """
    canonical = json.dumps(data, sort_keys=True, default=str)
    return hashlib.sha256(canonical.encode()).hexdigest()[:16]


def round_floats(obj):
    """Recursively round floats to 12 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not np.isfinite(value):
            return value
        return float(f"{value:.12g}")
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [round_floats(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {k: round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    return obj


def write_json(data: dict, path: str) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w") as f:
        json.dump(round_floats(data), f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def write_frame(frame: pd.DataFrame, path: str) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path


def schedule_frame(mechanism: "Mechanism", types: "TypeDistribution") -> pd.DataFrame:
    """
    One row per grid point: theta, weight, q, t, U.
    """
    return pd.DataFrame(
        {
            "theta": types.grid,
            "weight": types.weights,
            "q": mechanism.schedule.values,
            "t": mechanism.transfers,
            "U": mechanism.utilities,
        }
    )


def nature_frame(m: "ConditionalMean", types: "TypeDistribution") -> pd.DataFrame:
    return pd.DataFrame(
        {"theta": types.grid, "weight": types.weights, "m": m.values}
    )


def read_schedule(path: str) -> np.ndarray:
    """
    Load the `q` column of a schedule CSV.

    Args:
        path (str): CSV written by `write_frame(schedule_frame(...))` or by hand.

    Returns:
        np.ndarray: Quantities in file order.

    Raises:
        ConfigError: If the file cannot be read or has no `q` column.
    """
    try:
        frame = pd.read_csv(path)
    except (OSError, ValueError) as e:
        raise ConfigError(f"Cannot read schedule '{path}': {e}") from e
    if "q" not in frame.columns:
        raise ConfigError(f"Schedule '{path}' has no 'q' column.")
    return frame["q"].to_numpy(dtype=float)
