from .logger import SystemLogger
from .roots import find_root
from .output import (
    FLOAT_FORMAT,
    config_hash,
    round_floats,
    write_json,
    write_frame,
    schedule_frame,
    nature_frame,
    read_schedule,
)

__all__ = [
    "SystemLogger",
    "find_root",
    "FLOAT_FORMAT",
    "config_hash",
    "round_floats",
    "write_json",
    "write_frame",
    "schedule_frame",
    "nature_frame",
    "read_schedule",
]
