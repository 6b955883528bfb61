from .schedule import make_schedule, schedule_stats
from .envelope import transfers_from_allocation, verify_ic

__all__ = [
    "make_schedule",
    "schedule_stats",
    "transfers_from_allocation",
    "verify_ic",
]
