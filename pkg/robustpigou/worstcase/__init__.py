from .nature import (
    signed,
    tail_shares,
    worst_case_externality,
    worst_case_bounded,
    nature_best_response,
    externality_under,
    worst_case_welfare,
)

__all__ = [
    "signed",
    "tail_shares",
    "worst_case_externality",
    "worst_case_bounded",
    "nature_best_response",
    "externality_under",
    "worst_case_welfare",
]
