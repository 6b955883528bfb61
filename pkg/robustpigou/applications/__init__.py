from .vaccines import (
    INDIFFERENCE_NOTE,
    mandate_threshold,
    ban_threshold,
    mandate_guarantee,
    laissez_faire_guarantee,
    robust_vaccine_policy,
    bayesian_mandate_condition,
)
from .abatement import (
    CostFamily,
    QuadraticCost,
    PenaltyMarker,
    PaymentSchedule,
    AbatementCase,
    abatement_condition,
    abatement_guarantee,
    solve_abatement_floor,
    industry_response,
)
from .screening import (
    ScreeningMechanism,
    ScreeningCase,
    lottery,
    screening_worst_case,
    envelope_waits,
    enumerate_screening_mechanisms,
    best_screening_value,
    solve_screening,
)

__all__ = [
    # vaccines
    "INDIFFERENCE_NOTE",
    "mandate_threshold",
    "ban_threshold",
    "mandate_guarantee",
    "laissez_faire_guarantee",
    "robust_vaccine_policy",
    "bayesian_mandate_condition",
    # abatement
    "CostFamily",
    "QuadraticCost",
    "PenaltyMarker",
    "PaymentSchedule",
    "AbatementCase",
    "abatement_condition",
    "abatement_guarantee",
    "solve_abatement_floor",
    "industry_response",
    # screening
    "ScreeningMechanism",
    "ScreeningCase",
    "lottery",
    "screening_worst_case",
    "envelope_waits",
    "enumerate_screening_mechanisms",
    "best_screening_value",
    "solve_screening",
]
