"""Finite-instance duplex-mode optimization (rate model, greedy, oracle)."""

from .instance import (
    FIG2_USER_COUNTS,
    AchievedRateSimulator,
    OptimizerInstance,
    baseline_deltas,
    extract_instance,
    fig2_family_instance,
    synthetic_instance,
)
from .search import (
    BudgetExceededError,
    DuplexAssignment,
    classify_by_thresholds,
    exhaustive_search,
    greedy_select,
    objective,
    objective_reference,
    thresholds_from_delta,
    user_rates,
)
from . import kernels

__all__ = [
    "FIG2_USER_COUNTS",
    "AchievedRateSimulator",
    "OptimizerInstance",
    "baseline_deltas",
    "extract_instance",
    "fig2_family_instance",
    "synthetic_instance",
    "BudgetExceededError",
    "DuplexAssignment",
    "classify_by_thresholds",
    "exhaustive_search",
    "greedy_select",
    "objective",
    "objective_reference",
    "thresholds_from_delta",
    "user_rates",
    "kernels",
]
