"""Cost-aware adaptation of hierarchical menus."""

from ._menu_adapt import (
    BenefitMode,
    CostParams,
    InvariantViolation,
    MenuTree,
    Scenario,
    ScenarioBundle,
    TargetDistribution,
    ValidationError,
    expected_selection_time,
    greedy_adaptation,
    interaction_cost,
    load_bundle,
    monte_carlo_expected_time,
    naive_cost,
    parse_bundle,
    select_adaptation,
    simulate_trace,
    subtree_mass,
    utility_table,
)

__all__ = [
    "BenefitMode",
    "CostParams",
    "InvariantViolation",
    "MenuTree",
    "Scenario",
    "ScenarioBundle",
    "TargetDistribution",
    "ValidationError",
    "expected_selection_time",
    "greedy_adaptation",
    "interaction_cost",
    "load_bundle",
    "monte_carlo_expected_time",
    "naive_cost",
    "parse_bundle",
    "select_adaptation",
    "simulate_trace",
    "subtree_mass",
    "utility_table",
]
