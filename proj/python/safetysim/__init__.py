"""Stochastic simulator of workplace safety areas, observers and feedback."""

from ._core import (
    DayRecord,
    EnsembleSummary,
    Policy,
    Scenario,
    ScenarioParseError,
    ScenarioValidationError,
    Trajectory,
    UnknownPolicyError,
    decay_theta,
    expected_hl_count,
    load_scenario,
    load_scenario_file,
    make_policy,
    policy_names,
    run_ensemble,
    run_simulation,
    serialize_scenario,
    validate_scenario,
    worst_case_metrics,
    xi_of_theta,
)

__all__ = [
    "DayRecord",
    "EnsembleSummary",
    "Policy",
    "Scenario",
    "ScenarioParseError",
    "ScenarioValidationError",
    "Trajectory",
    "UnknownPolicyError",
    "decay_theta",
    "expected_hl_count",
    "load_scenario",
    "load_scenario_file",
    "make_policy",
    "policy_names",
    "run_ensemble",
    "run_simulation",
    "serialize_scenario",
    "validate_scenario",
    "worst_case_metrics",
    "xi_of_theta",
]
