"""
ACQPT Harness Module

Scenario orchestration, builtin studies and summary statistics
"""

from .summary import (
    CurvePoint,
    TemplateSummary,
    Summary,
    aggregate_curve,
    summarize_template,
    summarize,
    scaling_slopes,
)

from .scenario import (
    RunTemplate,
    Scenario,
    TrialResult,
    ScenarioResult,
    trial_config,
    run_trial,
    worker_count,
    iter_trial_results,
    execute_scenario,
    run_scenario,
)

from .scenario_reader import (
    template_from_mapping,
    read_scenario_ini,
    read_scenario_json,
    read_scenario_file,
)

from .builtins import (
    BUILTIN_SCENARIOS,
    BUILTIN_DESCRIPTIONS,
    list_builtins,
    builtin_scenario,
)

__all__ = [
    # Summary
    "CurvePoint",
    "TemplateSummary",
    "Summary",
    "aggregate_curve",
    "summarize_template",
    "summarize",
    "scaling_slopes",
    # Scenario
    "RunTemplate",
    "Scenario",
    "TrialResult",
    "ScenarioResult",
    "trial_config",
    "run_trial",
    "worker_count",
    "iter_trial_results",
    "execute_scenario",
    "run_scenario",
    # Scenario files
    "template_from_mapping",
    "read_scenario_ini",
    "read_scenario_json",
    "read_scenario_file",
    # Builtins
    "BUILTIN_SCENARIOS",
    "BUILTIN_DESCRIPTIONS",
    "list_builtins",
    "builtin_scenario",
]
