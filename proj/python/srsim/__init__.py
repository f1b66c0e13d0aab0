"""Spatial-reuse WLAN simulator: CTMN throughput model and bandit learning."""

from ._core import (
    ConfigError,
    DomainError,
    Error,
    ExplosionError,
    InfeasibleLink,
    IoError,
    NumericalError,
    canonical_names,
    isolation_bounds,
    jain_index,
    max_min,
    path_loss,
    random_scenario_json,
    run,
    scenario_json,
    solve,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "Error",
    "ExplosionError",
    "InfeasibleLink",
    "IoError",
    "NumericalError",
    "canonical_names",
    "isolation_bounds",
    "jain_index",
    "max_min",
    "path_loss",
    "random_scenario_json",
    "run",
    "scenario_json",
    "solve",
]
