"""Event-by-event simulation of interference experiments with
deterministic learning machines."""

from .harness import (
    FIGURES,
    SCENARIOS,
    ExperimentConfig,
    emit_csv,
    parse_config,
    reproduce,
    run_scenario,
)

__all__ = [
    "ExperimentConfig", "FIGURES", "SCENARIOS", "emit_csv",
    "parse_config", "reproduce", "run_scenario",
]

__version__ = "1.0.0"
