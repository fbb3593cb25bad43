from .controllers import Esc1, Esc2, OpenLoop
from .engine import DisturbanceConfig, NonFinite, RunRecord, noise_sequence, rk4_step, run_system
from .plants import DS_COLUMNS, DynamicSoaring, ToyAugmented, ToyClassic, quartic_objective
from .scenarios import (
    Scenario,
    builtin_scenarios,
    ds_case,
    estimate_curvature,
    get_scenario,
    matched_baseline,
    run,
    still_baseline,
    with_overrides,
)

__all__ = [
    "DS_COLUMNS",
    "DisturbanceConfig",
    "DynamicSoaring",
    "Esc1",
    "Esc2",
    "NonFinite",
    "OpenLoop",
    "RunRecord",
    "Scenario",
    "ToyAugmented",
    "ToyClassic",
    "builtin_scenarios",
    "ds_case",
    "estimate_curvature",
    "get_scenario",
    "matched_baseline",
    "noise_sequence",
    "quartic_objective",
    "rk4_step",
    "run",
    "run_system",
    "still_baseline",
    "with_overrides",
]
