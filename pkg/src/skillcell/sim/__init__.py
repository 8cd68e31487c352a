from .types import (
    BTMG_BOUNDS,
    OBJECTIVE_NAMES,
    OBJECTIVE_SENSES,
    VARIATION_BOUNDS,
    BtmgParams,
    EpisodeResult,
    TaskVariation,
    SimState,
    objectives,
)
from .workcell import Workcell, step, impedance_force, DT, K_WALL
from .episode import run_episode, run_plan_episode, run_insertion_episode
from . import behaviors

__all__ = [
    "BTMG_BOUNDS",
    "OBJECTIVE_NAMES",
    "OBJECTIVE_SENSES",
    "VARIATION_BOUNDS",
    "BtmgParams",
    "EpisodeResult",
    "TaskVariation",
    "SimState",
    "objectives",
    "Workcell",
    "step",
    "impedance_force",
    "DT",
    "K_WALL",
    "run_episode",
    "run_plan_episode",
    "run_insertion_episode",
    "behaviors",
]
