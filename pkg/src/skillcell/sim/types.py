"""Value types for the workcell simulator."""

from __future__ import annotations

from dataclasses import dataclass, field

# Learnable motion-generator parameters (name -> (lo, hi, unit)).
BTMG_BOUNDS = {
    "stiffness_x": (100.0, 2000.0, "N/m"),
    "stiffness_y": (100.0, 2000.0, "N/m"),
    "search_amplitude": (0.0, 0.01, "m"),
    "search_frequency": (0.0, 5.0, "Hz"),
    "descent_force": (1.0, 25.0, "N"),
    "approach_speed": (0.01, 0.2, "m/s"),
}

# Task-variation parameters (name -> (lo, hi, unit)).
VARIATION_BOUNDS = {
    "hole_dx": (-0.02, 0.02, "m"),
    "hole_dy": (-0.02, 0.02, "m"),
    "clearance": (0.0001, 0.002, "m"),
    "obstacle_offset": (-0.05, 0.05, "m"),
}

OBJECTIVE_NAMES = ("success", "completion_time", "max_force")
OBJECTIVE_SENSES = ("max", "min", "min")


def _check_bounds(kind, bounds, values):
    for name, (lo, hi, unit) in bounds.items():
        v = values[name]
        if not (lo <= v <= hi):
            raise ValueError(f"{kind}.{name}={v} outside [{lo}, {hi}] {unit}")


@dataclass(frozen=True)
class BtmgParams:
    stiffness_x: float
    stiffness_y: float
    search_amplitude: float
    search_frequency: float
    descent_force: float
    approach_speed: float

    def __post_init__(self):
        _check_bounds("BtmgParams", BTMG_BOUNDS, self.as_dict())

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in BTMG_BOUNDS}

    @classmethod
    def defaults(cls) -> "BtmgParams":
        """Midpoint of every bound; the baseline parameterization."""
        return cls(**{name: (lo + hi) / 2.0 for name, (lo, hi, _) in BTMG_BOUNDS.items()})

    @classmethod
    def from_dict(cls, values: dict) -> "BtmgParams":
        return cls(**{name: float(values[name]) for name in BTMG_BOUNDS})


@dataclass(frozen=True)
class TaskVariation:
    hole_dx: float = 0.0
    hole_dy: float = 0.0
    clearance: float = 0.001
    obstacle_offset: float = 0.0

    def __post_init__(self):
        _check_bounds("TaskVariation", VARIATION_BOUNDS, self.as_dict())

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in VARIATION_BOUNDS}

    @classmethod
    def from_dict(cls, values: dict) -> "TaskVariation":
        return cls(**{name: float(values[name]) for name in VARIATION_BOUNDS})


@dataclass
class SimState:
    """End-effector state; `pen` is the net contact penetration magnitude."""

    x: float
    y: float
    vx: float = 0.0
    vy: float = 0.0
    ax: float = 0.0  # commanded attractor
    ay: float = 0.0
    fcx: float = 0.0  # contact force
    fcy: float = 0.0
    pen: float = 0.0
    t: float = 0.0


@dataclass(frozen=True)
class EpisodeResult:
    success: bool
    completion_time: float
    max_force: float
    path_length: float
    reward: float
    seed: int
    reason: str = ""
    state_hash: str = ""


def objectives(result: EpisodeResult, horizon: float = 10.0) -> tuple:
    """(success, completion_time, max_force); failed episodes report the
    horizon as their time.  Values are the raw episode fields."""
    time = result.completion_time if result.success else horizon
    return (1.0 if result.success else 0.0, time, result.max_force)
