"""2D vertical-plane workcell with compliant-control dynamics.

The end effector is a unit point mass driven by a critically damped
spring toward a commanded attractor:

    F = K (x_att - x) - D xdot,   D = 2 sqrt(K m),   m = 1 kg

integrated with semi-implicit Euler at dt = 1 ms; speed saturates at
1 m/s.  Rigid geometry (table block with a slot, an obstacle) pushes back
through undamped penalty springs (k_wall = 5e4 N/m) acting along the least
penetrated face of each solid, so the reported contact force equals
k_wall times the net penetration vector.

Geometry, nominal (meters): table surface y = 0, slot center x = 0.50
with half-width = clearance, slot depth 0.03, obstacle block of half-width
0.01 and height 0.03 standing on the surface at x = 0.40.  A TaskVariation
shifts the true slot (hole_dx/hole_dy), its clearance, and the obstacle
(obstacle_offset); controllers only know the nominal values.
"""

from __future__ import annotations

import hashlib
import math
import random
import struct

from .types import BtmgParams, SimState, TaskVariation

DT = 0.001
MASS = 1.0
ZETA = 1.0
K_WALL = 5.0e4
V_MAX = 1.0
HORIZON = 10.0

NOMINAL_HOLE_X = 0.50
NOMINAL_SURFACE_Y = 0.0
HOLE_DEPTH = 0.03
OBSTACLE_X = 0.40
OBSTACLE_HALF_WIDTH = 0.01
OBSTACLE_HEIGHT = 0.03
SUCCESS_DEPTH = 0.005

EE_START = (0.30, 0.045)
PEG_START = (0.27, 0.001)
SAFE_HEIGHT = 0.045
HOVER_HEIGHT = 0.035
GRASP_RADIUS = 0.005
STEPS_PER_TICK = 10  # one behavior-tree tick per 10 physics steps

INF = float("inf")


def impedance_force(state: SimState, kx: float, ky: float) -> tuple:
    """Per-axis spring-damper force toward the attractor."""
    dx_ = 2.0 * ZETA * math.sqrt(kx * MASS)
    dy_ = 2.0 * ZETA * math.sqrt(ky * MASS)
    fx = kx * (state.ax - state.x) - dx_ * state.vx
    fy = ky * (state.ay - state.y) - dy_ * state.vy
    return fx, fy


class Workcell:
    """Episode-scoped simulator instance for one task variation."""

    def __init__(self, variation: TaskVariation | None = None):
        self.variation = variation or TaskVariation()
        v = self.variation
        self.surface_y = NOMINAL_SURFACE_Y + v.hole_dy
        self.hole_x = NOMINAL_HOLE_X + v.hole_dx
        self.clearance = v.clearance
        self.bottom_y = self.surface_y - HOLE_DEPTH
        self.obstacle_x = OBSTACLE_X + v.obstacle_offset
        # Solids as (xmin, xmax, ymin, ymax).
        self.solids = [
            (-INF, self.hole_x - self.clearance, -INF, self.surface_y),
            (self.hole_x + self.clearance, INF, -INF, self.surface_y),
            # Slot floor; wide enough that its top face stays the nearest
            # face even for a tip wedged into a side wall.
            (self.hole_x - 0.05, self.hole_x + 0.05, -INF, self.bottom_y),
            (
                self.obstacle_x - OBSTACLE_HALF_WIDTH,
                self.obstacle_x + OBSTACLE_HALF_WIDTH,
                self.surface_y,
                self.surface_y + OBSTACLE_HEIGHT,
            ),
        ]
        self.state = SimState(*EE_START)
        self.bodies: dict[str, list] = {}
        self.attached: str | None = None
        self.active_behavior = None
        self.max_force = 0.0
        self.max_penetration = 0.0
        self.path_length = 0.0
        self.seed = 0
        self._hash = hashlib.md5()

    def reset(self, seed: int, ee_start=None, attach=False):
        """Place bodies; the initial peg pose carries N(0, 1 mm) jitter per
        axis.  With attach=True the peg starts in the gripper at ee_start."""
        rng = random.Random(seed)
        self.seed = seed
        jx = rng.gauss(0.0, 0.001)
        jy = rng.gauss(0.0, 0.001)
        if attach:
            sx, sy = ee_start
            self.state = SimState(sx + jx, sy + jy, ax=sx + jx, ay=sy + jy)
            self.bodies["peg1"] = [self.state.x, self.state.y]
            self.attached = "peg1"
        else:
            sx, sy = ee_start if ee_start is not None else EE_START
            self.state = SimState(sx, sy, ax=sx, ay=sy)
            self.bodies["peg1"] = [PEG_START[0] + jx, self.surface_y + PEG_START[1] + jy]
            self.attached = None
        return self

    def attach(self, name: str):
        self.attached = name
        self.bodies[name] = [self.state.x, self.state.y]

    def detach(self):
        self.attached = None

    def contact(self, x: float, y: float) -> tuple:
        """Net contact force and penetration vector at a point."""
        px = py = 0.0
        for xmin, xmax, ymin, ymax in self.solids:
            if not (xmin < x < xmax and ymin < y < ymax):
                continue
            # Push out through the least penetrated face.
            pens = (
                (x - xmin, 1.0, 0.0),
                (xmax - x, -1.0, 0.0),
                (y - ymin, 0.0, 1.0),
                (ymax - y, 0.0, -1.0),
            )
            depth, nx, ny = min(pens, key=lambda p: p[0])
            px -= depth * nx
            py -= depth * ny
        return K_WALL * px, K_WALL * py, math.hypot(px, py)

    def step_physics(self, kx: float, ky: float, dt: float = DT):
        s = self.state
        fx, fy = impedance_force(s, kx, ky)
        cfx, cfy, pen = self.contact(s.x, s.y)
        s.fcx, s.fcy, s.pen = cfx, cfy, pen
        s.vx += dt * (fx + cfx) / MASS
        s.vy += dt * (fy + cfy) / MASS
        speed = math.hypot(s.vx, s.vy)
        if speed > V_MAX:
            s.vx *= V_MAX / speed
            s.vy *= V_MAX / speed
        old_x, old_y = s.x, s.y
        s.x += dt * s.vx
        s.y += dt * s.vy
        s.t += dt
        self.path_length += math.hypot(s.x - old_x, s.y - old_y)
        force = math.hypot(cfx, cfy)
        if force > self.max_force:
            self.max_force = force
        if pen > self.max_penetration:
            self.max_penetration = pen
        if self.attached:
            self.bodies[self.attached][0] = s.x
            self.bodies[self.attached][1] = s.y
        self._hash.update(struct.pack("<4d", s.x, s.y, s.vx, s.vy))
        return s

    def advance(self, params: BtmgParams, steps: int = STEPS_PER_TICK):
        """Run physics steps, letting the active behavior steer the attractor."""
        for _ in range(steps):
            if self.active_behavior is not None:
                self.active_behavior.control(self)
            self.step_physics(params.stiffness_x, params.stiffness_y)

    def insertion_success(self) -> bool:
        tip = self.bodies.get(self.attached or "peg1", (self.state.x, self.state.y))
        return (
            tip[1] <= self.surface_y - SUCCESS_DEPTH
            and abs(tip[0] - self.hole_x) < self.clearance
        )

    def goal_point(self) -> tuple:
        return (self.hole_x, self.surface_y - SUCCESS_DEPTH)

    def state_hash(self) -> str:
        return self._hash.hexdigest()


def step(state: SimState, params: BtmgParams, dt: float = DT, cell: Workcell | None = None) -> SimState:
    """Single integration step; free space when no workcell is given."""
    if cell is not None:
        cell.state = state
        return cell.step_physics(params.stiffness_x, params.stiffness_y, dt)
    s = state
    fx, fy = impedance_force(s, params.stiffness_x, params.stiffness_y)
    s.fcx = s.fcy = s.pen = 0.0
    s.vx += dt * fx / MASS
    s.vy += dt * fy / MASS
    speed = math.hypot(s.vx, s.vy)
    if speed > V_MAX:
        s.vx *= V_MAX / speed
        s.vy *= V_MAX / speed
    s.x += dt * s.vx
    s.y += dt * s.vy
    s.t += dt
    return s
