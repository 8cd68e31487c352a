"""Primitive skill behaviors: motion generators over the workcell.

Behaviors are registered by name and referenced from skill library files.
Each one steers the commanded attractor (control runs every physics step)
and reports Success/Failure/Running when ticked by the behavior tree.
Controllers only know the nominal geometry; task variations are what the
lateral search and compliance have to absorb.
"""

from __future__ import annotations

import math

from ..bt.nodes import Status
from ..world.model import Triple
from .types import BtmgParams
from .workcell import (
    DT,
    GRASP_RADIUS,
    HOVER_HEIGHT,
    NOMINAL_HOLE_X,
    SAFE_HEIGHT,
    Workcell,
)

BEHAVIORS: dict[str, type] = {}


def register(name: str):
    def deco(cls):
        BEHAVIORS[name] = cls
        return cls

    return deco


def make_behavior_factory(sim: Workcell, wm, params: BtmgParams):
    def factory(name: str, binding: dict):
        cls = BEHAVIORS.get(name)
        if cls is None:
            raise KeyError(f"no primitive behavior registered under '{name}'")
        return cls(sim, wm, binding, params)

    return factory


class _Waypoints:
    """Constant-speed attractor motion along a polyline."""

    def __init__(self, points, speed):
        self.points = list(points)
        self.speed = speed
        self.index = 0

    def control(self, sim: Workcell):
        if self.done:
            return
        s = sim.state
        tx, ty = self.points[self.index]
        dx, dy = tx - s.ax, ty - s.ay
        dist = math.hypot(dx, dy)
        step = self.speed * DT
        if dist <= step:
            s.ax, s.ay = tx, ty
            self.index += 1
        else:
            s.ax += dx / dist * step
            s.ay += dy / dist * step

    @property
    def done(self):
        return self.index >= len(self.points)


class Behavior:
    def __init__(self, sim: Workcell, wm, binding, params: BtmgParams):
        self.sim = sim
        self.wm = wm
        self.binding = dict(binding)
        self.params = params
        self.reason = ""
        self.started = False

    def tick(self, ctx) -> Status:
        if not self.started:
            self.started = True
            self.start()
        self.sim.active_behavior = self
        return self.update()

    def start(self):
        pass

    def update(self) -> Status:
        raise NotImplementedError

    def control(self, sim: Workcell):
        pass

    def abort(self, ctx=None):
        if self.sim.active_behavior is self:
            self.sim.active_behavior = None

    def _finish(self, status: Status) -> Status:
        if self.sim.active_behavior is self:
            self.sim.active_behavior = None
        return status

    def _body_name(self) -> str:
        obj = self.binding.get("object")
        return obj.local if obj is not None else "peg1"


@register("grasp_object")
class GraspObject(Behavior):
    """Approach the target body from above and attach on proximity."""

    def start(self):
        body = self.sim.bodies.get(self._body_name())
        if body is None:
            self.reason = f"no simulated body named '{self._body_name()}'"
            self.track = None
            return
        s = self.sim.state
        ox, oy = body
        self.track = _Waypoints(
            [(s.ax, SAFE_HEIGHT), (ox, SAFE_HEIGHT), (ox, oy + 0.002)],
            self.params.approach_speed,
        )

    def update(self) -> Status:
        if self.track is None:
            return self._finish(Status.FAILURE)
        name = self._body_name()
        body = self.sim.bodies[name]
        s = self.sim.state
        if math.hypot(s.x - body[0], s.y - body[1]) <= GRASP_RADIUS:
            self.sim.attach(name)
            if self.wm is not None and "robot" in self.binding and "object" in self.binding:
                holding = self.wm.ontology.relation_by_local("holding")
                self.wm.assert_triple(
                    Triple(self.binding["robot"], holding, self.binding["object"])
                )
            return self._finish(Status.SUCCESS)
        return Status.RUNNING

    def control(self, sim: Workcell):
        self.track.control(sim)


@register("transfer_motion")
class TransferMotion(Behavior):
    """Rise to a safe height, traverse, descend to hover over the target."""

    TOLERANCE = 0.005

    def start(self):
        target = self.binding.get("to")
        tx, ty = NOMINAL_HOLE_X, HOVER_HEIGHT
        if self.wm is not None and target is not None:
            inst = self.wm.instances.get(target)
            if inst is not None and inst.pose is not None:
                tx = inst.pose[0]
        s = self.sim.state
        self.goal = (tx, HOVER_HEIGHT)
        self.track = _Waypoints(
            [(s.ax, SAFE_HEIGHT), (tx, SAFE_HEIGHT), self.goal],
            self.params.approach_speed,
        )

    def update(self) -> Status:
        s = self.sim.state
        if self.track.done and math.hypot(s.x - self.goal[0], s.y - self.goal[1]) <= self.TOLERANCE:
            return self._finish(Status.SUCCESS)
        return Status.RUNNING

    def control(self, sim: Workcell):
        self.track.control(sim)


@register("press_search_insert")
class PressSearchInsert(Behavior):
    """Descend at approach speed until first contact, then press downward
    with the commanded force while sweeping laterally around the nominal
    slot position until the tip drops in."""

    def start(self):
        self.search_t0 = None
        # The sweep is centered where the gripper happens to be, which is the
        # nominal slot position up to positioning error.
        self.center_x = self.sim.state.ax

    def update(self) -> Status:
        if self.sim.insertion_success():
            self.sim.detach()
            if self.wm is not None and "robot" in self.binding and "object" in self.binding:
                holding = self.wm.ontology.relation_by_local("holding")
                self.wm.retract_triple(
                    Triple(self.binding["robot"], holding, self.binding["object"])
                )
            return self._finish(Status.SUCCESS)
        return Status.RUNNING

    def control(self, sim: Workcell):
        s = sim.state
        p = self.params
        if self.search_t0 is None and s.pen > 0.0:
            self.search_t0 = s.t
        if self.search_t0 is None:
            s.ax = self.center_x
            s.ay -= p.approach_speed * DT
        else:
            t = s.t - self.search_t0
            s.ax = self.center_x + p.search_amplitude * math.sin(
                2.0 * math.pi * p.search_frequency * t
            )
            s.ay = s.y - p.descent_force / p.stiffness_y
