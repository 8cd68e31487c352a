"""Episode execution: deterministic rollouts producing multi-objective results.

reward = 10 * success - 0.1 * completion_time - 0.01 * max_force
         - 2 * min(1, final_tip_distance / initial_tip_distance)

where tip distances are measured to the true insertion goal point.  The
same (params, variation, seed) triple always reproduces the same episode
bit for bit; the state-sequence hash in the result makes that checkable.
"""

from __future__ import annotations

import math

from ..bt.engine import ExecutionContext, run_to_completion
from ..bt.nodes import Status
from ..planning.compile import compile_plan
from ..planning.model import Plan
from ..world.model import Iri, Triple, WorldModel
from .behaviors import PressSearchInsert, make_behavior_factory
from .types import BtmgParams, EpisodeResult, TaskVariation
from .workcell import DT, HORIZON, STEPS_PER_TICK, Workcell


def _reward(success: bool, time: float, max_force: float, d_final: float, d_start: float) -> float:
    shaped = min(1.0, d_final / d_start) if d_start > 0 else 0.0
    return 10.0 * (1.0 if success else 0.0) - 0.1 * time - 0.01 * max_force - 2.0 * shaped


def _result(sim: Workcell, success: bool, time: float, d_start: float, seed: int, reason="") -> EpisodeResult:
    tip = sim.bodies.get("peg1", (sim.state.x, sim.state.y))
    gx, gy = sim.goal_point()
    d_final = 0.0 if success else math.hypot(tip[0] - gx, tip[1] - gy)
    return EpisodeResult(
        success=success,
        completion_time=time if success else HORIZON,
        max_force=sim.max_force,
        path_length=sim.path_length,
        reward=_reward(success, time if success else HORIZON, sim.max_force, d_final, d_start),
        seed=seed,
        reason=reason,
        state_hash=sim.state_hash(),
    )


def run_insertion_episode(
    params: BtmgParams,
    variation: TaskVariation,
    seed: int,
    horizon: float = HORIZON,
) -> EpisodeResult:
    """Insertion-only episode: the gripper starts 20 mm above the true
    surface, centered on the nominal slot, already holding the peg; no world
    model or tree is involved."""
    sim = Workcell(variation)
    sim.reset(seed, ee_start=(0.50, sim.surface_y + 0.02), attach=True)

    behavior = PressSearchInsert(sim, None, {}, params)
    behavior.started = True
    behavior.start()
    sim.active_behavior = behavior

    gx, gy = sim.goal_point()
    d_start = math.hypot(sim.state.x - gx, sim.state.y - gy)
    steps = int(round(horizon / DT))
    for k in range(0, steps, STEPS_PER_TICK):
        sim.advance(params, STEPS_PER_TICK)
        if sim.insertion_success():
            return _result(sim, True, sim.state.t, d_start, seed)
    return _result(sim, False, horizon, d_start, seed, reason="timeout")


def run_plan_episode(
    plan: Plan,
    library,
    base_wm: WorldModel,
    params: BtmgParams,
    variation: TaskVariation,
    seed: int,
    horizon: float = HORIZON,
) -> EpisodeResult:
    """Execute a compiled plan tree in the simulator against an episode-local
    world-model snapshot; the true hole pose and clearance are written into
    the snapshot (the behaviors still target nominal geometry)."""
    sim = Workcell(variation)
    sim.reset(seed)
    wm = base_wm.snapshot()
    _sync_static(sim, wm)
    _sync_dynamic(sim, wm)

    tree = compile_plan(plan, library, wm)
    ctx = ExecutionContext(
        world_model=wm,
        sim=sim,
        tick_budget=int(round(horizon / (DT * STEPS_PER_TICK))),
        behavior_factory=make_behavior_factory(sim, wm, params),
        pre_tick=lambda c: _sync_dynamic(sim, wm),
        post_tick=lambda c: sim.advance(params, STEPS_PER_TICK),
    )
    peg = sim.bodies["peg1"]
    gx, gy = sim.goal_point()
    d_start = math.hypot(peg[0] - gx, peg[1] - gy)

    outcome, _trace = run_to_completion(tree, ctx)
    if outcome.status is Status.SUCCESS:
        return _result(sim, True, sim.state.t, d_start, seed)
    return _result(sim, False, horizon, d_start, seed, reason=outcome.reason or "failure")


def run_episode(task, params: BtmgParams, variation: TaskVariation, seed: int, *,
                library=None, wm=None, horizon: float = HORIZON) -> EpisodeResult:
    """Run a primitive by name ("insert") or a symbolic Plan."""
    if isinstance(task, str):
        if task != "insert":
            raise ValueError(f"unknown primitive episode task '{task}'")
        return run_insertion_episode(params, variation, seed, horizon)
    if isinstance(task, Plan):
        if library is None or wm is None:
            raise ValueError("plan episodes need a skill library and world model")
        return run_plan_episode(task, library, wm, params, variation, seed, horizon)
    raise TypeError(f"unsupported task: {task!r}")


def make_insertion_evaluator(variation: TaskVariation, horizon: float = HORIZON):
    """learn()-compatible evaluator for the insertion-only task."""
    from .types import objectives as objective_vector

    def evaluate(params: dict, seed: int):
        result = run_insertion_episode(BtmgParams.from_dict(params), variation, seed, horizon)
        record = {"reward": result.reward, "success": result.success, "reason": result.reason}
        return objective_vector(result, horizon), record

    return evaluate


def make_plan_evaluator(plan: Plan, library, wm: WorldModel, variation: TaskVariation,
                        horizon: float = HORIZON):
    """learn()-compatible evaluator running the full compiled plan."""
    from .types import objectives as objective_vector

    def evaluate(params: dict, seed: int):
        result = run_plan_episode(
            plan, library, wm, BtmgParams.from_dict(params), variation, seed, horizon
        )
        record = {"reward": result.reward, "success": result.success, "reason": result.reason}
        return objective_vector(result, horizon), record

    return evaluate


def _iri(wm: WorldModel, local: str) -> Iri | None:
    for iri in wm.instances:
        if iri.local == local:
            return iri
    return None


def _sync_static(sim: Workcell, wm: WorldModel):
    """Write the true (variation-adjusted) hole and obstacle into the model."""
    hole = _iri(wm, "hole1")
    if hole is not None:
        wm.set_pose(hole, sim.hole_x, sim.surface_y)
        clearance = wm.ontology.relation_by_local("clearance")
        if clearance is not None:
            wm.assert_triple(Triple(hole, clearance, sim.clearance))
    obst = _iri(wm, "obst1")
    if obst is not None:
        wm.set_pose(obst, sim.obstacle_x, sim.surface_y)


def _sync_dynamic(sim: Workcell, wm: WorldModel):
    rob = _iri(wm, "rob1")
    if rob is not None:
        wm.set_pose(rob, sim.state.x, sim.state.y)
    peg = _iri(wm, "peg1")
    if peg is not None and "peg1" in sim.bodies:
        body = sim.bodies["peg1"]
        wm.set_pose(peg, body[0], body[1])
