import pytest

from skillcell.bt.engine import ExecutionContext, export_trace, run_to_completion
from skillcell.bt.nodes import (
    ConditionLeaf,
    ConstantLeaf,
    Fallback,
    Inverter,
    Retry,
    Sequence,
    Status,
    wrap_skill,
)
from skillcell.skills.ground import ground
from skillcell.world.model import Triple

from conftest import iri
from oracles import F, R, S, enumerate_trees, ref_tick

STATUS = {S: Status.SUCCESS, F: Status.FAILURE, R: Status.RUNNING}


def build(tree):
    kind = tree[0]
    if kind == "leaf":
        return ConstantLeaf(STATUS[tree[1]])
    if kind == "seq":
        return Sequence([build(c) for c in tree[1]])
    if kind == "fall":
        return Fallback([build(c) for c in tree[1]])
    if kind == "inv":
        return Inverter(build(tree[1]))
    if kind == "retry":
        return Retry(build(tree[1]), attempts=2)
    raise ValueError(kind)


def tick_once(node):
    return node.tick(ExecutionContext(tick_budget=1))


def test_sequence_success():
    node = Sequence([ConstantLeaf(Status.SUCCESS), ConstantLeaf(Status.SUCCESS)])
    assert tick_once(node).status is Status.SUCCESS


def test_fallback_running():
    node = Fallback([ConstantLeaf(Status.FAILURE), ConstantLeaf(Status.RUNNING)])
    assert tick_once(node).status is Status.RUNNING


def test_depth2_matches_reference():
    for tree in enumerate_trees(2):
        got = tick_once(build(tree)).status.value[0]
        assert got == ref_tick(tree), tree


def test_depth3_sample_matches_reference():
    trees = enumerate_trees(3)
    for tree in trees[::7]:  # systematic sample; the full sweep runs in acceptance
        got = tick_once(build(tree)).status.value[0]
        assert got == ref_tick(tree), tree


def test_memory_sequence_resumes():
    class CountingLeaf(ConstantLeaf):
        def __init__(self, status):
            super().__init__(status)
            self.ticks = 0

        def _tick(self, ctx):
            self.ticks += 1
            return super()._tick(ctx)

    first = CountingLeaf(Status.SUCCESS)
    second = CountingLeaf(Status.RUNNING)
    node = Sequence([first, second], memory=True)
    ctx = ExecutionContext(tick_budget=10)
    node.tick(ctx)
    node.tick(ctx)
    assert first.ticks == 1 and second.ticks == 2


def test_memoryless_failure_stops_later_children():
    trace_ctx = ExecutionContext(tick_budget=1)
    third = ConstantLeaf(Status.SUCCESS)
    node = Sequence([ConstantLeaf(Status.SUCCESS), ConstantLeaf(Status.FAILURE), third])
    node.tick(trace_ctx)
    assert all(e.node_id != third.node_id for e in trace_ctx.trace)


def test_retry_reticks_failed_child():
    class FlakyLeaf(ConstantLeaf):
        def __init__(self):
            super().__init__(Status.FAILURE)
            self.ticks = 0

        def _tick(self, ctx):
            self.ticks += 1
            if self.ticks >= 3:
                return type(super()._tick(ctx))(Status.SUCCESS)
            return super()._tick(ctx)

    leaf = FlakyLeaf()
    node = Retry(leaf, attempts=3)
    assert tick_once(node).status is Status.SUCCESS
    assert leaf.ticks == 3


def test_run_to_completion_immediate():
    result, trace = run_to_completion(ConstantLeaf(Status.SUCCESS), ExecutionContext(tick_budget=10))
    assert result.status is Status.SUCCESS
    assert len(trace) == 1


def test_run_to_completion_budget():
    result, trace = run_to_completion(ConstantLeaf(Status.RUNNING), ExecutionContext(tick_budget=10))
    assert result.status is Status.FAILURE
    assert "TickBudgetExceeded" in result.reason
    assert trace[-1].tick == 10


def test_condition_leaf(wm):
    leaf = ConditionLeaf(iri("at"), iri("peg1"), iri("locA"), True)
    ctx = ExecutionContext(world_model=wm, tick_budget=1)
    assert leaf.tick(ctx).status is Status.SUCCESS
    bad = ConditionLeaf(iri("holding"), iri("rob1"), iri("peg1"), True)
    assert bad.tick(ctx).status is Status.FAILURE


def test_trace_export_json():
    ctx = ExecutionContext(tick_budget=1)
    ctx.tick_index = 1
    Sequence([ConstantLeaf(Status.SUCCESS)]).tick(ctx)
    lines = export_trace(ctx.trace).splitlines()
    assert len(lines) == 2 and '"status":"Success"' in lines[0]


# -- wrapped skills ------------------------------------------------------------


class StubBehavior:
    """Scripted primitive: a list of Status values, then effects on success."""

    def __init__(self, script, on_success=None):
        self.script = list(script)
        self.on_success = on_success
        self.aborted = False
        self.ticks = 0

    def tick(self, ctx):
        self.ticks += 1
        status = self.script.pop(0) if self.script else Status.RUNNING
        if status is Status.SUCCESS and self.on_success is not None:
            self.on_success(ctx)
        return status

    def abort(self, ctx):
        self.aborted = True


def make_ctx(wm, behavior, budget=50):
    def factory(name, binding):
        return behavior

    return ExecutionContext(world_model=wm, tick_budget=budget, behavior_factory=factory)


def picked(ctx):
    ctx.world_model.assert_triple(Triple(iri("rob1"), iri("holding"), iri("peg1")))


def test_wrap_skill_post_already_true_skips_execution(wm, library):
    wm.assert_triple(Triple(iri("rob1"), iri("holding"), iri("peg1")))
    desc = library.description("pick")
    behavior = StubBehavior([Status.SUCCESS])
    # pick post: holding(rob1, peg1) and not at(peg1, locA); drop the peg from locA.
    wm.set_pose(iri("peg1"), 0.9, 0.9)
    node = wrap_skill(desc, {"robot": iri("rob1"), "object": iri("peg1"), "location": iri("locA")},
                      library.implementation("pick"), library)
    result = node.tick(make_ctx(wm, behavior))
    assert result.status is Status.SUCCESS
    assert behavior.ticks == 0


def test_wrap_skill_pre_failure_names_condition(wm, library):
    desc = library.description("insert")
    behavior = StubBehavior([Status.SUCCESS])
    binding = {"robot": iri("rob1"), "object": iri("peg1"), "hole": iri("hole1"), "location": iri("locH")}
    node = wrap_skill(desc, binding, library.implementation("insert"), library)
    result = node.tick(make_ctx(wm, behavior))
    assert result.status is Status.FAILURE
    assert "pre-condition" in result.reason and "holding" in result.reason
    assert behavior.ticks == 0


def test_wrap_skill_post_unverified(wm, library):
    desc = library.description("pick")
    behavior = StubBehavior([Status.SUCCESS])  # reports success, asserts nothing
    binding = {"robot": iri("rob1"), "object": iri("peg1"), "location": iri("locA")}
    node = wrap_skill(desc, binding, library.implementation("pick"), library)
    result = node.tick(make_ctx(wm, behavior))
    assert result.status is Status.FAILURE
    assert "PostUnverified" in result.reason


def test_wrap_skill_success_with_effects(wm, library):
    desc = library.description("pick")

    def effects(ctx):
        picked(ctx)
        ctx.world_model.set_pose(iri("peg1"), 0.30, 0.045)  # follows the gripper

    behavior = StubBehavior([Status.RUNNING, Status.SUCCESS], on_success=effects)
    binding = {"robot": iri("rob1"), "object": iri("peg1"), "location": iri("locA")}
    node = wrap_skill(desc, binding, library.implementation("pick"), library)
    ctx = make_ctx(wm, behavior)
    assert node.tick(ctx).status is Status.RUNNING
    assert node.tick(ctx).status is Status.SUCCESS


def test_wrap_skill_hold_violation_aborts(wm, library):
    wm.assert_triple(Triple(iri("rob1"), iri("holding"), iri("peg1")))
    wm.set_pose(iri("rob1"), 0.50, 0.02)
    desc = library.description("insert")
    behavior = StubBehavior([Status.RUNNING, Status.RUNNING, Status.RUNNING])
    binding = {"robot": iri("rob1"), "object": iri("peg1"), "hole": iri("hole1"), "location": iri("locH")}
    node = wrap_skill(desc, binding, library.implementation("insert"), library)
    ctx = make_ctx(wm, behavior)
    assert node.tick(ctx).status is Status.RUNNING
    # Drop the peg mid-execution: hold condition holding(rob1, peg1) flips.
    wm.retract_triple(Triple(iri("rob1"), iri("holding"), iri("peg1")))
    result = node.tick(ctx)
    assert result.status is Status.FAILURE
    assert "hold-condition" in result.reason
    assert behavior.aborted


def test_wrap_skill_grounds_lazily(wm, library):
    desc = library.description("pick")

    def effects(ctx):
        picked(ctx)
        ctx.world_model.set_pose(iri("peg1"), 0.30, 0.045)

    behavior = StubBehavior([Status.SUCCESS], on_success=effects)
    node = wrap_skill(desc, {"robot": iri("rob1"), "object": iri("peg1")},
                      library.implementation("pick"), library)
    result = node.tick(make_ctx(wm, behavior))
    assert result.status is Status.SUCCESS
    assert node.binding["location"] == iri("locA")
