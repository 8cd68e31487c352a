"""Tree execution: context, fixed-cadence run loop, trace export."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .nodes import BTNode, Status, TickResult, failure


@dataclass
class TraceEntry:
    node_id: str
    tick: int
    status: str
    reason: str | None = None

    def to_json(self) -> str:
        doc = {"node": self.node_id, "tick": self.tick, "status": self.status}
        if self.reason:
            doc["reason"] = self.reason
        return json.dumps(doc, separators=(",", ":"))


@dataclass
class ExecutionContext:
    """Shared handles for one tree run.

    `pre_tick`/`post_tick` hook the surrounding loop (world-model sync and
    simulator advance); `behavior_factory(name, binding)` resolves primitive
    behaviors registered by the simulator.
    """

    world_model: object = None
    sim: object = None
    tick_budget: int = 1000
    behavior_factory: object = None
    pre_tick: object = None
    post_tick: object = None
    trace: list = field(default_factory=list)
    tick_index: int = 0

    def record(self, node: BTNode, result: TickResult):
        self.trace.append(
            TraceEntry(node.node_id, self.tick_index, result.status.value, result.reason)
        )


def assign_ids(root: BTNode, prefix: str = "") -> BTNode:
    """Stable depth-first ids ('0', '0.1', ...) for trace readability."""
    def visit(node, path):
        node.node_id = f"{prefix}{path}:{node.node_id.split(':')[-1].split('#')[0]}"
        kids = []
        if hasattr(node, "children"):
            kids = node.children
        elif hasattr(node, "child"):
            kids = [node.child]
        for i, c in enumerate(kids):
            visit(c, f"{path}.{i}")

    visit(root, "0")
    return root


def run_to_completion(root: BTNode, ctx: ExecutionContext):
    """Tick at fixed cadence until the tree settles or the budget runs out.

    Returns (final TickResult, trace).  Budget exhaustion is reported as a
    Failure with reason TickBudgetExceeded.
    """
    if ctx.tick_budget <= 0:
        raise ValueError("tick budget must be positive")
    result = None
    for _ in range(ctx.tick_budget):
        ctx.tick_index += 1
        if ctx.pre_tick is not None:
            ctx.pre_tick(ctx)
        result = root.tick(ctx)
        if ctx.post_tick is not None:
            ctx.post_tick(ctx)
        if result.status is not Status.RUNNING:
            return result, ctx.trace
    return failure(f"TickBudgetExceeded: still Running after {ctx.tick_budget} ticks"), ctx.trace


def export_trace(trace) -> str:
    """Line-delimited JSON trace records for the console's execution view."""
    return "\n".join(entry.to_json() for entry in trace)
