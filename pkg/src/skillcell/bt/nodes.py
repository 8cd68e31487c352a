"""Behavior-tree nodes with Success/Failure/Running tick semantics.

Composites follow the usual algebra: a Sequence returns the first
non-Success child result (left to right), a Fallback the first non-Failure.
With memory=True a composite resumes at the child that was Running last
tick instead of re-ticking earlier children.  Condition leaves map a
world-model predicate check to Success/Failure and never return Running.

Skills enter the tree through `wrap_skill`, which guards a skill leaf with
its description's condition stages: post-conditions already satisfied short
circuit to Success without executing, a failed pre-condition aborts before
execution, hold conditions are re-checked every tick while the body runs,
and a body that reports Success without establishing its post-conditions
fails with reason PostUnverified.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from ..skills.ground import check_conditions, ground
from ..skills.model import CompoundSpec, ParamKind, Primitive, Stage


class Status(enum.Enum):
    SUCCESS = "Success"
    FAILURE = "Failure"
    RUNNING = "Running"


@dataclass(frozen=True)
class TickResult:
    status: Status
    reason: str | None = None

    @property
    def succeeded(self):
        return self.status is Status.SUCCESS


SUCCESS = TickResult(Status.SUCCESS)
RUNNING = TickResult(Status.RUNNING)


def failure(reason: str) -> TickResult:
    return TickResult(Status.FAILURE, reason)


_node_counter = itertools.count()


class BTNode:
    """Base node; subclasses implement _tick(ctx)."""

    label = "node"

    def __init__(self):
        self.node_id = f"{self.label}#{next(_node_counter)}"

    def tick(self, ctx) -> TickResult:
        result = self._tick(ctx)
        ctx.record(self, result)
        return result

    def _tick(self, ctx) -> TickResult:
        raise NotImplementedError

    def reset(self):
        """Clear execution state (cursor, phase) in this subtree."""

    def walk(self):
        yield self


class _Composite(BTNode):
    def __init__(self, children, memory=False):
        super().__init__()
        if not children:
            raise ValueError(f"{self.label} requires at least one child")
        self.children = list(children)
        self.memory = bool(memory)
        self._cursor = 0

    def reset(self):
        self._cursor = 0
        for c in self.children:
            c.reset()

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


class Sequence(_Composite):
    label = "sequence"

    def _tick(self, ctx) -> TickResult:
        start = self._cursor if self.memory else 0
        for i in range(start, len(self.children)):
            result = self.children[i].tick(ctx)
            if result.status is Status.RUNNING:
                self._cursor = i
                return result
            if result.status is Status.FAILURE:
                self._cursor = 0
                return result
        self._cursor = 0
        return SUCCESS


class Fallback(_Composite):
    label = "fallback"

    def _tick(self, ctx) -> TickResult:
        start = self._cursor if self.memory else 0
        last = None
        for i in range(start, len(self.children)):
            result = self.children[i].tick(ctx)
            if result.status is Status.RUNNING:
                self._cursor = i
                return result
            if result.status is Status.SUCCESS:
                self._cursor = 0
                return result
            last = result
        self._cursor = 0
        return last if last is not None else failure("all fallback children failed")


class Inverter(BTNode):
    label = "inverter"

    def __init__(self, child):
        super().__init__()
        self.child = child

    def _tick(self, ctx) -> TickResult:
        result = self.child.tick(ctx)
        if result.status is Status.SUCCESS:
            return failure("inverted success")
        if result.status is Status.FAILURE:
            return SUCCESS
        return result

    def reset(self):
        self.child.reset()

    def walk(self):
        yield self
        yield from self.child.walk()


class Retry(BTNode):
    """Re-tick a failed child up to `attempts` times within one tick."""

    label = "retry"

    def __init__(self, child, attempts):
        super().__init__()
        if attempts < 1:
            raise ValueError("Retry needs attempts >= 1")
        self.child = child
        self.attempts = int(attempts)

    def _tick(self, ctx) -> TickResult:
        result = self.child.tick(ctx)
        tries = 1
        while result.status is Status.FAILURE and tries < self.attempts:
            self.child.reset()
            result = self.child.tick(ctx)
            tries += 1
        return result

    def reset(self):
        self.child.reset()

    def walk(self):
        yield self
        yield from self.child.walk()


class ConstantLeaf(BTNode):
    """Fixed-status leaf; used for degenerate trees and in tests."""

    label = "constant"

    def __init__(self, status: Status, reason=None):
        super().__init__()
        self.result = TickResult(status, reason if status is Status.FAILURE else None)

    def _tick(self, ctx) -> TickResult:
        return self.result


class ConditionLeaf(BTNode):
    label = "condition"

    def __init__(self, predicate, subject, object, expected=True):
        super().__init__()
        self.predicate = predicate
        self.subject = subject
        self.object = object
        self.expected = expected

    def _tick(self, ctx) -> TickResult:
        ok = ctx.world_model.eval_predicate(self.predicate, self.subject, self.object, self.expected)
        if ok:
            return SUCCESS
        return failure(f"{self.predicate}({self.subject}, {self.object}) != {self.expected}")


class SkillLeaf(BTNode):
    """Executable body of a skill: a registered primitive behavior or an
    expanded compound subtree.  Normally ticked through WrappedSkill."""

    label = "skill"

    def __init__(self, description, binding, implementation, library=None):
        super().__init__()
        self.description = description
        self.binding = dict(binding)
        self.implementation = implementation
        self.library = library
        self.node_id = f"skill:{description.name}#{self.node_id.split('#')[1]}"
        self._behavior = None
        self._subtree = None
        if isinstance(implementation.body, CompoundSpec):
            self._subtree = self._expand(implementation.body)

    def _expand(self, spec: CompoundSpec) -> BTNode:
        if spec.kind == "skill":
            child_desc = self.library.description(spec.skill)
            child_impl = self.library.implementation(spec.skill)
            partial = {ck: self.binding[ok] for ck, ok in spec.bind if ok in self.binding}
            return WrappedSkill(child_desc, partial, child_impl, self.library)
        children = [self._expand(c) for c in spec.children]
        if spec.kind == "Sequence":
            return Sequence(children, memory=spec.memory)
        if spec.kind == "Fallback":
            return Fallback(children, memory=spec.memory)
        if spec.kind == "Inverter":
            return Inverter(children[0])
        return Retry(children[0], spec.attempts)

    def _tick(self, ctx) -> TickResult:
        if self._subtree is not None:
            return self._subtree.tick(ctx)
        if self._behavior is None:
            factory = ctx.behavior_factory
            if factory is None:
                return failure(f"no behavior registry for primitive '{self.implementation.body.behavior}'")
            self._behavior = factory(self.implementation.body.behavior, self.binding)
        status = self._behavior.tick(ctx)
        if status is Status.RUNNING:
            return RUNNING
        if status is Status.SUCCESS:
            return SUCCESS
        return failure(getattr(self._behavior, "reason", "primitive failed"))

    def abort(self, ctx):
        if self._behavior is not None:
            self._behavior.abort(ctx)
        self.reset()

    def reset(self):
        self._behavior = None
        if self._subtree is not None:
            self._subtree.reset()

    def walk(self):
        yield self
        if self._subtree is not None:
            yield from self._subtree.walk()


class WrappedSkill(BTNode):
    """Condition-guarded skill execution (the extended-skill wrapper).

    Idle entry: Success immediately when post-conditions already hold;
    Failure when a pre-condition is violated.  While the body runs, hold
    conditions are checked every tick and a violation aborts the body.  A
    body Success is verified against the post-conditions before the wrapper
    reports Success.
    """

    label = "wrapped"

    def __init__(self, description, binding, implementation, library=None):
        super().__init__()
        self.description = description
        self.partial = dict(binding)
        self.implementation = implementation
        self.library = library
        self.node_id = f"wrapped:{description.name}#{self.node_id.split('#')[1]}"
        self.binding = None
        self._leaf = None
        self._running = False

    def _tick(self, ctx) -> TickResult:
        desc = self.description
        if not self._running:
            if self.binding is None:
                try:
                    self.binding = ground(desc, self.partial, ctx.world_model)
                except Exception as exc:
                    return failure(f"grounding failed: {exc}")
            ok, _ = check_conditions(desc, Stage.POST, self.binding, ctx.world_model)
            if ok:
                return SUCCESS
            ok, cond = check_conditions(desc, Stage.PRE, self.binding, ctx.world_model)
            if not ok:
                return failure(f"pre-condition failed: {_cond_text(cond, self.binding)}")
            self._leaf = SkillLeaf(desc, self.binding, self.implementation, self.library)
            self._running = True

        ok, cond = check_conditions(desc, Stage.HOLD, self.binding, ctx.world_model)
        if not ok:
            self._leaf.abort(ctx)
            self._finish()
            return failure(f"hold-condition violated: {_cond_text(cond, self.binding)}")

        result = self._leaf.tick(ctx)
        if result.status is Status.RUNNING:
            return result
        if result.status is Status.FAILURE:
            self._finish()
            return result
        ok, cond = check_conditions(desc, Stage.POST, self.binding, ctx.world_model)
        self._finish()
        if not ok:
            return failure(f"PostUnverified: {_cond_text(cond, self.binding)}")
        return SUCCESS

    def _finish(self):
        self._running = False
        self._leaf = None

    def reset(self):
        self._finish()

    def walk(self):
        yield self
        if self._leaf is not None:
            yield from self._leaf.walk()


def _cond_text(cond, binding):
    args = ", ".join(str(binding.get(a, a)) for a in cond.args)
    return f"{cond.predicate}({args})={cond.expected}"


def wrap_skill(description, binding, implementation, library=None) -> WrappedSkill:
    """Guard a skill with its pre/hold/post condition stages."""
    return WrappedSkill(description, binding, implementation, library)
