"""Forward state-space planning over the ground STRIPS task.

Default search is A* with the additive-relaxation heuristic (h_add is
inadmissible, so returned plans are good but not guaranteed shortest);
`optimal=True` switches to blind uniform-cost search, which is what the
oracle-comparison tests use.  Ties break on (f, g, lexicographic action
text) so results are deterministic.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass

from ..errors import NoPlan, PlanTimeout
from .model import Literal, Plan, PlanStep, PddlDomain, PddlProblem

INF = float("inf")


@dataclass(frozen=True)
class GroundAction:
    name: str
    args: tuple
    binding: tuple  # ((param key, object), ...)
    pre_pos: frozenset
    pre_neg: frozenset
    add: frozenset
    delete: frozenset

    def text(self) -> str:
        return "(" + " ".join((self.name,) + self.args) + ")"


def _type_table(domain: PddlDomain):
    """type -> set of types included in it (self + descendants)."""
    children: dict = {}
    for t, parent in domain.types.items():
        children.setdefault(parent, set()).add(t)
    table = {}
    for t in domain.types:
        seen = {t}
        stack = [t]
        while stack:
            for c in children.get(stack.pop(), ()):
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        table[t] = seen
    return table


def ground_task(domain: PddlDomain, problem: PddlProblem):
    """(ground actions, init frozenset, goal literals)."""
    table = _type_table(domain)
    by_type: dict = {}
    for obj, t in problem.objects.items():
        by_type.setdefault(t, []).append(obj)

    def candidates(t):
        out = []
        for sub in table.get(t, {t}):
            out.extend(by_type.get(sub, ()))
        return sorted(out)

    actions = []
    for action in domain.actions:
        pools = [candidates(t) for _, t in action.params]
        keys = [v.lstrip("?") for v, _ in action.params]
        for combo in itertools.product(*pools):
            env = dict(zip((v for v, _ in action.params), combo))
            pre_pos, pre_neg, add, delete = set(), set(), set(), set()
            for lit in action.precondition:
                atom = (lit.name,) + tuple(env[a] for a in lit.args)
                (pre_pos if lit.positive else pre_neg).add(atom)
            for lit in action.effect:
                atom = (lit.name,) + tuple(env[a] for a in lit.args)
                (add if lit.positive else delete).add(atom)
            actions.append(
                GroundAction(
                    action.name,
                    combo,
                    tuple(zip(keys, combo)),
                    frozenset(pre_pos),
                    frozenset(pre_neg),
                    frozenset(add),
                    frozenset(delete),
                )
            )
    actions.sort(key=GroundAction.text)

    init = frozenset((l.name,) + l.args for l in problem.init if l.positive)
    return actions, init, list(problem.goal)


def _goal_satisfied(state, goal) -> bool:
    for lit in goal:
        atom = (lit.name,) + lit.args
        if lit.positive != (atom in state):
            return False
    return True


def _applicable(state, action) -> bool:
    return action.pre_pos <= state and not (action.pre_neg & state)


def _h_add(state, actions, goal) -> float:
    """Additive delete-relaxation estimate; negative parts cost zero."""
    cost = {atom: 0.0 for atom in state}
    changed = True
    while changed:
        changed = False
        for a in actions:
            total = 0.0
            for p in a.pre_pos:
                c = cost.get(p, INF)
                if c == INF:
                    total = INF
                    break
                total += c
            if total == INF:
                continue
            new = total + 1.0
            for atom in a.add:
                if new < cost.get(atom, INF):
                    cost[atom] = new
                    changed = True
    h = 0.0
    for lit in goal:
        if lit.positive:
            c = cost.get((lit.name,) + lit.args, INF)
            if c == INF:
                return INF
            h += c
    return h


def plan(
    domain: PddlDomain,
    problem: PddlProblem,
    optimal: bool = False,
    timeout: float = 10.0,
) -> Plan:
    """Cost-optimal under `optimal=True` (uniform cost); h_add-guided A*
    otherwise.  Raises NoPlan / PlanTimeout."""
    actions, init, goal = ground_task(domain, problem)
    deadline = time.monotonic() + timeout

    def h(state):
        return 0.0 if optimal else _h_add(state, actions, goal)

    h0 = h(init)
    if h0 == INF:
        raise NoPlan("goal unreachable from the initial state (relaxed)")

    counter = itertools.count()  # guards the heap from comparing states
    open_heap = [(h0, 0.0, (), next(counter), (), init)]
    best_g = {init: 0.0}
    while open_heap:
        if time.monotonic() > deadline:
            raise PlanTimeout(f"planning exceeded {timeout} s")
        f, g, _text, _, path, state = heapq.heappop(open_heap)
        if best_g.get(state, INF) < g:
            continue
        if _goal_satisfied(state, goal):
            steps = [PlanStep(a.name, a.binding) for a in path]
            return Plan(steps)
        for a in actions:
            if not _applicable(state, a):
                continue
            nxt = frozenset((state - a.delete) | a.add)
            ng = g + 1.0
            if ng >= best_g.get(nxt, INF):
                continue
            best_g[nxt] = ng
            hn = h(nxt)
            if hn == INF:
                continue
            entry = (
                ng + hn,
                ng,
                _text + (a.text(),),
                next(counter),
                path + (a,),
                nxt,
            )
            heapq.heappush(open_heap, entry)
    raise NoPlan("search space exhausted without reaching the goal")


def validate_plan(domain: PddlDomain, problem: PddlProblem, steps) -> frozenset:
    """Apply steps symbolically from init; raises NoPlan on a violated
    precondition or unsatisfied goal.  Returns the final state."""
    actions, state, goal = ground_task(domain, problem)
    index = {(a.name,) + a.args: a for a in actions}
    for step in steps:
        key = (step.skill,) + tuple(v for _, v in step.binding)
        action = index.get(key)
        if action is None or not _applicable(state, action):
            raise NoPlan(f"step {step.text()} is not applicable")
        state = frozenset((state - action.delete) | action.add)
    if not _goal_satisfied(state, goal):
        raise NoPlan("plan does not reach the goal")
    return state
