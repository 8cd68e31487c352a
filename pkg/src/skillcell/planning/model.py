"""STRIPS data model (:typing + :negative-preconditions) and canonical text.

Emission is deterministic: types grouped by parent, predicates/actions/
objects/init sorted, 2-space indentation.  `emit -> parse -> emit` is
byte-identical by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Literal:
    """(not) (name arg1 arg2 ...); args are object names or ?variables."""

    name: str
    args: tuple
    positive: bool = True

    def text(self) -> str:
        atom = "(" + " ".join((self.name,) + self.args) + ")"
        return atom if self.positive else f"(not {atom})"

    def negate(self) -> "Literal":
        return Literal(self.name, self.args, not self.positive)


@dataclass(frozen=True)
class PddlPredicate:
    name: str
    params: tuple  # ((var, type), ...)

    def text(self) -> str:
        inner = " ".join(f"{v} - {t}" for v, t in self.params)
        return f"({self.name} {inner})" if inner else f"({self.name})"


@dataclass(frozen=True)
class PddlAction:
    name: str
    params: tuple  # ((var, type), ...) in declaration order
    precondition: tuple  # Literals in declaration order
    effect: tuple

    def text(self) -> str:
        params = " ".join(f"{v} - {t}" for v, t in self.params)
        pre = " ".join(l.text() for l in self.precondition)
        eff = " ".join(l.text() for l in self.effect)
        return (
            f"  (:action {self.name}\n"
            f"    :parameters ({params})\n"
            f"    :precondition (and {pre})\n"
            f"    :effect (and {eff}))"
        )


@dataclass
class PddlDomain:
    name: str
    types: dict  # type name -> parent name or None
    predicates: list
    actions: list

    def text(self) -> str:
        lines = [f"(define (domain {self.name})"]
        lines.append("  (:requirements :strips :typing :negative-preconditions)")
        groups: dict = {}
        roots = []
        for t, parent in sorted(self.types.items()):
            if parent is None:
                roots.append(t)
            else:
                groups.setdefault(parent, []).append(t)
        type_lines = [
            "    " + " ".join(sorted(children)) + f" - {parent}"
            for parent, children in sorted(groups.items())
        ]
        if roots:
            type_lines.append("    " + " ".join(sorted(roots)))
        lines.append("  (:types\n" + "\n".join(type_lines) + ")")
        pred_lines = ["    " + p.text() for p in sorted(self.predicates, key=lambda p: p.name)]
        lines.append("  (:predicates\n" + "\n".join(pred_lines) + ")")
        for action in sorted(self.actions, key=lambda a: a.name):
            lines.append(action.text())
        return "\n".join(lines) + "\n)\n"

    def action(self, name: str) -> PddlAction | None:
        for a in self.actions:
            if a.name == name:
                return a
        return None


@dataclass
class PddlProblem:
    name: str
    domain: str
    objects: dict  # object name -> type name
    init: list  # ground Literals (positive)
    goal: list  # ground Literals, order preserved

    def text(self) -> str:
        lines = [f"(define (problem {self.name})", f"  (:domain {self.domain})"]
        by_type: dict = {}
        for obj, t in self.objects.items():
            by_type.setdefault(t, []).append(obj)
        obj_lines = [
            "    " + " ".join(sorted(objs)) + f" - {t}" for t, objs in sorted(by_type.items())
        ]
        lines.append("  (:objects\n" + "\n".join(obj_lines) + ")")
        init_lines = ["    " + l.text() for l in sorted(self.init, key=lambda l: l.text())]
        lines.append("  (:init\n" + "\n".join(init_lines) + ")")
        goal_inner = " ".join(l.text() for l in self.goal)
        lines.append(f"  (:goal (and {goal_inner})))")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PlanStep:
    skill: str
    binding: tuple  # ((param key, object name), ...) in action param order

    def text(self) -> str:
        return "(" + " ".join((self.skill,) + tuple(v for _, v in self.binding)) + ")"

    def binding_dict(self) -> dict:
        return dict(self.binding)


@dataclass
class Plan:
    steps: list

    def __len__(self):
        return len(self.steps)

    def text(self) -> str:
        return "\n".join(s.text() for s in self.steps)

    def to_json(self) -> list:
        return [{"skill": s.skill, "binding": dict(s.binding)} for s in self.steps]


@dataclass
class Goal:
    """Conjunction of ground literals, order preserved from the input."""

    literals: list = field(default_factory=list)

    def text(self) -> str:
        return "(and " + " ".join(l.text() for l in self.literals) + ")"
