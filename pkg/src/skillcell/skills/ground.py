"""Grounding and condition checking against the world model."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import (
    AmbiguousGrounding,
    MissingRequired,
    NoCandidate,
    TypeMismatch,
    UnknownDescription,
)
from ..world.model import Iri, WorldModel
from .model import (
    CompoundSpec,
    ParamKind,
    Primitive,
    SkillDescription,
    SkillImplementation,
    SkillLibrary,
    Stage,
)


@dataclass
class ValidationReport:
    unresolved_references: list = field(default_factory=list)
    unbound_parameters: list = field(default_factory=list)
    condition_mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (
            self.unresolved_references or self.unbound_parameters or self.condition_mismatches
        )

    def entries(self):
        return (
            [("unresolved-reference", e) for e in self.unresolved_references]
            + [("unbound-parameter", e) for e in self.unbound_parameters]
            + [("condition-mismatch", e) for e in self.condition_mismatches]
        )


def validate_implementation(impl: SkillImplementation, lib: SkillLibrary) -> ValidationReport:
    """Static checks: leaf references resolve, bind keys exist on both sides,
    and the implemented description's condition args are declared params."""
    desc = lib.description(impl.implements)
    if desc is None:
        raise UnknownDescription(f"no description named '{impl.implements}'")

    report = ValidationReport()
    own_keys = {p.key for p in desc.params}
    for cond in desc.conditions:
        for arg in cond.args:
            if arg not in own_keys:
                report.condition_mismatches.append(
                    f"{desc.name}: condition {cond.predicate} references unknown key '{arg}'"
                )

    if isinstance(impl.body, CompoundSpec):
        _walk_compound(impl.body, desc, lib, report)
    return report


def _walk_compound(node: CompoundSpec, owner: SkillDescription, lib: SkillLibrary, report):
    if node.kind == "skill":
        child = lib.description(node.skill)
        if child is None:
            report.unresolved_references.append(f"{owner.name}: leaf references unknown skill '{node.skill}'")
            return
        child_keys = {p.key for p in child.params}
        owner_keys = {p.key for p in owner.params}
        for child_key, owner_key in node.bind:
            if child_key not in child_keys:
                report.unbound_parameters.append(
                    f"{owner.name}: bind target '{child_key}' is not a parameter of '{node.skill}'"
                )
            if owner_key not in owner_keys:
                report.unbound_parameters.append(
                    f"{owner.name}: bind source '{owner_key}' is not a parameter of '{owner.name}'"
                )
        # Required params of the child that are neither bound nor inferable.
        bound = {ck for ck, _ in node.bind}
        for p in child.params:
            if p.kind is ParamKind.REQUIRED and p.key not in bound:
                report.unbound_parameters.append(
                    f"{owner.name}: required parameter '{node.skill}.{p.key}' is unbound"
                )
        return
    for c in node.children:
        _walk_compound(c, owner, lib, report)


def ground(desc: SkillDescription, partial: dict, wm: WorldModel) -> dict:
    """Complete a parameter binding.

    Required keys must be present in `partial`; Optional keys fall back to
    their defaults; Inferred keys are bound to the unique world-model
    instance consistent with the description's pre-conditions.
    """
    missing = [
        p.key
        for p in desc.params
        if p.kind is ParamKind.REQUIRED and p.key not in partial
    ]
    if missing:
        raise MissingRequired(missing)

    binding = dict(partial)
    for p in desc.params:
        _check_value(desc, p, binding, wm)
        if p.kind is ParamKind.OPTIONAL and p.key not in binding and p.default is not None:
            binding[p.key] = p.default

    pending = [p for p in desc.params if p.kind is ParamKind.INFERRED and p.key not in binding]
    pre = desc.stage_conditions(Stage.PRE)
    while pending:
        progressed = False
        for p in list(pending):
            conds = [
                c
                for c in pre
                if p.key in c.args
                and all(a == p.key or a in binding for a in c.args)
            ]
            if not conds and len(pending) > 1:
                continue  # wait for other inferred keys first
            candidates = _candidates(p, conds, binding, wm)
            if not candidates:
                raise NoCandidate(
                    f"no {p.concept} instance satisfies the pre-conditions for '{p.key}'"
                )
            if len(candidates) > 1:
                raise AmbiguousGrounding(p.key, candidates)
            binding[p.key] = candidates[0]
            pending.remove(p)
            progressed = True
        if not progressed:
            # Interdependent inferred keys: fall back to type-only resolution
            # of the first pending key, in declaration order.
            p = pending[0]
            candidates = _candidates(p, [], binding, wm)
            if not candidates:
                raise NoCandidate(f"no instance of {p.concept} for '{p.key}'")
            if len(candidates) > 1:
                raise AmbiguousGrounding(p.key, candidates)
            binding[p.key] = candidates[0]
            pending.remove(p)
    return binding


def _check_value(desc, p, binding, wm):
    if p.key not in binding:
        return
    v = binding[p.key]
    if p.concept is not None:
        if not isinstance(v, Iri):
            raise TypeMismatch(f"{desc.name}.{p.key} expects an instance IRI")
        inst = wm.instances.get(v)
        if inst is None or not wm.ontology.is_subconcept(inst.concept, p.concept):
            raise TypeMismatch(f"{desc.name}.{p.key}={v} is not an instance of {p.concept}")
    elif p.scalar is not None:
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise TypeMismatch(f"{desc.name}.{p.key} expects a number")
        if not (p.scalar.lo <= float(v) <= p.scalar.hi):
            raise TypeMismatch(
                f"{desc.name}.{p.key}={v} outside [{p.scalar.lo}, {p.scalar.hi}] {p.scalar.unit}"
            )


def _candidates(p, conds, binding, wm):
    out = []
    for inst in wm.instances_of(p.concept):
        trial = dict(binding)
        trial[p.key] = inst.iri
        if all(_eval_condition(c, trial, wm) for c in conds):
            out.append(inst.iri)
    return out


def _eval_condition(cond, binding, wm: WorldModel) -> bool:
    subject = binding[cond.args[0]]
    obj = binding[cond.args[1]]
    return wm.eval_predicate(cond.predicate, subject, obj, cond.expected)


def check_conditions(desc: SkillDescription, stage: Stage, binding: dict, wm: WorldModel):
    """Conjunction of the stage's conditions; returns (ok, first failed)."""
    for cond in desc.stage_conditions(stage):
        if not _eval_condition(cond, binding, wm):
            return False, cond
    return True, None
