"""Plan-to-tree compilation: a memory Sequence of condition-wrapped skills."""

from __future__ import annotations

from ..bt.nodes import ConstantLeaf, Sequence, Status, wrap_skill
from ..errors import UnknownDescription
from ..skills.model import SkillLibrary
from ..world.model import WorldModel
from .model import Plan


def compile_plan(plan: Plan, library: SkillLibrary, wm: WorldModel):
    """Wrapped-skill Sequence in plan order; an empty plan compiles to a
    constant-Success leaf."""
    if not plan.steps:
        return ConstantLeaf(Status.SUCCESS)
    leaves = []
    for step in plan.steps:
        desc = library.description(step.skill)
        impl = library.implementation(step.skill)
        if desc is None or impl is None:
            raise UnknownDescription(f"plan step '{step.skill}' has no loaded skill")
        binding = {}
        for key, obj_name in step.binding:
            iri = _find_instance(wm, obj_name)
            if iri is None:
                raise UnknownDescription(f"plan step {step.text()}: unknown object '{obj_name}'")
            binding[key] = iri
        leaves.append(wrap_skill(desc, binding, impl, library))
    return Sequence(leaves, memory=True)


def _find_instance(wm: WorldModel, local: str):
    for iri in wm.instances:
        if iri.local == local:
            return iri
    return None
