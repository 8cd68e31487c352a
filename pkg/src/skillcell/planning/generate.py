"""Domain/problem generation from loaded skills and the world model.

Each skill description becomes one action: concept-typed parameters become
typed action parameters, Pre conditions the precondition conjunction and
Post conditions the effect conjunction.  Hold conditions never appear.
Literal-valued relations (x, width, ...) stay out of the symbolic layer.
"""

from __future__ import annotations

from ..errors import UnknownGoalSymbol, UnplannableAction, UntypedParameter
from ..skills.model import SkillLibrary, Stage
from ..world.model import RDF_TYPE, WorldModel
from ..world.spatial import infer_spatial
from .model import Goal, Literal, PddlAction, PddlDomain, PddlPredicate, PddlProblem


def generate_domain(library: SkillLibrary, wm: WorldModel, name: str = "workcell") -> PddlDomain:
    ont = wm.ontology
    types = {}
    for iri, concept in ont.concepts.items():
        parent = min((str(p) for p in concept.parents), default=None)
        types[iri.local] = parent.split(":", 1)[1] if parent else None

    predicates = [
        PddlPredicate(decl.iri.local, (("?s", decl.domain.local), ("?o", decl.range.local)))
        for decl in ont.relations.values()
        if not decl.is_data
    ]

    actions = []
    for desc in library.descriptions.values():
        param_types = {}
        for p in desc.params:
            if p.concept is not None:
                param_types[p.key] = p.concept.local
        for cond in desc.conditions:
            for arg in cond.args:
                if arg not in param_types:
                    raise UntypedParameter(
                        f"skill '{desc.name}': condition argument '{arg}' is not a concept-typed parameter"
                    )
        post = desc.stage_conditions(Stage.POST)
        if not post:
            raise UnplannableAction(
                f"skill '{desc.name}' has no post-conditions and would be invisible to planning"
            )
        params = tuple((f"?{k}", t) for k, t in param_types.items())
        pre = tuple(
            Literal(c.predicate.local, tuple(f"?{a}" for a in c.args), c.expected)
            for c in desc.stage_conditions(Stage.PRE)
        )
        eff = tuple(
            Literal(c.predicate.local, tuple(f"?{a}" for a in c.args), c.expected)
            for c in post
        )
        actions.append(PddlAction(desc.name, params, pre, eff))

    return PddlDomain(name, types, predicates, actions)


def generate_problem(wm: WorldModel, goal: Goal, name: str = "task", domain: str = "workcell") -> PddlProblem:
    """Objects and init reflect the world model at its current revision;
    init includes spatially derived triples."""
    _validate_goal(wm, goal)
    objects = {inst.iri.local: inst.concept.local for inst in wm.instances.values()}
    init = []
    seen = set()
    for t in wm.query() + infer_spatial(wm):
        if t.predicate == RDF_TYPE or not hasattr(t.object, "local"):
            continue
        atom = Literal(t.predicate.local, (t.subject.local, t.object.local), True)
        if atom not in seen:
            seen.add(atom)
            init.append(atom)
    return PddlProblem(name, domain, objects, init, list(goal.literals))


def _validate_goal(wm: WorldModel, goal: Goal):
    relations = {iri.local for iri, d in wm.ontology.relations.items() if not d.is_data}
    instances = {iri.local for iri in wm.instances}
    for lit in goal.literals:
        if lit.name not in relations:
            raise UnknownGoalSymbol(f"unknown predicate '{lit.name}'")
        for arg in lit.args:
            if arg not in instances:
                raise UnknownGoalSymbol(f"unknown object '{arg}'")
