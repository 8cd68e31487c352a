"""Skill descriptions and implementations.

A description is the semantic signature of a capability: typed parameters
plus pre/hold/post conditions over world-model predicates.  An
implementation realizes a description either as a named primitive behavior
(registered in code, with its continuous motion parameters declared as
bounded BTMG specs) or as a compound behavior tree whose leaves reference
other skills.  Both are immutable after load.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from ..errors import ParseError
from ..world.model import Iri


class ParamKind(enum.Enum):
    REQUIRED = "Required"
    OPTIONAL = "Optional"
    INFERRED = "Inferred"


class Stage(enum.Enum):
    PRE = "Pre"
    HOLD = "Hold"
    POST = "Post"


@dataclass(frozen=True)
class ScalarSpec:
    lo: float
    hi: float
    unit: str


@dataclass(frozen=True)
class ParameterSpec:
    key: str
    kind: ParamKind
    concept: Iri | None = None
    scalar: ScalarSpec | None = None
    default: object = None


@dataclass(frozen=True)
class Condition:
    stage: Stage
    predicate: Iri
    args: tuple
    expected: bool


@dataclass(frozen=True)
class SkillDescription:
    name: str
    params: tuple
    conditions: tuple

    def param(self, key: str) -> ParameterSpec | None:
        for p in self.params:
            if p.key == key:
                return p
        return None

    def stage_conditions(self, stage: Stage):
        return [c for c in self.conditions if c.stage == stage]


@dataclass(frozen=True)
class BtmgParamSpec:
    name: str
    lo: float
    hi: float
    unit: str


@dataclass(frozen=True)
class Primitive:
    behavior: str
    btmg: tuple


@dataclass(frozen=True)
class CompoundSpec:
    """Node of a compound skill's behavior tree.

    kind is one of Sequence / Fallback / Inverter / Retry / skill; `skill`
    leaves carry the referenced description name and a bind map from the
    child's parameter keys to the owner's keys.
    """

    kind: str
    children: tuple = ()
    memory: bool = True
    attempts: int = 1
    skill: str = ""
    bind: tuple = ()  # sorted (child_key, owner_key) pairs


@dataclass(frozen=True)
class SkillImplementation:
    implements: str
    body: object  # Primitive | CompoundSpec


@dataclass
class SkillLibrary:
    descriptions: dict = field(default_factory=dict)
    implementations: dict = field(default_factory=dict)

    def description(self, name: str) -> SkillDescription | None:
        return self.descriptions.get(name)

    def implementation(self, name: str) -> SkillImplementation | None:
        return self.implementations.get(name)


def parse_iri(text: str) -> Iri:
    if ":" in text:
        prefix, local = text.split(":", 1)
        return Iri(prefix, local)
    return Iri("", text)


def _parse_param(raw: dict, owner: str) -> ParameterSpec:
    try:
        kind = ParamKind(raw["kind"])
    except (KeyError, ValueError):
        raise ParseError(f"skill '{owner}': parameter {raw.get('key')} has a bad kind")
    concept = parse_iri(raw["concept"]) if "concept" in raw else None
    scalar = None
    if "scalar" in raw:
        s = raw["scalar"]
        scalar = ScalarSpec(float(s["lo"]), float(s["hi"]), str(s.get("unit", "")))
        if not scalar.lo < scalar.hi:
            raise ParseError(f"skill '{owner}': scalar bounds must satisfy lo < hi for {raw['key']}")
    if kind is ParamKind.INFERRED and concept is None:
        raise ParseError(f"skill '{owner}': Inferred parameter {raw['key']} needs a concept type")
    if concept is None and scalar is None:
        raise ParseError(f"skill '{owner}': parameter {raw['key']} needs a concept or scalar type")
    return ParameterSpec(str(raw["key"]), kind, concept, scalar, raw.get("default"))


def _parse_condition(raw: dict, owner: str) -> Condition:
    try:
        stage = Stage(raw["stage"])
    except (KeyError, ValueError):
        raise ParseError(f"skill '{owner}': condition has a bad stage")
    args = tuple(raw.get("args", ()))
    if len(args) != 2:
        raise ParseError(f"skill '{owner}': conditions take exactly two args, got {len(args)}")
    return Condition(stage, parse_iri(raw["predicate"]), args, bool(raw.get("expected", True)))


def _parse_compound(raw: dict, owner: str) -> CompoundSpec:
    if "skill" in raw:
        bind = tuple(sorted((str(k), str(v)) for k, v in raw.get("bind", {}).items()))
        return CompoundSpec(kind="skill", skill=str(raw["skill"]), bind=bind)
    kind = raw.get("type")
    if kind not in ("Sequence", "Fallback", "Inverter", "Retry"):
        raise ParseError(f"skill '{owner}': unknown compound node type {kind!r}")
    children = tuple(_parse_compound(c, owner) for c in raw.get("children", ()))
    if not children:
        raise ParseError(f"skill '{owner}': compound {kind} needs children")
    return CompoundSpec(
        kind=kind,
        children=children,
        memory=bool(raw.get("memory", True)),
        attempts=int(raw.get("attempts", 1)),
    )


def load_library(text: str) -> SkillLibrary:
    """Parse a JSON skill library with `descriptions` and `implementations`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"skill library is not valid JSON: {exc.msg}", exc.lineno, exc.colno)

    lib = SkillLibrary()
    for raw in doc.get("descriptions", ()):
        name = str(raw["name"])
        if name in lib.descriptions:
            raise ParseError(f"duplicate skill description '{name}'")
        params = tuple(_parse_param(p, name) for p in raw.get("params", ()))
        keys = [p.key for p in params]
        if len(keys) != len(set(keys)):
            raise ParseError(f"skill '{name}': duplicate parameter keys")
        conditions = tuple(_parse_condition(c, name) for c in raw.get("conditions", ()))
        lib.descriptions[name] = SkillDescription(name, params, conditions)

    for raw in doc.get("implementations", ()):
        implements = str(raw["implements"])
        if "primitive" in raw:
            p = raw["primitive"]
            btmg = tuple(
                BtmgParamSpec(str(b["name"]), float(b["lo"]), float(b["hi"]), str(b.get("unit", "")))
                for b in p.get("btmg", ())
            )
            for b in btmg:
                if not b.lo < b.hi:
                    raise ParseError(f"implementation of '{implements}': BTMG bounds need lo < hi ({b.name})")
            body = Primitive(str(p["behavior"]), btmg)
        elif "compound" in raw:
            body = _parse_compound(raw["compound"], implements)
        else:
            raise ParseError(f"implementation of '{implements}' needs 'primitive' or 'compound'")
        lib.implementations[implements] = SkillImplementation(implements, body)
    return lib
