from .model import (
    ParamKind,
    Stage,
    ScalarSpec,
    ParameterSpec,
    Condition,
    SkillDescription,
    BtmgParamSpec,
    Primitive,
    CompoundSpec,
    SkillImplementation,
    SkillLibrary,
    load_library,
)
from .ground import ground, check_conditions, validate_implementation, ValidationReport

__all__ = [
    "ParamKind",
    "Stage",
    "ScalarSpec",
    "ParameterSpec",
    "Condition",
    "SkillDescription",
    "BtmgParamSpec",
    "Primitive",
    "CompoundSpec",
    "SkillImplementation",
    "SkillLibrary",
    "load_library",
    "ground",
    "check_conditions",
    "validate_implementation",
    "ValidationReport",
]
