from .nodes import (
    Status,
    TickResult,
    BTNode,
    Sequence,
    Fallback,
    Inverter,
    Retry,
    ConditionLeaf,
    ConstantLeaf,
    SkillLeaf,
    WrappedSkill,
    wrap_skill,
)
from .engine import ExecutionContext, run_to_completion, export_trace, assign_ids

__all__ = [
    "Status",
    "TickResult",
    "BTNode",
    "Sequence",
    "Fallback",
    "Inverter",
    "Retry",
    "ConditionLeaf",
    "ConstantLeaf",
    "SkillLeaf",
    "WrappedSkill",
    "wrap_skill",
    "assign_ids",
    "ExecutionContext",
    "run_to_completion",
    "export_trace",
]
