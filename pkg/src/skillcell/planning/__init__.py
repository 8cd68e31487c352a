from .model import Literal, PddlAction, PddlDomain, PddlPredicate, PddlProblem, Plan, PlanStep, Goal
from .generate import generate_domain, generate_problem
from .parse import parse_goal, parse_domain, parse_problem
from .search import plan, validate_plan
from .compile import compile_plan

__all__ = [
    "Literal",
    "PddlAction",
    "PddlDomain",
    "PddlPredicate",
    "PddlProblem",
    "Plan",
    "PlanStep",
    "Goal",
    "generate_domain",
    "generate_problem",
    "parse_goal",
    "parse_domain",
    "parse_problem",
    "plan",
    "validate_plan",
    "compile_plan",
]
