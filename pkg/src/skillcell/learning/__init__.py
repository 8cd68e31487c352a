from .space import ParameterSpace, PriorOnOptimum
from .pareto import pareto_front, hypervolume
from .gp import GaussianProcess, fit_gp_grid, fit_surrogates
from .acquire import expected_improvement, suggest_next
from .run import Archive, Candidate, LearnScenario, learn, select_policy

__all__ = [
    "ParameterSpace",
    "PriorOnOptimum",
    "pareto_front",
    "hypervolume",
    "GaussianProcess",
    "fit_gp_grid",
    "fit_surrogates",
    "expected_improvement",
    "suggest_next",
    "Archive",
    "Candidate",
    "LearnScenario",
    "learn",
    "select_policy",
]
