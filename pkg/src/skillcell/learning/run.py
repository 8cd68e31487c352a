"""Multi-objective skill-parameter search.

A run evaluates `budget` candidates, each aggregated over `repeats`
episodes with seeds derived from (master seed, candidate, repeat) so the
outcome is order-independent and reproducible.  The first min(budget, 4d)
candidates are space-filling (drawn from the prior when one is given,
scrambled Sobol otherwise); afterwards, candidates come from the
prior-weighted scalarized-EI acquisition over refitted GP surrogates.
The hypervolume of the current front (against the scenario's fixed
reference point) is appended after every candidate.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from ..errors import NotOnFront
from .acquire import sobol_points, suggest_next
from .gp import fit_surrogates
from .pareto import hypervolume, pareto_front
from .space import ParameterSpace, PriorOnOptimum


@dataclass
class Candidate:
    cid: int
    params: dict  # native units
    point: tuple  # normalized coordinates
    objectives: tuple  # mean over repeats
    episodes: list = field(default_factory=list)  # per-episode records


@dataclass
class Archive:
    space: ParameterSpace
    senses: tuple
    reference: tuple
    candidates: list = field(default_factory=list)
    hv_history: list = field(default_factory=list)
    selected: int | None = None

    @property
    def iterations(self) -> int:
        return len(self.candidates)

    def front(self) -> list:
        idx = pareto_front([c.objectives for c in self.candidates], self.senses)
        return [self.candidates[i] for i in idx]

    def front_hypervolume(self) -> float:
        pts = [
            c.objectives
            for c in self.front()
            if _dominates_reference(c.objectives, self.reference, self.senses)
        ]
        return hypervolume(pts, self.reference, self.senses)


def _dominates_reference(point, reference, senses) -> bool:
    return all(
        (p >= r) if s == "max" else (p <= r)
        for p, r, s in zip(point, reference, senses)
    )


@dataclass
class LearnScenario:
    space: ParameterSpace
    prior: PriorOnOptimum
    senses: tuple
    objective_names: tuple
    budget: int
    repeats: int = 3
    master_seed: int = 0
    reference_point: tuple = ()

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if not self.reference_point:
            raise ValueError("scenario needs an explicit hypervolume reference point")


def episode_seed(master_seed: int, candidate: int, repeat: int) -> int:
    """Deterministic, order-independent per-episode seed."""
    return int(np.random.SeedSequence([master_seed, candidate, repeat]).generate_state(1)[0])


def learn(scenario: LearnScenario, evaluate, log=None) -> Archive:
    """Run the search.

    `evaluate(params: dict, seed: int) -> (objectives: tuple, record: dict)`
    performs one episode; simulator failures must surface as failed
    objectives, not exceptions.  `log`, when given, receives one dict per
    episode via log.append(...).
    """
    space = scenario.space
    d = space.d
    rng = np.random.default_rng(scenario.master_seed)
    n_bootstrap = min(scenario.budget, 4 * d)
    if scenario.prior.uniform:
        sob = sobol_points(d, n_bootstrap, seed=scenario.master_seed)
        bootstrap = [sob[i] for i in range(n_bootstrap)]
    else:
        bootstrap = [
            space.normalize(scenario.prior.sample(rng)) for _ in range(n_bootstrap)
        ]

    archive = Archive(space, tuple(scenario.senses), tuple(scenario.reference_point))
    X: list = []
    Y: list = []
    iteration_model = 0
    for cid in range(scenario.budget):
        if cid < n_bootstrap:
            point = np.clip(bootstrap[cid], 0.0, 1.0)
        else:
            surrogates = fit_surrogates(np.asarray(X), np.asarray(Y))
            if surrogates is None:
                point = sobol_points(d, 1, seed=episode_seed(scenario.master_seed, cid, 0))[0]
            else:
                iteration_model += 1
                point = suggest_next(
                    surrogates,
                    np.asarray(X),
                    np.asarray(Y),
                    scenario.senses,
                    space,
                    scenario.prior,
                    iteration_model,
                    rng,
                )
        params = space.denormalize(point)
        episodes = []
        obj_sum = None
        for r in range(scenario.repeats):
            seed = episode_seed(scenario.master_seed, cid, r)
            t0 = time.perf_counter()
            objectives, record = evaluate(params, seed)
            record = dict(record)
            record.update(
                {
                    "type": "episode",
                    "candidate_id": cid,
                    "params": params,
                    "seed": seed,
                    "objectives": list(objectives),
                    "wall_time": time.perf_counter() - t0,
                }
            )
            episodes.append(record)
            if log is not None:
                log.append(record)
            obj_sum = (
                list(objectives)
                if obj_sum is None
                else [a + b for a, b in zip(obj_sum, objectives)]
            )
        mean_obj = tuple(v / scenario.repeats for v in obj_sum)
        candidate = Candidate(cid, params, tuple(point.tolist()), mean_obj, episodes)
        archive.candidates.append(candidate)
        X.append(point)
        Y.append(mean_obj)
        archive.hv_history.append(archive.front_hypervolume())
    return archive


def select_policy(archive: Archive, candidate_id: int, log=None) -> Candidate:
    """Return the chosen front member and record the selection."""
    front_ids = {c.cid for c in archive.front()}
    if candidate_id not in front_ids:
        raise NotOnFront(f"candidate {candidate_id} is not on the Pareto front")
    archive.selected = candidate_id
    if log is not None:
        log.append({"type": "selection", "candidate_id": candidate_id})
    return next(c for c in archive.candidates if c.cid == candidate_id)
