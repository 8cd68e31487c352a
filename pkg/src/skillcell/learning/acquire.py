"""Scalarized expected-improvement acquisition with optional prior weighting.

One suggestion step draws a random weight vector, scalarizes the archive
and the per-objective GP posteriors with the augmented Chebyshev function
(rho = 0.05), and maximizes expected improvement over a fixed candidate
set: 1024 scrambled-Sobol points plus 64 Gaussian perturbations of current
front members.  An informative prior multiplies EI by pi(x)^(beta/n) with
beta = 10, so its influence decays as evidence accumulates; a Uniform
prior leaves the EI argmax untouched by construction.
"""

from __future__ import annotations

import warnings

import numpy as np
from scipy import stats
from scipy.stats import qmc

from .pareto import pareto_front
from .space import ParameterSpace, PriorOnOptimum

RHO = 0.05
BETA = 10.0
N_SOBOL = 1024
N_PERTURB = 64
PERTURB_STD = 0.05
WEIGHT_LATTICE = 11  # per-objective levels of the ParEGO weight lattice


def draw_weights(m: int, rng: np.random.Generator) -> np.ndarray:
    """Random member of the simplex weight lattice.  Zero weights are fine:
    the augmented term keeps the scalarization weakly monotone in every
    objective, and edge weights are what drive the front's extremes."""
    levels = np.linspace(0.0, 1.0, WEIGHT_LATTICE)
    while True:
        w = np.asarray([levels[rng.integers(WEIGHT_LATTICE)] for _ in range(m - 1)])
        if w.sum() <= 1.0:
            break
    return np.append(w, 1.0 - w.sum())


def expected_improvement(mean, var, best) -> np.ndarray:
    """EI for minimization given posterior mean/var and incumbent value."""
    mean = np.asarray(mean, dtype=float)
    sigma = np.sqrt(np.maximum(np.asarray(var, dtype=float), 1e-18))
    gamma = (best - mean) / sigma
    return (best - mean) * stats.norm.cdf(gamma) + sigma * stats.norm.pdf(gamma)


def _chebyshev(Z, w):
    """Augmented Chebyshev scalarization of minimization-normalized rows."""
    return np.max(Z * w, axis=-1) + RHO * np.sum(Z * w, axis=-1)


def sobol_points(d: int, n: int, seed: int) -> np.ndarray:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return qmc.Sobol(d, scramble=True, seed=seed).random(n)


def candidate_set(X, Y, senses, rng: np.random.Generator, d: int) -> np.ndarray:
    """Quasi-random coverage plus local perturbations of incumbents."""
    sob = sobol_points(d, N_SOBOL, seed=int(rng.integers(2**31 - 1)))
    front = pareto_front([tuple(y) for y in Y], senses)
    incumbents = np.asarray([X[i] for i in front]) if front else np.zeros((0, d))
    perturbed = []
    for k in range(N_PERTURB):
        base = incumbents[k % len(incumbents)] if len(incumbents) else sob[k % len(sob)]
        perturbed.append(np.clip(base + PERTURB_STD * rng.standard_normal(d), 0.0, 1.0))
    return np.vstack([sob, np.asarray(perturbed)])


def suggest_next(
    surrogates,
    X,
    Y,
    senses,
    space: ParameterSpace,
    prior: PriorOnOptimum,
    iteration: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Next normalized point to evaluate (ties break on candidate index)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    m = Y.shape[1]
    w = draw_weights(m, rng)

    # Minimization conversion and archive min-max normalization.
    sign = np.array([-1.0 if s == "max" else 1.0 for s in senses])
    Ymin = Y * sign
    lo = Ymin.min(axis=0)
    hi = Ymin.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    Z = (Ymin - lo) / span
    best = float(np.min(_chebyshev(Z, w)))

    cands = candidate_set(X, Y, senses, rng, space.d)

    means = np.empty((len(cands), m))
    variances = np.empty((len(cands), m))
    for j, gp in enumerate(surrogates):
        mu, var = gp.predict(cands)
        means[:, j] = (mu * sign[j] - lo[j]) / span[j]
        variances[:, j] = var / span[j] ** 2

    mean_s = _chebyshev(means, w)
    var_s = np.sum((w * (1.0 + RHO)) ** 2 * variances, axis=1)
    ei = expected_improvement(mean_s, var_s, best)

    if prior.uniform:
        return cands[int(np.argmax(ei))]
    log_prior = np.array([prior.log_density(space.denormalize(c)) for c in cands])
    score = np.log(ei + 1e-300) + (BETA / max(iteration, 1)) * log_prior
    return cands[int(np.argmax(score))]
