"""Gaussian-process regression with an ARD RBF kernel.

    k(x, x') = sf2 * exp(-0.5 * sum_i ((x_i - x'_i) / ls_i)^2) + sn2 * delta

Hyperparameters come from a log-marginal-likelihood grid search over a
small documented grid (isotropic lengthscale {0.1, 0.2, 0.5, 1.0},
sf2 {0.5, 1, 2}, sn2 {1e-4, 1e-2}); the analytic LML gradient exists to
validate the likelihood implementation against finite differences.
Targets are centered internally; predictive variance is the latent one,
so far from data it reverts to sf2.
"""

from __future__ import annotations

import numpy as np
from scipy import linalg

from ..errors import SingularKernel

LS_GRID = (0.1, 0.2, 0.5, 1.0)
SF2_GRID = (0.5, 1.0, 2.0)
SN2_GRID = (1e-4, 1e-2)
JITTERS = (0.0, 1e-10, 1e-8)


def _sq_dists(A, B, ls):
    As = A / ls
    Bs = B / ls
    return (
        np.sum(As**2, axis=1)[:, None]
        + np.sum(Bs**2, axis=1)[None, :]
        - 2.0 * As @ Bs.T
    )


class GaussianProcess:
    def __init__(self, lengthscales, signal_var: float, noise_var: float):
        self.ls = np.atleast_1d(np.asarray(lengthscales, dtype=float))
        self.sf2 = float(signal_var)
        self.sn2 = float(noise_var)
        self.X = None

    def _corr(self, A, B):
        return np.exp(-0.5 * np.clip(_sq_dists(A, B, self.ls), 0.0, None))

    def fit(self, X, y):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        y = np.asarray(y, dtype=float)
        if self.ls.size == 1 and X.shape[1] > 1:
            self.ls = np.full(X.shape[1], self.ls[0])
        self.X = X
        self.y_mean = float(np.mean(y))
        self.y = y - self.y_mean
        self.R = self._corr(X, X)
        K = self.sf2 * self.R + self.sn2 * np.eye(len(X))
        for jitter in JITTERS:
            try:
                self.L = linalg.cholesky(K + jitter * np.eye(len(X)), lower=True)
                break
            except linalg.LinAlgError:
                continue
        else:
            raise SingularKernel("kernel matrix is not positive definite even with jitter")
        self.alpha = linalg.cho_solve((self.L, True), self.y)
        return self

    def predict(self, Xs):
        """Posterior mean and latent variance at query points."""
        Xs = np.atleast_2d(np.asarray(Xs, dtype=float))
        ks = self.sf2 * self._corr(Xs, self.X)
        mean = self.y_mean + ks @ self.alpha
        v = linalg.solve_triangular(self.L, ks.T, lower=True)
        var = np.maximum(self.sf2 - np.sum(v**2, axis=0), 0.0)
        return mean, var

    def log_marginal_likelihood(self) -> float:
        n = len(self.y)
        return float(
            -0.5 * self.y @ self.alpha
            - np.sum(np.log(np.diag(self.L)))
            - 0.5 * n * np.log(2.0 * np.pi)
        )

    def lml_gradients(self):
        """d LML / d (ls_1..ls_d, sf2, sn2) in natural units."""
        n = len(self.y)
        Kinv = linalg.cho_solve((self.L, True), np.eye(n))
        W = np.outer(self.alpha, self.alpha) - Kinv
        grads = []
        for k in range(self.X.shape[1]):
            diff2 = (self.X[:, k][:, None] - self.X[:, k][None, :]) ** 2
            dK = self.sf2 * self.R * diff2 / self.ls[k] ** 3
            grads.append(0.5 * np.sum(W * dK))
        grads.append(0.5 * np.sum(W * self.R))  # d/d sf2
        grads.append(0.5 * np.trace(W))  # d/d sn2
        return np.array(grads)


def fit_gp_grid(X, y, ls_grid=LS_GRID, sf2_grid=SF2_GRID, sn2_grid=SN2_GRID) -> GaussianProcess:
    """Best-LML GP over the documented hyperparameter grid."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    best = None
    best_lml = -np.inf
    for ls in ls_grid:
        for sf2 in sf2_grid:
            for sn2 in sn2_grid:
                gp = GaussianProcess(np.full(X.shape[1], ls), sf2, sn2)
                try:
                    gp.fit(X, y)
                except SingularKernel:
                    continue
                lml = gp.log_marginal_likelihood()
                if lml > best_lml:
                    best, best_lml = gp, lml
    if best is None:
        raise SingularKernel("no hyperparameter setting produced a valid kernel")
    return best


def fit_surrogates(X, Y):
    """One grid-fitted GP per objective column; None when there is not yet
    enough data (fewer than 2d points)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    if X.shape[0] < 2 * X.shape[1]:
        return None
    return [fit_gp_grid(X, Y[:, j]) for j in range(Y.shape[1])]
