"""Parameter spaces and operator priors on the optimum."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats


@dataclass(frozen=True)
class Dim:
    name: str
    lo: float
    hi: float
    unit: str = ""

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"dimension {self.name}: lo must be < hi")


class ParameterSpace:
    """Named box with [0,1]^d normalization."""

    def __init__(self, dims):
        self.dims = [d if isinstance(d, Dim) else Dim(*d) for d in dims]
        if not self.dims:
            raise ValueError("parameter space needs at least one dimension")
        self.names = [d.name for d in self.dims]
        self._lo = np.array([d.lo for d in self.dims])
        self._hi = np.array([d.hi for d in self.dims])

    @property
    def d(self) -> int:
        return len(self.dims)

    @classmethod
    def from_bounds(cls, bounds: dict) -> "ParameterSpace":
        return cls([Dim(name, lo, hi, unit) for name, (lo, hi, unit) in bounds.items()])

    def normalize(self, values) -> np.ndarray:
        x = np.asarray([values[n] for n in self.names] if isinstance(values, dict) else values, dtype=float)
        return (x - self._lo) / (self._hi - self._lo)

    def denormalize(self, x) -> dict:
        v = self._lo + np.clip(np.asarray(x, dtype=float), 0.0, 1.0) * (self._hi - self._lo)
        return dict(zip(self.names, v.tolist()))

    def denormalize_array(self, x) -> np.ndarray:
        return self._lo + np.clip(np.asarray(x, dtype=float), 0.0, 1.0) * (self._hi - self._lo)

    def to_json(self) -> list:
        return [{"name": d.name, "lo": d.lo, "hi": d.hi, "unit": d.unit} for d in self.dims]

    @classmethod
    def from_json(cls, doc) -> "ParameterSpace":
        return cls([Dim(e["name"], float(e["lo"]), float(e["hi"]), e.get("unit", "")) for e in doc])


class PriorOnOptimum:
    """Per-dimension truncated Gaussian belief about where the optimum lies,
    or a flat Uniform."""

    def __init__(self, space: ParameterSpace, means=None, stds=None):
        self.space = space
        self.uniform = means is None
        if not self.uniform:
            self.means = np.asarray([means[n] for n in space.names], dtype=float)
            self.stds = np.asarray([stds[n] for n in space.names], dtype=float)
            if np.any(self.stds <= 0):
                raise ValueError("prior stds must be positive")
            for m, d in zip(self.means, space.dims):
                if not (d.lo <= m <= d.hi):
                    raise ValueError(f"prior mean for {d.name} outside [{d.lo}, {d.hi}]")

    @classmethod
    def uniform_over(cls, space: ParameterSpace) -> "PriorOnOptimum":
        return cls(space)

    @classmethod
    def gaussian(cls, space: ParameterSpace, means: dict, stds: dict) -> "PriorOnOptimum":
        return cls(space, means, stds)

    def log_density(self, native: dict) -> float:
        """Log prior density at a native-unit point (0 for Uniform)."""
        if self.uniform:
            return 0.0
        total = 0.0
        for dim, mu, sd in zip(self.space.dims, self.means, self.stds):
            a = (dim.lo - mu) / sd
            b = (dim.hi - mu) / sd
            total += stats.truncnorm.logpdf(native[dim.name], a, b, loc=mu, scale=sd)
        return float(total)

    def sample(self, rng: np.random.Generator) -> dict:
        """One native-unit draw (uniform draws come from the box)."""
        out = {}
        for i, dim in enumerate(self.space.dims):
            if self.uniform:
                out[dim.name] = float(rng.uniform(dim.lo, dim.hi))
            else:
                mu, sd = self.means[i], self.stds[i]
                a = (dim.lo - mu) / sd
                b = (dim.hi - mu) / sd
                u = rng.random()
                out[dim.name] = float(stats.truncnorm.ppf(u, a, b, loc=mu, scale=sd))
        return out

    def to_json(self) -> dict:
        if self.uniform:
            return {"kind": "uniform"}
        return {
            "kind": "gaussian",
            "means": dict(zip(self.space.names, self.means.tolist())),
            "stds": dict(zip(self.space.names, self.stds.tolist())),
        }

    @classmethod
    def from_json(cls, space: ParameterSpace, doc: dict) -> "PriorOnOptimum":
        if doc.get("kind", "uniform") == "uniform":
            return cls.uniform_over(space)
        return cls.gaussian(space, doc["means"], doc["stds"])
