"""Nondominated filtering and exact hypervolume for 2-3 objectives."""

from __future__ import annotations

import math

from ..errors import ArityMismatch, ReferenceDominated


def _to_min(point, senses):
    return tuple(-v if s == "max" else v for v, s in zip(point, senses))


def _weakly_dominates(a, b):
    """a <= b everywhere and < somewhere (minimization tuples)."""
    return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))


def pareto_front(points, senses) -> list:
    """Indices of nondominated points.

    Points with identical objective vectors are all kept.  The result is
    ordered by the first objective (ascending), ties by index.  This runs a
    sorted skyline filter, not the pairwise scan the tests compare against.
    """
    points = list(points)
    if not points:
        return []
    arity = len(senses)
    for p in points:
        if len(p) != arity:
            raise ArityMismatch(f"point {p} has arity {len(p)}, expected {arity}")

    converted = [_to_min(p, senses) for p in points]
    order = sorted(range(len(points)), key=lambda i: (converted[i], i))
    kept = []
    for i in order:
        c = converted[i]
        if not any(_weakly_dominates(converted[j], c) for j in kept):
            kept.append(i)
    kept.sort(key=lambda i: (points[i][0], i))
    return kept


def hypervolume(front, reference, senses) -> float:
    """Exact dominated volume between `front` and `reference`.

    Supports 2 and 3 objectives; every front point must be at least as good
    as the reference in every objective (ReferenceDominated otherwise).
    """
    front = list(front)
    if not front:
        return 0.0
    m = len(senses)
    if m not in (2, 3):
        raise ArityMismatch(f"hypervolume supports 2-3 objectives, got {m}")
    ref = _to_min(reference, senses)
    vols = []
    for p in front:
        if len(p) != m:
            raise ArityMismatch(f"point {p} has arity {len(p)}, expected {m}")
        c = _to_min(p, senses)
        if any(x > r for x, r in zip(c, ref)):
            raise ReferenceDominated(f"point {p} does not dominate reference {reference}")
        vols.append(tuple(r - x for x, r in zip(c, ref)))  # gains >= 0 per axis
    if m == 2:
        return _hv2(vols)
    return _hv3(vols)


def _hv2(gains) -> float:
    """Union area of origin-anchored rectangles."""
    pts = sorted(gains, key=lambda g: (-g[0], -g[1]))
    area = 0.0
    top = 0.0
    for g0, g1 in pts:
        if g1 > top:
            area += g0 * (g1 - top)
            top = g1
    return area


def _hv3(gains) -> float:
    """Slice along the third axis, summing 2D layers."""
    levels = sorted({g[2] for g in gains}, reverse=True)
    levels.append(0.0)
    total = 0.0
    for z, z_next in zip(levels, levels[1:]):
        layer = [(g[0], g[1]) for g in gains if g[2] >= z]
        if layer:
            total += _hv2(layer) * (z - z_next)
    return total
