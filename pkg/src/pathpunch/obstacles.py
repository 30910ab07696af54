"""Obstacle sets: finite point lists and closed discrete sets behind a ball query."""

from __future__ import annotations

import itertools
import math
from typing import Callable, Sequence

import numpy as np

from .spaces import Space, as_point

FINITE = "finite"
DISCRETE = "discrete"

MAX_QUERY_POINTS = 1_000_000


class ObstacleSet:
    """A set M of isolated points.

    `query(center, radius)` returns every point of M in the closed ball, and
    `isolation(p)` a radius whose open ball around p meets M only in p.
    """

    mode: str
    space: Space

    def query(self, center, radius: float) -> list[np.ndarray]:
        raise NotImplementedError

    def isolation(self, p) -> float:
        raise NotImplementedError

    def near(self, center, radius: float) -> list[np.ndarray]:
        return self.query(center, radius)


class FiniteObstacles(ObstacleSet):
    mode = FINITE

    def __init__(self, space: Space, points: Sequence):
        self.space = space
        self.points = tuple(space.point(p) for p in points)
        self._iso = []
        for i, p in enumerate(self.points):
            others = [space.distance(p, q) for j, q in enumerate(self.points) if j != i]
            self._iso.append(min(others) if others else math.inf)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def query(self, center, radius):
        center = self.space.point(center)
        return [p for p in self.points if self.space.distance(p, center) <= radius]

    def near(self, center, radius):
        # finite sets are small; every point is a candidate
        return list(self.points)

    def index_of(self, p) -> int:
        p = self.space.point(p)
        for i, q in enumerate(self.points):
            if np.array_equal(p, q):
                return i
        raise KeyError(f"{p.tolist()} is not an obstacle")

    def isolation(self, p) -> float:
        return self._iso[self.index_of(p)]

    def duplicates(self) -> list[tuple[int, int]]:
        out = []
        for i, j in itertools.combinations(range(len(self.points)), 2):
            if np.array_equal(self.points[i], self.points[j]):
                out.append((i, j))
        return out


class LatticeObstacles(ObstacleSet):
    """origin + step * Z^n (scalar step) or the row origin + Z * step (vector step)."""

    mode = DISCRETE

    def __init__(self, space: Space, step, origin=None):
        self.space = space
        step_arr = np.asarray(step, dtype=float).reshape(-1)
        self.origin = space.point(np.zeros(space.dim) if origin is None else origin)
        if np.ndim(step) == 0:
            self.full_grid = True
            self.step = float(step_arr[0])
            if not self.step > 0 or not math.isfinite(self.step):
                raise ValueError("lattice step must be positive and finite")
            self._iso = self.step
        else:
            self.full_grid = False
            self.step = space.point(step_arr)
            self._iso = space.distance(np.zeros(space.dim), self.step)
            if not self._iso > 0:
                raise ValueError("lattice step vector must be non-zero")

    def point_at(self, index) -> np.ndarray:
        if self.full_grid:
            return self.origin + np.asarray(index, dtype=float) * self.step
        return self.origin + float(index) * self.step

    def query(self, center, radius):
        center = self.space.point(center)
        radius = float(radius)
        if self.full_grid:
            lo = np.ceil((center - radius - self.origin) / self.step).astype(int)
            hi = np.floor((center + radius - self.origin) / self.step).astype(int)
            count = int(np.prod(np.maximum(hi - lo + 1, 0)))
            if count > MAX_QUERY_POINTS:
                raise ValueError(f"lattice query would enumerate {count} points")
            ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
            cands = (self.point_at(idx) for idx in itertools.product(*ranges))
        else:
            norm2 = float(np.dot(self.step, self.step))
            mid = float(np.dot(center - self.origin, self.step)) / norm2
            reach = radius * math.sqrt(self.space.dim) / math.sqrt(norm2)
            lo, hi = math.floor(mid - reach) - 1, math.ceil(mid + reach) + 1
            if hi - lo > MAX_QUERY_POINTS:
                raise ValueError(f"lattice query would enumerate {hi - lo} points")
            cands = (self.point_at(n) for n in range(lo, hi + 1))
        return [p for p in cands if self.space.distance(p, center) <= radius]

    def isolation(self, p) -> float:
        return self._iso


class GeneratorObstacles(ObstacleSet):
    """A closed discrete set described by user callbacks."""

    mode = DISCRETE

    def __init__(
        self,
        space: Space,
        query: Callable[[np.ndarray, float], Sequence],
        isolation: Callable[[np.ndarray], float],
    ):
        self.space = space
        self._query = query
        self._isolation = isolation

    def query(self, center, radius):
        return [self.space.point(p) for p in self._query(as_point(center), float(radius))]

    def isolation(self, p) -> float:
        iso = float(self._isolation(self.space.point(p)))
        if not iso > 0:
            raise ValueError(f"isolation radius at {np.asarray(p).tolist()} must be positive")
        return iso


def candidates_near(obstacles: ObstacleSet, curve, margin: float = 0.0) -> list[np.ndarray]:
    """Obstacles that could lie within `margin` of the curve's trace."""
    from .curves import covering_ball

    center, radius = covering_ball(curve, obstacles.space)
    return obstacles.near(center, radius + margin)
