"""Metric spaces, domains and the ball-boundary path oracle.

Three spaces are shipped: euclidean(n), the max-norm plane chebyshev(2) and
the real line. Points are 1-d float64 numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from .errors import DimensionMismatch, HypothesisViolated, NotInterior, OffBoundary

if TYPE_CHECKING:
    from .curves import Curve

TOL_BOUNDARY = 1e-9

EUCLIDEAN = "euclidean"
CHEBYSHEV = "chebyshev"
LINE = "line"


def as_point(p, dim: int | None = None) -> np.ndarray:
    arr = np.asarray(p, dtype=float).reshape(-1)
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatch(f"expected a {dim}-d point, got {arr.shape[0]} coordinates")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"point has non-finite coordinates: {arr}")
    return arr


@dataclass(frozen=True)
class Space:
    kind: str
    dim: int

    def __post_init__(self):
        if self.kind == EUCLIDEAN:
            if self.dim < 1:
                raise ValueError("euclidean space needs dim >= 1")
        elif self.kind == CHEBYSHEV:
            if self.dim != 2:
                raise ValueError("chebyshev space is only supported in 2 dimensions")
        elif self.kind == LINE:
            if self.dim != 1:
                raise ValueError("line space has dim 1")
        else:
            raise ValueError(f"unknown space kind {self.kind!r}")

    @classmethod
    def euclidean(cls, dim: int = 2) -> Space:
        return cls(EUCLIDEAN, dim)

    @classmethod
    def chebyshev(cls) -> Space:
        return cls(CHEBYSHEV, 2)

    @classmethod
    def line(cls) -> Space:
        return cls(LINE, 1)

    @property
    def spheres_path_connected(self) -> bool:
        """Whether every ball boundary is non-empty and path-connected.

        In one dimension a sphere is the two-point set {c - r, c + r}.
        """
        return self.dim >= 2

    def point(self, p) -> np.ndarray:
        return as_point(p, self.dim)

    def distance(self, p, q) -> float:
        return distance(self, p, q)

    def distances(self, points: np.ndarray, q) -> np.ndarray:
        """Distances from each row of `points` to `q`."""
        diff = np.asarray(points, dtype=float) - np.asarray(q, dtype=float)
        if diff.ndim != 2 or diff.shape[1] != self.dim:
            raise DimensionMismatch(f"expected rows of length {self.dim}")
        if self.kind == CHEBYSHEV:
            return np.max(np.abs(diff), axis=1)
        return np.sqrt(np.einsum("ij,ij->i", diff, diff))

    def __str__(self) -> str:
        return f"{self.kind}({self.dim})"


def distance(space: Space, p, q) -> float:
    p = as_point(p)
    q = as_point(q)
    if p.shape[0] != space.dim or q.shape[0] != space.dim:
        raise DimensionMismatch(
            f"{space} expects {space.dim}-d points, got {p.shape[0]} and {q.shape[0]}"
        )
    diff = p - q
    if space.kind == CHEBYSHEV:
        return float(np.max(np.abs(diff)))
    if space.dim == 1:
        return float(abs(diff[0]))
    return float(math.sqrt(float(np.dot(diff, diff))))


ALL = "all"
BALL = "ball"
BOX = "box"


@dataclass(frozen=True, eq=False)
class Domain:
    """The set U a path lives in.

    Balls are measured in the owning space's metric, so a chebyshev ball is
    an axis-aligned square.
    """

    space: Space
    shape: str
    center: np.ndarray | None = None
    radius: float | None = None
    open: bool = False
    lo: np.ndarray | None = field(default=None)
    hi: np.ndarray | None = field(default=None)

    @classmethod
    def whole(cls, space: Space) -> Domain:
        return cls(space, ALL)

    @classmethod
    def ball(cls, space: Space, center, radius: float, open: bool = False) -> Domain:
        radius = float(radius)
        if not radius > 0 or not math.isfinite(radius):
            raise ValueError(f"ball radius must be positive and finite, got {radius}")
        return cls(space, BALL, center=space.point(center), radius=radius, open=bool(open))

    @classmethod
    def box(cls, space: Space, lo, hi) -> Domain:
        lo = space.point(lo)
        hi = space.point(hi)
        if not np.all(lo < hi):
            raise ValueError("box needs min < max in every coordinate")
        return cls(space, BOX, lo=lo, hi=hi)

    def bounds(self) -> tuple[np.ndarray, np.ndarray] | None:
        """Axis-aligned bounding box, or None for the whole space."""
        if self.shape == BALL:
            r = self.radius
            return self.center - r, self.center + r
        if self.shape == BOX:
            return self.lo, self.hi
        return None


def interior_radius(domain: Domain, p) -> float:
    """Largest eps with B(p, eps) inside the domain, i.e. dist(p, X \\ U).

    Returns math.inf for the whole space. Raises NotInterior when p is not an
    interior point.
    """
    p = domain.space.point(p)
    if domain.shape == ALL:
        return math.inf
    if domain.shape == BALL:
        eps = domain.radius - distance(domain.space, p, domain.center)
    else:
        eps = float(min(np.min(p - domain.lo), np.min(domain.hi - p)))
    if not eps > 0:
        raise NotInterior(f"point {p.tolist()} is not interior to the domain")
    return eps


def contains(domain: Domain, p) -> bool:
    p = domain.space.point(p)
    return bool(contains_many(domain, p[None, :])[0])


def contains_many(domain: Domain, points: np.ndarray, slack: float = 0.0) -> np.ndarray:
    """Vectorised membership test; `slack` widens the domain by that distance."""
    points = np.asarray(points, dtype=float)
    if domain.shape == ALL:
        return np.ones(points.shape[0], dtype=bool)
    if domain.shape == BALL:
        d = domain.space.distances(points, domain.center)
        if domain.open and slack == 0.0:
            return d < domain.radius
        return d <= domain.radius + slack
    return np.all((points >= domain.lo - slack) & (points <= domain.hi + slack), axis=1)


def on_sphere(space: Space, center, radius: float, p, tol: float = TOL_BOUNDARY) -> bool:
    return abs(distance(space, p, center) - radius) <= tol


def boundary_path(space: Space, center, radius: float, a, b, tol: float = TOL_BOUNDARY) -> Curve:
    """A curve from `a` to `b` that stays on the sphere of `radius` around `center`.

    Euclidean spheres use the shorter great-circle arc; for antipodal endpoints
    the plane is completed with the lowest-index basis vector not parallel to
    a - center. Chebyshev spheres are squares and are walked along the shorter
    side of the perimeter, counterclockwise on ties. One-dimensional spheres
    are two points, so distinct endpoints raise HypothesisViolated.
    """
    from .curves import Arc, Curve, Linear

    center = space.point(center)
    a = space.point(a)
    b = space.point(b)
    if not radius > 0:
        raise ValueError("radius must be positive")
    for name, p in (("a", a), ("b", b)):
        if not on_sphere(space, center, radius, p, tol):
            off = distance(space, p, center) - radius
            raise OffBoundary(f"{name}={p.tolist()} is {off:.3g} away from the sphere")
    if np.array_equal(a, b):
        return Curve.constant(a)
    if not space.spheres_path_connected:
        raise HypothesisViolated(
            f"ball boundaries in {space} are two-point sets and not path-connected; "
            f"cannot join {a.tolist()} to {b.tolist()} along the boundary"
        )
    if space.kind == CHEBYSHEV:
        return Curve.from_pieces(_square_walk(center, radius, a, b, Linear))
    return Curve.from_pieces([Arc.between(center, radius, a, b)])


def _square_position(rel: np.ndarray, r: float) -> float:
    # Counterclockwise perimeter coordinate, 0 at the corner (r, -r).
    x, y = float(rel[0]), float(rel[1])
    if x >= abs(y):
        s = y + r
    elif y >= abs(x):
        s = 3 * r - x
    elif -x >= abs(y):
        s = 5 * r - y
    else:
        s = 7 * r + x
    return s % (8 * r)


def _square_walk(center: np.ndarray, r: float, a: np.ndarray, b: np.ndarray, linear):
    perimeter = 8 * r
    sa = _square_position(a - center, r)
    sb = _square_position(b - center, r)
    ccw = (sb - sa) % perimeter
    cw = perimeter - ccw
    corners = [
        (0.0, center + np.array([r, -r])),
        (2 * r, center + np.array([r, r])),
        (4 * r, center + np.array([-r, r])),
        (6 * r, center + np.array([-r, -r])),
    ]
    passed = []
    if ccw <= cw:
        for pos, corner in corners:
            offset = (pos - sa) % perimeter
            if 0 < offset < ccw:
                passed.append((offset, corner))
    else:
        for pos, corner in corners:
            offset = (sa - pos) % perimeter
            if 0 < offset < cw:
                passed.append((offset, corner))
    passed.sort(key=lambda item: item[0])
    points = [a] + [corner for _, corner in passed] + [b]
    return [linear(p, q) for p, q in zip(points[:-1], points[1:])]
