"""Independent checks of a repaired curve.

Nothing here reuses the detour machinery: clearance, containment and
crossing counts are recomputed by brute force from the curve and the problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curves import Curve, Linear, covering_ball
from .errors import DetourError, NotInterior
from .obstacles import FINITE, FiniteObstacles
from .spaces import CHEBYSHEV, Space, contains_many, interior_radius

ENDPOINT_MISMATCH = "endpoint_mismatch"
OBSTACLE_HIT = "obstacle_hit"
ESCAPES_DOMAIN = "escapes_domain"
JOINT_GAP = "joint_gap"


@dataclass
class RepairReport:
    endpoints_ok: bool
    continuity_modulus: float
    min_clearance: float
    containment_ok: bool
    crossing_counts: list[tuple[list[float], int]] = field(default_factory=list)
    samples: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


def sample_grid(curve: Curve, samples: int) -> np.ndarray:
    """`samples` uniform parameters plus every knot, sorted."""
    return np.union1d(np.linspace(curve.t_lo, curve.t_hi, int(samples)), curve.knots)


def _segment_distances(space: Space, a: np.ndarray, b: np.ndarray, pts: np.ndarray) -> np.ndarray:
    d = b - a
    dd = float(np.dot(d, d))
    if dd == 0.0:
        return space.distances(pts, a)
    if space.kind == CHEBYSHEV:
        return _max_norm_segment_distances(a, d, pts)
    s = np.clip((pts - a) @ d / dd, 0.0, 1.0)
    closest = a + s[:, None] * d
    return np.sqrt(np.einsum("ij,ij->i", pts - closest, pts - closest))


def _max_norm_segment_distances(a: np.ndarray, d: np.ndarray, pts: np.ndarray) -> np.ndarray:
    # max_i |off_i + s d_i| is convex and piecewise linear in s, so its minimum
    # over [0, 1] sits at an end or where two of the terms +-(off_i + s d_i) meet.
    off = a - pts
    cands = [np.zeros(len(pts)), np.ones(len(pts))]
    n = a.shape[0]
    with np.errstate(divide="ignore", invalid="ignore"):
        for i in range(n):
            for j in range(i, n):
                for sign in (1.0, -1.0):
                    if i == j and sign == 1.0:
                        continue
                    den = d[i] - sign * d[j]
                    if den == 0.0:
                        continue
                    cands.append((sign * off[:, j] - off[:, i]) / den)
    s = np.clip(np.nan_to_num(np.array(cands), nan=0.0), 0.0, 1.0)
    vals = np.abs(off[None, :, :] + s[:, :, None] * d[None, None, :]).max(axis=2)
    return vals.min(axis=0)


def obstacles_near(problem, curve: Curve, reach: float | None = None) -> list[np.ndarray]:
    # With the default reach, any obstacle left out is farther from the trace
    # than the covering radius, so it cannot set the minimum clearance.
    if problem.obstacles.mode == FINITE:
        return list(problem.obstacles.points)
    center, radius = covering_ball(curve, problem.space)
    reach = radius + 1.0 if reach is None else reach
    return problem.obstacles.query(center, radius + reach)


def clearance(curve: Curve, space: Space, obstacles: list[np.ndarray], pts: np.ndarray) -> float:
    """Minimum distance from the curve to the obstacles.

    Uses the sampled points `pts`, plus exact point-to-segment distances for
    every linear piece.
    """
    if not obstacles:
        return math.inf
    obs = np.array(obstacles, dtype=float)
    best = math.inf
    for p in obs:
        best = min(best, float(space.distances(pts, p).min()))
    for piece in curve.pieces:
        if isinstance(piece, Linear):
            best = min(best, float(_segment_distances(space, piece.start, piece.end, obs).min()))
    return best


def brute_force_crossings(curve: Curve, space: Space, center, radius: float, samples: int) -> int:
    """Count sign changes of d(curve(t), center) - radius on a dense grid.

    A run of grid points with zero residual (tangency or a stretch along the
    sphere) counts as a single crossing.
    """
    center = space.point(center)
    ts = sample_grid(curve, samples)
    f = space.distances(curve.sample(ts), center) - radius
    zero = np.abs(f) <= 1e-12 * max(1.0, radius)
    sign = np.where(zero, 0, np.sign(f)).astype(int)
    zero_runs = int(np.count_nonzero(zero[1:] & ~zero[:-1])) + int(zero[0])
    adjacent = ~zero[1:] & ~zero[:-1]
    flips = int(np.count_nonzero(adjacent & (sign[1:] != sign[:-1])))
    return zero_runs + flips


def _detour_probe_radius(problem, m: np.ndarray) -> float | None:
    try:
        eps = interior_radius(problem.domain, m)
    except NotInterior:
        return None
    try:
        iso = problem.obstacles.isolation(m)
    except (KeyError, ValueError):
        return None
    terms = [eps, iso, problem.space.distance(m, problem.x), problem.space.distance(m, problem.y)]
    finite = [v for v in terms if not math.isinf(v)]
    return 0.5 * min(finite)


def crossing_counts(problem, samples: int) -> list[tuple[list[float], int]]:
    """For each obstacle on the input path, brute-force sphere crossings of the input path.

    The probe radius is half the minimum of the interior radius, isolation
    radius and distances to both endpoints. An obstacle strictly inside the
    path with distinct in and out branches always yields at least two.
    """
    space, path = problem.space, problem.path
    tol = problem.options.tol_boundary
    pts = path.sample(sample_grid(path, samples))
    out = []
    for m in obstacles_near(problem, path, reach=tol):
        touched = clearance(path, space, [m], pts) <= tol
        if not touched:
            continue
        rho = _detour_probe_radius(problem, m)
        if rho is None or not rho > 0:
            continue
        out.append((m.tolist(), brute_force_crossings(path, space, m, rho, samples)))
    return out


def validate(curve: Curve, problem, samples: int | None = None) -> RepairReport:
    """Recompute every report field for `curve` against `problem`."""
    samples = int(problem.options.samples if samples is None else samples)
    if samples < 2:
        raise ValueError("samples must be at least 2")
    space = problem.space
    ts = sample_grid(curve, samples)
    pts = curve.sample(ts)
    violations = []

    endpoints_ok = bool(
        np.array_equal(curve.evaluate(curve.t_lo), problem.x)
        and np.array_equal(curve.evaluate(curve.t_hi), problem.y)
    )
    if not endpoints_ok:
        violations.append(ENDPOINT_MISMATCH)

    steps = pts[1:] - pts[:-1]
    if space.kind == CHEBYSHEV:
        gaps = np.max(np.abs(steps), axis=1)
    else:
        gaps = np.sqrt(np.einsum("ij,ij->i", steps, steps))
    modulus = float(gaps.max()) if gaps.size else 0.0

    min_clear = clearance(curve, space, obstacles_near(problem, curve), pts)
    if min_clear <= problem.options.tol_boundary:
        violations.append(OBSTACLE_HIT)

    containment_ok = bool(np.all(contains_many(problem.domain, pts)))
    if not containment_ok:
        violations.append(ESCAPES_DOMAIN)

    if curve.joint_gaps():
        violations.append(JOINT_GAP)

    return RepairReport(
        endpoints_ok=endpoints_ok,
        continuity_modulus=modulus,
        min_clearance=min_clear,
        containment_ok=containment_ok,
        crossing_counts=crossing_counts(problem, samples),
        samples=samples,
        violations=violations,
    )


def check_hypotheses(problem) -> list[Violation]:
    """Everything about `problem` that breaks an assumption of the repair."""
    space, path = problem.space, problem.path
    tol = problem.options.tol_boundary
    out: list[Violation] = []
    if not space.spheres_path_connected:
        out.append(
            Violation(
                "BoundaryNotPathConnected",
                f"spheres in {space} are two-point sets, so detours along them are impossible",
            )
        )
    if np.array_equal(problem.x, problem.y):
        out.append(Violation("EndpointsCoincide", "the path starts and ends at the same point"))
    try:
        obstacles = obstacles_near(problem, path, reach=tol)
    except (DetourError, ValueError) as exc:
        out.append(Violation("ObstacleQueryFailed", str(exc)))
        obstacles = []
    for m in obstacles:
        try:
            interior_radius(problem.domain, m)
        except NotInterior:
            out.append(Violation("ObstacleNotInterior", f"obstacle {m.tolist()} is not interior to the domain"))
        for name, end in (("start", problem.x), ("end", problem.y)):
            if space.distance(m, end) <= tol:
                out.append(Violation("EndpointOnObstacle", f"path {name} coincides with obstacle {m.tolist()}"))
    if isinstance(problem.obstacles, FiniteObstacles):
        for i, j in problem.obstacles.duplicates():
            out.append(Violation("DuplicateObstacle", f"obstacles {i} and {j} coincide"))
    pts = path.sample(sample_grid(path, problem.options.samples))
    if not np.all(contains_many(problem.domain, pts)):
        out.append(Violation("PathEscapesDomain", "the input path leaves the domain"))
    return out
