"""Repairing a path so that it avoids a set of isolated interior points.

Each obstacle the path touches gets a small ball around it. The part of the
path between its entry into and exit from that ball's boundary is replaced by
a walk along the boundary. Radii are chosen so that the closed balls are
disjoint, stay inside the domain, miss the path's endpoints and contain no
other obstacle, which is what keeps the splices independent of each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .curves import (
    TOL_ROOT,
    Curve,
    covering_ball,
    first_crossing,
    last_crossing,
    point_hits,
    splice,
)
from .errors import (
    DegenerateInput,
    EndpointOnObstacle,
    OracleContractViolation,
    PathOutsideDomain,
    ScheduleOverlap,
)
from .obstacles import FINITE, FiniteObstacles, ObstacleSet
from .spaces import TOL_BOUNDARY, Domain, Space, boundary_path, contains_many, interior_radius

TIGHTEST = "tightest"
WIDEST = "widest"
SCHEDULED = "scheduled"
ITERATIVE = "iterative"


@dataclass(frozen=True)
class Options:
    delta_fraction: float = 0.5
    tol_root: float = TOL_ROOT
    tol_boundary: float = TOL_BOUNDARY
    samples: int = 4096
    splice_extent: str = TIGHTEST
    puncture_mode: str = SCHEDULED

    def __post_init__(self):
        if not 0.0 < self.delta_fraction < 1.0:
            raise ValueError(f"delta_fraction must lie in (0, 1), got {self.delta_fraction}")
        if not self.tol_root > 0 or not self.tol_boundary > 0:
            raise ValueError("tolerances must be positive")
        if int(self.samples) < 2:
            raise ValueError("samples must be at least 2")
        if self.splice_extent not in (TIGHTEST, WIDEST):
            raise ValueError(f"splice_extent must be 'tightest' or 'widest', got {self.splice_extent!r}")
        if self.puncture_mode not in (SCHEDULED, ITERATIVE):
            raise ValueError(f"puncture_mode must be 'scheduled' or 'iterative', got {self.puncture_mode!r}")


@dataclass
class RepairProblem:
    space: Space
    domain: Domain
    path: Curve
    obstacles: ObstacleSet
    options: Options = field(default_factory=Options)

    @property
    def x(self) -> np.ndarray:
        return self.path.start

    @property
    def y(self) -> np.ndarray:
        return self.path.end

    def with_path(self, path: Curve) -> RepairProblem:
        return RepairProblem(self.space, self.domain, path, self.obstacles, self.options)

    def candidates(self, curve: Curve | None = None) -> list[np.ndarray]:
        """Obstacles that can touch `curve` (default: the input path)."""
        curve = self.path if curve is None else curve
        if self.obstacles.mode == FINITE:
            return list(self.obstacles.points)
        center, radius = covering_ball(curve, self.space)
        return self.obstacles.query(center, radius + self.options.tol_boundary)


@dataclass(frozen=True)
class RadiusEntry:
    obstacle: np.ndarray
    eps: float
    isolation: float
    separation: float
    delta_formula: float
    delta: float


@dataclass(frozen=True)
class DetourRadii:
    entries: tuple[RadiusEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i) -> RadiusEntry:
        return self.entries[i]


@dataclass(frozen=True)
class HitRecord:
    obstacle: np.ndarray
    t_first: float
    t_last: float


@dataclass(frozen=True)
class HitSchedule:
    records: tuple[HitRecord, ...]
    t_star: float | None
    hit_set: tuple[np.ndarray, ...]

    @property
    def k_star(self) -> int:
        return len(self.records)

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class SpliceRecord:
    obstacle: np.ndarray
    delta: float
    t_hit_first: float
    t_hit_last: float
    t_entry: float
    t_exit: float
    entry: np.ndarray
    exit: np.ndarray
    arc: Curve


@dataclass
class RepairResult:
    curve: Curve
    records: list[SpliceRecord]
    report: object
    schedule: HitSchedule
    radii: DetourRadii
    mode: str


def _min_absorbing(*values: float) -> float:
    finite = [v for v in values if not math.isinf(v)]
    return min(finite) if finite else math.inf


def prop_delta0(space: Space, domain: Domain, x0, z) -> float:
    """Half the smaller of x0's interior radius and d(z, x0).

    Every path from x0 to z crosses the sphere of any radius in (0, result].
    """
    x0 = space.point(x0)
    z = space.point(z)
    if np.array_equal(x0, z):
        raise DegenerateInput("z coincides with x0")
    eps = interior_radius(domain, x0)
    return 0.5 * _min_absorbing(eps, space.distance(z, x0))


def _check_endpoints(problem: RepairProblem, p: np.ndarray) -> tuple[float, float]:
    dx = problem.space.distance(p, problem.x)
    dy = problem.space.distance(p, problem.y)
    if min(dx, dy) <= problem.options.tol_boundary:
        raise EndpointOnObstacle(f"path endpoint coincides with obstacle {p.tolist()}")
    return dx, dy


def compute_radii(problem: RepairProblem, active) -> DetourRadii:
    """Working radii for the obstacles in `active`.

    delta_formula is half the minimum of the interior radius, the isolation
    radius, the distances to both path endpoints and the distance to the
    nearest other active obstacle; infinite terms drop out. The working
    radius is delta_fraction times that.
    """
    space = problem.space
    pts = [space.point(p) for p in active]
    entries = []
    for i, p in enumerate(pts):
        eps = interior_radius(problem.domain, p)
        iso = problem.obstacles.isolation(p)
        dx, dy = _check_endpoints(problem, p)
        seps = [space.distance(p, q) for j, q in enumerate(pts) if j != i]
        sep = min(seps) if seps else math.inf
        formula = 0.5 * _min_absorbing(eps, iso, dx, dy, sep)
        entries.append(RadiusEntry(p, eps, iso, sep, formula, problem.options.delta_fraction * formula))
    return DetourRadii(tuple(entries))


def _obstacle_hits(problem: RepairProblem, curve: Curve, points) -> list[tuple[np.ndarray, list[float]]]:
    out = []
    for p in points:
        hits = point_hits(curve, problem.space, p, problem.options.tol_boundary)
        if hits:
            out.append((p, hits))
    return out


def _schedule_from_hits(hits: list[tuple[np.ndarray, list[float]]]) -> HitSchedule:
    if not hits:
        return HitSchedule((), None, ())
    t_star = max(h[-1] for _, h in hits)
    records = []
    visited: set[int] = set()
    t_prev = -math.inf
    while True:
        best = None
        for idx, (p, ts) in enumerate(hits):
            if idx in visited:
                continue
            later = [t for t in ts if t > t_prev]
            if later and (best is None or later[0] < best[1]):
                best = (idx, later[0])
        if best is None:
            break
        idx, t_first = best
        visited.add(idx)
        t_last = hits[idx][1][-1]
        records.append(HitRecord(hits[idx][0], t_first, t_last))
        t_prev = t_last
        if t_last == t_star:
            break
    return HitSchedule(tuple(records), t_star, tuple(p for p, _ in hits))


def hit_schedule(problem: RepairProblem) -> HitSchedule:
    """Ordered first/last hit parameters of the obstacles the path meets.

    Starting after the previous record's last hit, the next record is the
    obstacle met first; its last hit is its final contact anywhere on the
    path. Obstacles met only between a record's first and last hit are
    swallowed by that record's detour and get no record of their own.
    """
    hits = _obstacle_hits(problem, problem.path, problem.candidates())
    return _schedule_from_hits(hits)


def _check_well_posed(problem: RepairProblem) -> list[np.ndarray]:
    space, path, opts = problem.space, problem.path, problem.options
    if path.dim != space.dim:
        raise DegenerateInput(f"path is {path.dim}-d but the space is {space}")
    if np.array_equal(problem.x, problem.y):
        raise DegenerateInput("path endpoints coincide")
    if isinstance(problem.obstacles, FiniteObstacles) and problem.obstacles.duplicates():
        i, j = problem.obstacles.duplicates()[0]
        raise DegenerateInput(f"obstacles {i} and {j} coincide")
    cands = problem.candidates()
    for p in cands:
        interior_radius(problem.domain, p)
        _check_endpoints(problem, p)
    ts = np.union1d(np.linspace(path.t_lo, path.t_hi, opts.samples), path.knots)
    if not np.all(contains_many(problem.domain, path.sample(ts))):
        raise PathOutsideDomain("the input path leaves the domain")
    return cands


def _cross(curve, space, center, radius, window, pick_last: bool, tol: float) -> float:
    if pick_last:
        return last_crossing(curve, space, center, radius, window, tol)
    return first_crossing(curve, space, center, radius, window, tol)


def _detour_single(problem: RepairProblem, curve: Curve, x0: np.ndarray, delta: float, hits: list[float]):
    space, opts = problem.space, problem.options
    tightest = opts.splice_extent == TIGHTEST
    t_first, t_last = hits[0], hits[-1]
    t_in = _cross(curve, space, x0, delta, (curve.t_lo, t_first), tightest, opts.tol_root)
    t_out = _cross(curve, space, x0, delta, (t_last, curve.t_hi), not tightest, opts.tol_root)
    entry, exit_ = curve.evaluate(t_in), curve.evaluate(t_out)
    arc = boundary_path(space, x0, delta, entry, exit_, opts.tol_boundary)
    record = SpliceRecord(x0, delta, t_first, t_last, t_in, t_out, entry, exit_, arc)
    return splice(curve, [((t_in, t_out), arc)]), record


def puncture_one(problem: RepairProblem, obstacle=None, delta: float | None = None) -> Curve:
    """Detour around a single obstacle.

    The window from the last boundary crossing before the first hit to the
    first crossing after the last hit is replaced by a boundary walk
    (`splice_extent="widest"` uses the outermost crossings instead). The
    default radius is delta_fraction times half the minimum of the interior
    radius and the distances to both endpoints. A path that misses the
    obstacle comes back unchanged.
    """
    space = problem.space
    if obstacle is None:
        pts = problem.candidates()
        if len(pts) != 1:
            raise ValueError("puncture_one needs exactly one obstacle or an explicit one")
        obstacle = pts[0]
    x0 = space.point(obstacle)
    eps = interior_radius(problem.domain, x0)
    dx, dy = _check_endpoints(problem, x0)
    if delta is None:
        delta = problem.options.delta_fraction * 0.5 * _min_absorbing(eps, dx, dy)
    hits = point_hits(problem.path, space, x0, problem.options.tol_boundary)
    if not hits:
        return problem.path
    curve, _ = _detour_single(problem, problem.path, x0, float(delta), hits)
    return curve


def _scheduled(problem: RepairProblem) -> tuple[Curve, list[SpliceRecord], HitSchedule, DetourRadii]:
    schedule = hit_schedule(problem)
    radii = compute_radii(problem, [r.obstacle for r in schedule.records])
    _assert_disjoint(problem.space, radii)
    if not schedule.records:
        return problem.path, [], schedule, radii
    space, opts, path = problem.space, problem.options, problem.path
    tightest = opts.splice_extent == TIGHTEST
    recs = schedule.records
    splices: list[SpliceRecord] = []
    prev_exit = path.t_lo
    for k, (rec, rad) in enumerate(zip(recs, radii)):
        x_k, delta = rec.obstacle, rad.delta
        next_hit = recs[k + 1].t_first if k + 1 < len(recs) else path.t_hi
        t_in = _cross(path, space, x_k, delta, (prev_exit, rec.t_first), tightest, opts.tol_root)
        t_out = _cross(path, space, x_k, delta, (rec.t_last, next_hit), not tightest, opts.tol_root)
        if not prev_exit < t_in < rec.t_first <= rec.t_last < t_out < next_hit:
            raise ScheduleOverlap(
                f"splice window of obstacle {k} is out of order: "
                f"{prev_exit} < {t_in} < {rec.t_first} <= {rec.t_last} < {t_out} < {next_hit} fails"
            )
        entry, exit_ = path.evaluate(t_in), path.evaluate(t_out)
        arc = boundary_path(space, x_k, delta, entry, exit_, opts.tol_boundary)
        splices.append(SpliceRecord(x_k, delta, rec.t_first, rec.t_last, t_in, t_out, entry, exit_, arc))
        prev_exit = t_out
    curve = splice(path, [((s.t_entry, s.t_exit), s.arc) for s in splices])
    return curve, splices, schedule, radii


def _assert_disjoint(space: Space, radii: DetourRadii) -> None:
    entries = radii.entries
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            a, b = entries[i], entries[j]
            if not space.distance(a.obstacle, b.obstacle) > a.delta + b.delta:
                raise ScheduleOverlap(
                    f"balls around {a.obstacle.tolist()} and {b.obstacle.tolist()} intersect"
                )


def _iterative(problem: RepairProblem) -> tuple[Curve, list[SpliceRecord], HitSchedule, DetourRadii]:
    # Remove obstacles one at a time in the set's own order; each radius also
    # stays below half the distance to every obstacle removed before it.
    space, opts = problem.space, problem.options
    schedule = hit_schedule(problem)
    discrete = problem.obstacles.mode != FINITE
    curve = problem.path
    removed: list[np.ndarray] = []
    splices: list[SpliceRecord] = []
    entries: list[RadiusEntry] = []
    for p in problem.candidates():
        hits = point_hits(curve, space, p, opts.tol_boundary)
        if hits:
            eps_u = interior_radius(problem.domain, p)
            eps = _min_absorbing(eps_u, *(space.distance(p, q) for q in removed))
            iso = problem.obstacles.isolation(p) if discrete else math.inf
            dx, dy = _check_endpoints(problem, p)
            formula = 0.5 * _min_absorbing(eps, iso, dx, dy)
            delta = opts.delta_fraction * formula
            curve, rec = _detour_single(problem, curve, p, delta, hits)
            splices.append(rec)
            entries.append(RadiusEntry(p, eps, iso, math.inf, formula, delta))
        removed.append(p)
    return curve, splices, schedule, DetourRadii(tuple(entries))


def repair(problem: RepairProblem) -> RepairResult:
    """Full pipeline: well-posedness checks, detours, then validation."""
    from .verify import validate

    _check_well_posed(problem)
    if problem.options.puncture_mode == SCHEDULED:
        curve, records, schedule, radii = _scheduled(problem)
    else:
        curve, records, schedule, radii = _iterative(problem)
    report = validate(curve, problem, problem.options.samples)
    return RepairResult(curve, records, report, schedule, radii, problem.options.puncture_mode)


def puncture(problem: RepairProblem):
    """Repair the path; returns (curve, splice records, validation report)."""
    result = repair(problem)
    return result.curve, result.records, result.report


DetourOracle = Callable[[np.ndarray, np.ndarray], Curve]


def straight_line_oracle(space: Space) -> DetourOracle:
    def oracle(z, x_tilde):
        return Curve.polyline([space.point(z), space.point(x_tilde)])

    return oracle


def splice_via_oracle(
    problem: RepairProblem,
    oracle: DetourOracle,
    from_obstacle,
    to_obstacle,
    radii: tuple[float, float] | None = None,
) -> Curve:
    """Ask the oracle for a path between two obstacles and trim it to their balls.

    The result starts at the oracle curve's last crossing of the sphere around
    `from_obstacle` and ends at its first crossing, after that, of the sphere
    around `to_obstacle`. The oracle must return a curve with the requested
    endpoints whose interior misses every obstacle.
    """
    space, opts = problem.space, problem.options
    z = space.point(from_obstacle)
    x_t = space.point(to_obstacle)
    curve = oracle(z, x_t)
    tol = opts.tol_boundary
    if space.distance(curve.start, z) > tol or space.distance(curve.end, x_t) > tol:
        raise OracleContractViolation("oracle curve endpoints do not match the request")
    if problem.obstacles.mode == FINITE:
        cands = list(problem.obstacles.points)
    else:
        center, radius = covering_ball(curve, space)
        cands = problem.obstacles.query(center, radius + tol)
    for p in cands:
        for t in point_hits(curve, space, p, tol):
            if curve.t_lo < t < curve.t_hi:
                raise OracleContractViolation(f"oracle curve passes through obstacle {p.tolist()}")
    if radii is None:
        entries = compute_radii(problem, [z, x_t]).entries
        radii = (entries[0].delta, entries[1].delta)
    d_from, d_to = radii
    t_start = last_crossing(curve, space, z, d_from, None, opts.tol_root)
    t_end = first_crossing(curve, space, x_t, d_to, (t_start, curve.t_hi), opts.tol_root)
    trimmed = curve.restrict(t_start, t_end)
    return Curve.from_pieces(trimmed.pieces, 0.0, 1.0)
