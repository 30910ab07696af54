"""Repair paths so they avoid isolated point obstacles, and check the result."""

from .curves import (
    Arc,
    Constant,
    CrossingSet,
    Curve,
    Linear,
    evaluate,
    first_crossing,
    last_crossing,
    sphere_crossings,
    splice,
)
from .detour import (
    DetourRadii,
    HitRecord,
    HitSchedule,
    Options,
    RadiusEntry,
    RepairProblem,
    RepairResult,
    SpliceRecord,
    compute_radii,
    hit_schedule,
    prop_delta0,
    puncture,
    puncture_one,
    repair,
    splice_via_oracle,
    straight_line_oracle,
)
from .errors import (
    DegenerateInput,
    DetourError,
    DimensionMismatch,
    EndpointMismatch,
    EndpointOnObstacle,
    HypothesisViolated,
    NoCrossing,
    NotInterior,
    OffBoundary,
    OracleContractViolation,
    OutOfRange,
    OverlappingWindows,
    PathOutsideDomain,
    ScheduleOverlap,
)
from .obstacles import FiniteObstacles, GeneratorObstacles, LatticeObstacles, ObstacleSet
from .spaces import Domain, Space, boundary_path, contains, distance, interior_radius
from .verify import RepairReport, Violation, brute_force_crossings, check_hypotheses, validate

__all__ = [name for name in dir() if not name.startswith("_")]
