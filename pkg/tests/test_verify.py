import math

import numpy as np
import pytest

from pathpunch import (
    Curve,
    Domain,
    FiniteObstacles,
    Options,
    RepairProblem,
    Space,
    brute_force_crossings,
    check_hypotheses,
    puncture,
    sphere_crossings,
    validate,
)

PLANE = Space.euclidean(2)
BALL10 = Domain.ball(PLANE, (0, 0), 10)


def problem(waypoints, obstacles, domain=BALL10, space=PLANE):
    return RepairProblem(space, domain, Curve.polyline(waypoints), FiniteObstacles(space, obstacles))


def test_validate_repaired_two_obstacles():
    prob = problem([(-3, 0), (3, 0)], [(-1, 0), (1, 0)])
    curve, _, _ = puncture(prob)
    report = validate(curve, prob, 4096)
    assert report.endpoints_ok and report.containment_ok and report.passed
    assert report.min_clearance == pytest.approx(0.5, abs=1e-6)
    assert report.crossing_counts == [([-1.0, 0.0], 2), ([1.0, 0.0], 2)]


def test_validate_flags_a_hit():
    prob = problem([(-2, 0), (2, 0)], [(0, 0)])
    report = validate(prob.path, prob, 4096)
    assert report.min_clearance == 0.0
    assert "obstacle_hit" in report.violations
    assert not report.passed


def test_validate_constant_curve_without_obstacles():
    prob = RepairProblem(PLANE, BALL10, Curve.constant((1, 2)), FiniteObstacles(PLANE, []))
    report = validate(prob.path, prob, 16)
    assert report.passed
    assert report.min_clearance == math.inf
    assert report.continuity_modulus == 0.0


def test_validate_flags_escape_and_endpoint():
    prob = problem([(-3, 0), (3, 0)], [])
    wander = Curve.polyline([(-3, 0), (0, 12), (3, 0)])
    report = validate(wander, prob, 256)
    assert not report.containment_ok and "escapes_domain" in report.violations
    report = validate(Curve.polyline([(-3, 0), (3, 1)]), prob, 256)
    assert not report.endpoints_ok and "endpoint_mismatch" in report.violations


def test_validate_is_deterministic():
    prob = problem([(-3, 0), (3, 0)], [(-1, 0), (1, 0)])
    curve, _, _ = puncture(prob)
    assert validate(curve, prob, 1000) == validate(curve, prob, 1000)


def test_brute_force_crossings_examples():
    seg = Curve.polyline([(-2, 0), (2, 0)])
    assert brute_force_crossings(seg, PLANE, (0, 0), 0.5, 4096) == 2
    assert brute_force_crossings(seg, PLANE, (0, 0), 5.0, 4096) == 0
    vee = Curve.polyline([(-2, 1), (0, 0), (2, 1)])
    for delta in (0.01, 0.3, 1.0):
        assert brute_force_crossings(vee, PLANE, (0, 0), delta, 4096) >= 2


def test_brute_force_counts_tangency_once():
    tangent = Curve.polyline([(-2, 0.5), (2, 0.5)])
    assert brute_force_crossings(tangent, PLANE, (0, 0), 0.5, 4097) == 1


def test_brute_force_agrees_with_closed_form(rng):
    for _ in range(50):
        a, b = rng.uniform(-3, 3, (2, 2))
        c = rng.uniform(-1, 1, 2)
        r = rng.uniform(0.2, 3)
        seg = Curve.polyline([a, b])
        assert brute_force_crossings(seg, PLANE, c, r, 100_000) == len(sphere_crossings(seg, PLANE, c, r))


def test_check_hypotheses_line():
    line = Space.line()
    prob = problem([(-2,), (2,)], [(0,)], domain=Domain.ball(line, (0,), 10), space=line)
    assert [v.kind for v in check_hypotheses(prob)] == ["BoundaryNotPathConnected"]


def test_check_hypotheses_obstacle_on_boundary():
    prob = problem([(-3, 0), (3, 0)], [(0, 10)])
    assert [v.kind for v in check_hypotheses(prob)] == ["ObstacleNotInterior"]


def test_check_hypotheses_well_posed():
    assert check_hypotheses(problem([(-3, 0), (3, 0)], [(-1, 0), (1, 0)])) == []


def test_check_hypotheses_other_flags():
    kinds = [v.kind for v in check_hypotheses(problem([(-3, 0), (3, 0), (-3, 0)], [(-3, 0), (1, 1), (1, 1)]))]
    assert "EndpointsCoincide" in kinds
    assert "EndpointOnObstacle" in kinds
    assert "DuplicateObstacle" in kinds
    kinds = [v.kind for v in check_hypotheses(problem([(-3, 0), (13, 0)], []))]
    assert kinds == ["PathEscapesDomain"]


def test_continuity_modulus_halves(rng):
    for _ in range(20):
        pts = rng.uniform(-5, 5, (int(rng.integers(2, 7)), 2))
        curve = Curve.polyline(pts)
        prob = RepairProblem(PLANE, BALL10, curve, FiniteObstacles(PLANE, []), Options())
        mods = [validate(curve, prob, n).continuity_modulus for n in (512, 1024, 2048)]
        assert mods[1] <= 0.75 * mods[0] and mods[2] <= 0.75 * mods[1]


def test_max_norm_clearance_is_exact_between_samples():
    # diagonal segment vs (1, 0): the two coordinate gaps balance at s = 3/4, distance 1/2
    space = Space.chebyshev()
    box = Domain.box(space, (-5, -5), (5, 5))
    prob = problem([(-1, -1), (1, 1)], [(1, 0)], domain=box, space=space)
    report = validate(prob.path, prob, samples=3)
    assert report.min_clearance == pytest.approx(0.5, abs=1e-15)
