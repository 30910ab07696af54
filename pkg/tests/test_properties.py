import math

import numpy as np
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from pathpunch import (
    Curve,
    Domain,
    FiniteObstacles,
    Options,
    RepairProblem,
    Space,
    boundary_path,
    brute_force_crossings,
    contains,
    distance,
    first_crossing,
    interior_radius,
    last_crossing,
    prop_delta0,
    puncture,
    repair,
    sphere_crossings,
)
from pathpunch.spaces import contains_many

coord = st.floats(-50, 50, allow_nan=False, allow_infinity=False)
SPACES = [Space.euclidean(1), Space.euclidean(2), Space.euclidean(3), Space.chebyshev(), Space.line()]
SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def space_and_points(draw, count):
    space = draw(st.sampled_from(SPACES))
    pts = [np.array(draw(st.lists(coord, min_size=space.dim, max_size=space.dim))) for _ in range(count)]
    return space, pts


@st.composite
def sphere_pair(draw):
    space = draw(st.sampled_from([Space.euclidean(2), Space.euclidean(3), Space.chebyshev()]))
    center = np.array(draw(st.lists(st.floats(-5, 5), min_size=space.dim, max_size=space.dim)))
    radius = draw(st.floats(0.01, 5))
    ends = []
    for _ in range(2):
        v = np.array(draw(st.lists(st.floats(-1, 1), min_size=space.dim, max_size=space.dim)))
        norm = space.distance(v, np.zeros(space.dim))
        assume(norm > 1e-3)
        ends.append(center + radius * v / norm)
    return space, center, radius, ends[0], ends[1]


@SETTINGS
@given(space_and_points(3))
def test_distance_is_a_metric(data):
    space, (p, q, r) = data
    assert distance(space, p, p) == 0.0
    assert distance(space, p, q) == distance(space, q, p)
    assert distance(space, p, q) >= 0
    slack = 1e-12 * (1 + distance(space, p, q) + distance(space, q, r))
    assert distance(space, p, r) <= distance(space, p, q) + distance(space, q, r) + slack


@SETTINGS
@given(sphere_pair())
def test_boundary_path_stays_on_the_sphere(data):
    space, center, radius, a, b = data
    assume(all(abs(space.distance(p, center) - radius) <= 1e-9 for p in (a, b)))
    curve = boundary_path(space, center, radius, a, b)
    assert np.array_equal(curve.evaluate(curve.t_lo), a)
    assert np.array_equal(curve.evaluate(curve.t_hi), b)
    pts = curve.sample(np.linspace(curve.t_lo, curve.t_hi, 2001))
    assert np.all(np.abs(space.distances(pts, center) - radius) <= 1e-9)


@SETTINGS
@given(
    st.sampled_from([Space.euclidean(2), Space.chebyshev()]),
    st.floats(0.5, 10),
    st.floats(-0.99, 0.99),
    st.floats(-0.99, 0.99),
    st.integers(0, 2**31),
)
def test_interior_ball_lies_in_domain(space, radius, fx, fy, seed):
    rng = np.random.default_rng(seed)
    center = np.array([1.0, -1.0])
    v = np.array([fx, fy])
    p = center + 0.99 * radius * v / max(1.0, space.distance(v, np.zeros(2)))
    for domain in (Domain.ball(space, center, radius), Domain.box(space, center - radius, center + radius)):
        eps = interior_radius(domain, p)
        dirs = rng.normal(size=(200, 2))
        dirs /= space.distances(dirs, np.zeros(2))[:, None]
        ball = p + dirs * eps * (1 - 1e-12) * rng.uniform(0, 1, (200, 1))
        assert np.all(contains_many(domain, ball))


@st.composite
def segment_and_circle(draw):
    a = np.array(draw(st.lists(st.floats(-3, 3), min_size=2, max_size=2)))
    b = np.array(draw(st.lists(st.floats(-3, 3), min_size=2, max_size=2)))
    assume(np.linalg.norm(a - b) > 1e-3)
    c = np.array(draw(st.lists(st.floats(-2, 2), min_size=2, max_size=2)))
    r = draw(st.floats(0.05, 4))
    space = draw(st.sampled_from([Space.euclidean(2), Space.chebyshev()]))
    return space, Curve.polyline([a, b]), c, r


@SETTINGS
@given(segment_and_circle(), st.floats(0, 1), st.floats(0, 1))
def test_crossings_sound_and_ordered(data, w1, w2):
    space, curve, c, r = data
    lo, hi = min(w1, w2), max(w1, w2)
    cs = sphere_crossings(curve, space, c, r, (lo, hi))
    assert cs.params == sorted(cs.params)
    for t in cs.params:
        assert lo <= t <= hi
        assert abs(space.distance(curve.evaluate(t), c) - r) <= 1e-10
    if cs:
        assert first_crossing(curve, space, c, r, (lo, hi)) <= last_crossing(curve, space, c, r, (lo, hi))


@st.composite
def repair_problems(draw):
    from generators import finite_problem

    seed = draw(st.integers(0, 2**32 - 1))
    extent = draw(st.sampled_from(["tightest", "widest"]))
    fraction = draw(st.floats(0.05, 0.95))
    return finite_problem(np.random.default_rng(seed), Options(delta_fraction=fraction, splice_extent=extent, samples=1024))


@SETTINGS
@given(repair_problems())
def test_repair_invariants(prob):
    result = repair(prob)
    curve, report = result.curve, result.report
    assert report.passed
    assert np.array_equal(curve.evaluate(curve.t_lo), prob.x)
    assert np.array_equal(curve.evaluate(curve.t_hi), prob.y)
    assert curve.joint_gaps() == []
    prev = prob.path.t_lo
    recs = result.records
    for k, rec in enumerate(recs):
        nxt = recs[k + 1].t_hit_first if k + 1 < len(recs) else prob.path.t_hi
        assert prev < rec.t_entry < rec.t_hit_first <= rec.t_hit_last < rec.t_exit < nxt
        prev = rec.t_exit
        assert abs(np.linalg.norm(rec.entry - rec.obstacle) - rec.delta) <= 1e-10
        assert abs(np.linalg.norm(rec.exit - rec.obstacle) - rec.delta) <= 1e-10
        arc_pts = rec.arc.sample(np.linspace(rec.arc.t_lo, rec.arc.t_hi, 257))
        assert np.all(np.linalg.norm(arc_pts - rec.obstacle, axis=1) >= rec.delta * (1 - 1e-9))
    entries = result.radii.entries
    for i, e in enumerate(entries):
        assert 0 < e.delta < e.delta_formula
        for f in entries[i + 1:]:
            assert np.linalg.norm(e.obstacle - f.obstacle) > e.delta + f.delta
    again, again_records, _ = puncture(prob.with_path(curve))
    assert again_records == [] and again.same_as(curve)


@SETTINGS
@given(repair_problems())
def test_modes_agree_on_validity(prob):
    import dataclasses

    it = repair(dataclasses.replace(prob, options=dataclasses.replace(prob.options, puncture_mode="iterative")))
    assert it.report.passed


@SETTINGS
@given(st.integers(0, 2**32 - 1))
def test_crossing_guarantee_from_hit_to_endpoints(seed):
    from generators import finite_problem

    rng = np.random.default_rng(seed)
    prob = finite_problem(rng)
    result = repair(prob)
    for rec in result.schedule.records:
        x0 = rec.obstacle
        for end, window in ((prob.x, (prob.path.t_lo, rec.t_first)), (prob.y, (rec.t_last, prob.path.t_hi))):
            d0 = prop_delta0(prob.space, prob.domain, x0, end)
            for delta in rng.uniform(0, d0, 3).tolist() + [d0]:
                if delta <= 0:
                    continue
                assert sphere_crossings(prob.path, prob.space, x0, delta, window)


@SETTINGS
@given(st.integers(0, 2**32 - 1))
def test_paths_through_a_point_cross_twice(seed):
    from generators import cone_path

    rng = np.random.default_rng(seed)
    space = Space.euclidean(2)
    domain = Domain.ball(space, (0, 0), 10)
    x0 = rng.uniform(-5, 5, 2)
    path = cone_path(rng, space, domain, x0)
    eps = interior_radius(domain, x0)
    bound = 0.5 * min(eps, space.distance(x0, path.start), space.distance(x0, path.end))
    for delta in rng.uniform(0, bound, 5):
        assume(delta > 0)
        assert brute_force_crossings(path, space, x0, delta, 4096) >= 2
        assert len(sphere_crossings(path, space, x0, delta)) >= 2
