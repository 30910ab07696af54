"""Random problem generators shared by the property and acceptance tests."""

from __future__ import annotations

import math

import numpy as np

from pathpunch import Curve, Domain, FiniteObstacles, LatticeObstacles, Options, RepairProblem, Space


def in_disk(rng, radius, dim=2):
    while True:
        p = rng.uniform(-radius, radius, dim)
        if np.linalg.norm(p) < radius:
            return p


def _far_from(p, points, gap):
    return all(np.linalg.norm(p - q) >= gap for q in points)


def finite_problem(rng, options=None):
    """A euclidean(2) problem in the ball of radius 10 around the origin.

    1-8 interior obstacles, 2-6 waypoints, and the path forced through a
    random non-empty subset of the obstacles: as interior waypoints, or on
    the last segment by extending it past an obstacle.
    """
    space = Space.euclidean(2)
    domain = Domain.ball(space, (0.0, 0.0), 10.0)
    n_obs = int(rng.integers(1, 9))
    obstacles = []
    while len(obstacles) < n_obs:
        p = in_disk(rng, 8.0)
        if _far_from(p, obstacles, 0.1):
            obstacles.append(p)
    n_way = int(rng.integers(2, 7))
    order = rng.permutation(n_obs)
    n_forced = int(rng.integers(1, min(n_obs, n_way - 1) + 1))
    forced = [obstacles[i] for i in order[:n_forced]]
    on_segment = forced[-1] if n_forced > n_way - 2 or rng.random() < 0.3 else None
    as_waypoints = [m for m in forced if m is not on_segment]
    while True:
        interior = list(as_waypoints)
        while len(interior) < n_way - 2:
            interior.append(in_disk(rng, 9.0))
        interior = [interior[i] for i in rng.permutation(len(interior))]
        x = in_disk(rng, 9.0)
        if on_segment is None:
            y = in_disk(rng, 9.0)
        else:
            anchor = interior[-1] if interior else x
            heading = (on_segment - anchor) / np.linalg.norm(on_segment - anchor)
            y = on_segment + rng.uniform(0.1, 1.4) * heading
        if np.linalg.norm(y) >= 9.5:
            continue
        if not (_far_from(x, obstacles, 0.1) and _far_from(y, obstacles, 0.1)):
            continue
        if np.linalg.norm(x - y) < 0.1:
            continue
        waypoints = [x] + interior + [y]
        if on_segment is not None and np.linalg.norm(waypoints[-2] - on_segment) < 0.1:
            continue
        break
    path = Curve.polyline(waypoints)
    return RepairProblem(space, domain, path, FiniteObstacles(space, obstacles), options or Options())


def lattice_problem(rng, options=None):
    """A full-grid lattice problem whose path meets 3-7 lattice points."""
    space = Space.euclidean(2)
    step = float(rng.uniform(0.5, 2.0))
    origin = rng.uniform(-1.0, 1.0, 2)
    lattice = LatticeObstacles(space, step, origin)
    dirs = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (1, 3), (3, 2), (2, -3)]
    while True:
        d1 = np.array(dirs[rng.integers(len(dirs))]) * rng.choice([-1, 1])
        d2 = np.array(dirs[rng.integers(len(dirs))]) * rng.choice([-1, 1])
        if d1[0] * d2[1] - d1[1] * d2[0] != 0:
            break
    total = int(rng.integers(3, 8))
    m1 = int(rng.integers(1, total - 1))
    m2 = total - 1 - m1
    p0 = rng.integers(-3, 4, 2)
    q1 = p0 + m1 * d1
    q2 = q1 + m2 * d2
    waypoints = [
        lattice.point_at(p0 - 0.5 * d1),
        lattice.point_at(q1),
        lattice.point_at(q2),
        lattice.point_at(q2 + 0.5 * d2),
    ]
    path = Curve.polyline(waypoints)
    return RepairProblem(space, Domain.whole(space), path, lattice, options or Options()), total


def cone_path(rng, space, domain, x0):
    """Polyline through x0 whose incoming and outgoing branches meet only at x0."""
    dim = space.dim
    while True:
        u = rng.normal(size=dim)
        v = rng.normal(size=dim)
        u /= np.linalg.norm(u)
        v /= np.linalg.norm(v)
        if math.acos(np.clip(np.dot(u, v), -1, 1)) > 0.3:
            break
    r_in, r_out = rng.uniform(0.2, 1.5, 2)
    a = x0 + r_in * u
    b = x0 + r_out * v
    a_far = a + rng.uniform(0.1, 1.0) * u
    b_far = b + rng.uniform(0.1, 1.0) * v
    return Curve.polyline([a_far, a, x0, b, b_far])
