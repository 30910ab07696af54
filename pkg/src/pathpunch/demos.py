"""Canned problem files exercised by `pathpunch demo`."""

from __future__ import annotations

from .fileformat import VERSION

_BALL10 = {"shape": "ball", "center": [0.0, 0.0], "radius": 10.0, "open": False}
_E2 = {"kind": "euclidean", "dim": 2}


def _problem(space, domain, waypoints, obstacles) -> dict:
    return {
        "version": VERSION,
        "space": space,
        "domain": domain,
        "path": {"waypoints": waypoints},
        "obstacles": obstacles,
        "options": {},
    }


DEMOS = {
    # straight segment through one obstacle
    "single": _problem(_E2, _BALL10, [[-2.0, 0.0], [2.0, 0.0]], {"mode": "finite", "points": [[0.0, 0.0]]}),
    "multi": _problem(
        _E2, _BALL10, [[-3.0, 0.0], [3.0, 0.0]], {"mode": "finite", "points": [[-1.0, 0.0], [1.0, 0.0]]}
    ),
    # the integer points of the x axis, queried through the lattice generator
    "lattice": _problem(
        _E2,
        {"shape": "all"},
        [[-2.5, 0.0], [2.5, 0.0]],
        {"mode": "lattice", "step": [1.0, 0.0], "origin": [0.0, 0.0]},
    ),
    # a V whose two arms meet only at the obstacle
    "vee": _problem(
        _E2, _BALL10, [[-2.0, 1.0], [0.0, 0.0], [2.0, 1.0]], {"mode": "finite", "points": [[0.0, 0.0]]}
    ),
    "line-negative": _problem(
        {"kind": "line", "dim": 1},
        {"shape": "ball", "center": [0.0], "radius": 10.0, "open": False},
        [[-2.0], [2.0]],
        {"mode": "finite", "points": [[0.0]]},
    ),
    "chebyshev": _problem(
        {"kind": "chebyshev", "dim": 2},
        {"shape": "box", "min": [-5.0, -5.0], "max": [5.0, 5.0]},
        [[-3.0, -1.0], [3.0, 1.0]],
        {"mode": "finite", "points": [[0.0, 0.0], [1.5, 0.5]]},
    ),
}
