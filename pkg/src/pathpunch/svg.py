"""Minimal SVG rendering of a problem and its repair.

Only the first two coordinates are drawn; one-dimensional problems are laid
out along the x axis.
"""

from __future__ import annotations

import numpy as np

from .curves import Curve
from .spaces import BALL, CHEBYSHEV
from .verify import obstacles_near

CURVE_SAMPLES = 600


def _xy(points: np.ndarray) -> np.ndarray:
    points = np.atleast_2d(points)
    if points.shape[1] == 1:
        return np.column_stack([points[:, 0], np.zeros(points.shape[0])])
    return points[:, :2]


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _trace(curve: Curve) -> np.ndarray:
    ts = np.union1d(np.linspace(curve.t_lo, curve.t_hi, CURVE_SAMPLES), curve.knots)
    return _xy(curve.sample(ts))


def _polyline(pts: np.ndarray, style: str) -> str:
    coords = " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in pts)
    return f'<polyline points="{coords}" fill="none" {style}/>'


def render(problem, curve: Curve | None = None, radii=None) -> str:
    """SVG text showing the domain, obstacles, working balls and both paths."""
    original = _trace(problem.path)
    repaired = _trace(curve) if curve is not None else None
    bounds = problem.domain.bounds()
    if bounds is not None:
        lo, hi = _xy(bounds[0])[0], _xy(bounds[1])[0]
    else:
        lo, hi = original.min(axis=0), original.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-9))
    pad = 0.05 * span
    x0, y0 = lo[0] - pad, -(hi[1] + pad)
    w, h = hi[0] - lo[0] + 2 * pad, hi[1] - lo[1] + 2 * pad
    thin = 0.002 * span
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}" '
        f'width="800" height="{_fmt(800 * h / w)}">'
    ]
    dom = problem.domain
    if dom.shape == BALL and dom.space.kind != CHEBYSHEV and dom.space.dim >= 2:
        c = _xy(dom.center)[0]
        out.append(
            f'<circle cx="{_fmt(c[0])}" cy="{_fmt(-c[1])}" r="{_fmt(dom.radius)}" '
            f'fill="#f4f6fb" stroke="#99a" stroke-width="{_fmt(thin)}"/>'
        )
    elif bounds is not None:
        out.append(
            f'<rect x="{_fmt(lo[0])}" y="{_fmt(-hi[1])}" width="{_fmt(hi[0] - lo[0])}" '
            f'height="{_fmt(hi[1] - lo[1])}" fill="#f4f6fb" stroke="#99a" stroke-width="{_fmt(thin)}"/>'
        )
    for entry in radii or []:
        c = _xy(entry.obstacle)[0]
        r = entry.delta
        style = f'fill="none" stroke="#c55" stroke-dasharray="{_fmt(3 * thin)}" stroke-width="{_fmt(thin)}"'
        if problem.space.kind == CHEBYSHEV:
            out.append(
                f'<rect x="{_fmt(c[0] - r)}" y="{_fmt(-c[1] - r)}" width="{_fmt(2 * r)}" height="{_fmt(2 * r)}" {style}/>'
            )
        else:
            out.append(f'<circle cx="{_fmt(c[0])}" cy="{_fmt(-c[1])}" r="{_fmt(r)}" {style}/>')
    out.append(_polyline(original, f'stroke="#888" stroke-width="{_fmt(thin)}"'))
    if repaired is not None:
        out.append(_polyline(repaired, f'stroke="#1a5fb4" stroke-width="{_fmt(4 * thin)}"'))
    arm = 0.01 * span
    shown = obstacles_near(problem, problem.path)
    if bounds is not None:
        shown = [m for m in shown if np.all(_xy(m)[0] >= lo - pad) and np.all(_xy(m)[0] <= hi + pad)]
    for m in shown:
        x, y = _xy(m)[0]
        for dx, dy in ((arm, arm), (arm, -arm)):
            out.append(
                f'<line x1="{_fmt(x - dx)}" y1="{_fmt(-(y - dy))}" x2="{_fmt(x + dx)}" y2="{_fmt(-(y + dy))}" '
                f'stroke="#000" stroke-width="{_fmt(thin * 1.5)}"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
