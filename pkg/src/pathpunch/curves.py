"""Piecewise parametric curves and sphere-crossing extraction.

A Curve is an ordered tuple of pieces glued end to end over a global parameter
interval split at `knots`. Piece endpoints are stored explicitly and returned
verbatim at joints, so splicing never opens gaps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import EndpointMismatch, NoCrossing, OutOfRange, OverlappingWindows
from .spaces import CHEBYSHEV, Space, as_point

TOL_ROOT = 1e-10
BISECT_MAX_ITER = 200
_SNAP = 1e-12


class Piece:
    """One segment of a curve, parameterised locally by s in [0, 1]."""

    kind = "piece"
    start: np.ndarray
    end: np.ndarray

    def at(self, s: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def point(self, s: float) -> np.ndarray:
        if s == 0.0:
            return self.start.copy()
        if s == 1.0:
            return self.end.copy()
        return self.at(np.array([s]))[0]

    def length(self) -> float:
        raise NotImplementedError

    def sub(self, s0: float, s1: float, p0: np.ndarray, p1: np.ndarray) -> Piece:
        raise NotImplementedError

    def same_as(self, other: Piece) -> bool:
        raise NotImplementedError

    def _pin_ends(self, s: np.ndarray, out: np.ndarray) -> np.ndarray:
        out[s == 0.0] = self.start
        out[s == 1.0] = self.end
        return out


@dataclass(frozen=True, eq=False)
class Linear(Piece):
    start: np.ndarray
    end: np.ndarray
    kind = "linear"

    def __post_init__(self):
        object.__setattr__(self, "start", as_point(self.start))
        object.__setattr__(self, "end", as_point(self.end, self.start.shape[0]))

    def at(self, s):
        s = np.asarray(s, dtype=float)
        out = self.start + s[:, None] * (self.end - self.start)
        return self._pin_ends(s, out)

    def length(self) -> float:
        return float(np.linalg.norm(self.end - self.start))

    def sub(self, s0, s1, p0, p1):
        return Linear(p0, p1)

    def same_as(self, other):
        return (
            isinstance(other, Linear)
            and np.array_equal(self.start, other.start)
            and np.array_equal(self.end, other.end)
        )


@dataclass(frozen=True, eq=False)
class Constant(Piece):
    at_point: np.ndarray
    kind = "constant"

    def __post_init__(self):
        object.__setattr__(self, "at_point", as_point(self.at_point))

    @property
    def start(self):
        return self.at_point

    @property
    def end(self):
        return self.at_point

    def at(self, s):
        s = np.asarray(s, dtype=float)
        return np.repeat(self.at_point[None, :], s.shape[0], axis=0)

    def length(self) -> float:
        return 0.0

    def sub(self, s0, s1, p0, p1):
        return self

    def same_as(self, other):
        return isinstance(other, Constant) and np.array_equal(self.at_point, other.at_point)


@dataclass(frozen=True, eq=False)
class Arc(Piece):
    """Circular arc center + radius * (cos(s*sweep) u + sin(s*sweep) v).

    `u` and `v` are orthonormal; `start` and `end` are the exact stored
    endpoints, which agree with the formula up to rounding.
    """

    center: np.ndarray
    radius: float
    start: np.ndarray
    end: np.ndarray
    u: np.ndarray
    v: np.ndarray
    sweep: float
    kind = "arc"

    def __post_init__(self):
        for name in ("center", "start", "end", "u", "v"):
            object.__setattr__(self, name, as_point(getattr(self, name)))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "sweep", float(self.sweep))

    @classmethod
    def between(cls, center, radius: float, a, b) -> Arc:
        """Shorter arc from a to b on the sphere (center, radius)."""
        center = as_point(center)
        a = as_point(a, center.shape[0])
        b = as_point(b, center.shape[0])
        u = a - center
        u = u / np.linalg.norm(u)
        w = b - center
        w = w / np.linalg.norm(w)
        cosang = float(np.clip(np.dot(u, w), -1.0, 1.0))
        perp = w - cosang * u
        pn = float(np.linalg.norm(perp))
        if pn > 1e-12:
            v = perp / pn
            sweep = math.atan2(pn, cosang)
        else:
            v = _complete_plane(u)
            sweep = math.pi if cosang < 0 else 0.0
        return cls(center, radius, a, b, u, v, sweep)

    @property
    def orientation(self) -> str:
        """'ccw' or 'cw' for planar arcs, 'plane' otherwise."""
        if self.center.shape[0] != 2:
            return "plane"
        cross = self.u[0] * self.v[1] - self.u[1] * self.v[0]
        return "ccw" if cross > 0 else "cw"

    def at(self, s):
        s = np.asarray(s, dtype=float)
        phi = s * self.sweep
        out = self.center + self.radius * (
            np.cos(phi)[:, None] * self.u + np.sin(phi)[:, None] * self.v
        )
        return self._pin_ends(s, out)

    def length(self) -> float:
        return self.radius * abs(self.sweep)

    def sub(self, s0, s1, p0, p1):
        phi0 = s0 * self.sweep
        c, sn = math.cos(phi0), math.sin(phi0)
        u = c * self.u + sn * self.v
        v = -sn * self.u + c * self.v
        return Arc(self.center, self.radius, p0, p1, u, v, (s1 - s0) * self.sweep)

    def same_as(self, other):
        return (
            isinstance(other, Arc)
            and self.radius == other.radius
            and self.sweep == other.sweep
            and all(
                np.array_equal(getattr(self, n), getattr(other, n))
                for n in ("center", "start", "end", "u", "v")
            )
        )


def _complete_plane(u: np.ndarray) -> np.ndarray:
    for j in range(u.shape[0]):
        if abs(u[j]) < 1.0 - 1e-9:
            e = np.zeros_like(u)
            e[j] = 1.0
            v = e - u[j] * u
            return v / np.linalg.norm(v)
    raise ValueError("cannot complete a plane in one dimension")


class Curve:
    """Continuous piecewise curve over [knots[0], knots[-1]]."""

    __slots__ = ("pieces", "knots")

    def __init__(self, pieces: Sequence[Piece], knots, strict: bool = True):
        pieces = tuple(pieces)
        knots = np.asarray(knots, dtype=float)
        if not pieces:
            raise ValueError("a curve needs at least one piece")
        if knots.shape != (len(pieces) + 1,):
            raise ValueError("need exactly one more knot than pieces")
        if np.any(np.diff(knots) < 0) or knots[0] >= knots[-1]:
            raise ValueError("knots must be non-decreasing with t_lo < t_hi")
        if strict:
            for i, (p, q) in enumerate(zip(pieces[:-1], pieces[1:])):
                if not np.array_equal(p.end, q.start):
                    raise EndpointMismatch(f"pieces {i} and {i + 1} do not share an endpoint")
        self.pieces = pieces
        self.knots = knots

    @classmethod
    def from_pieces(cls, pieces: Sequence[Piece], t_lo: float = 0.0, t_hi: float = 1.0) -> Curve:
        """Glue pieces with parameter widths proportional to piece length."""
        pieces = list(pieces)
        lengths = np.array([p.length() for p in pieces])
        total = float(lengths.sum())
        if total > 0:
            cum = np.concatenate([[0.0], np.cumsum(lengths)]) / total
        else:
            cum = np.linspace(0.0, 1.0, len(pieces) + 1)
        knots = t_lo + cum * (t_hi - t_lo)
        knots[0] = t_lo
        knots[-1] = t_hi
        return cls(pieces, knots)

    @classmethod
    def polyline(cls, points, t_lo: float = 0.0, t_hi: float = 1.0) -> Curve:
        """Chord-length parameterised polyline; repeated consecutive points are dropped."""
        pts = [as_point(p) for p in points]
        if not pts:
            raise ValueError("polyline needs at least one point")
        kept = [pts[0]]
        for p in pts[1:]:
            if not np.array_equal(p, kept[-1]):
                kept.append(p)
        if len(kept) == 1:
            return cls.constant(kept[0], t_lo, t_hi)
        return cls.from_pieces([Linear(p, q) for p, q in zip(kept[:-1], kept[1:])], t_lo, t_hi)

    @classmethod
    def constant(cls, p, t_lo: float = 0.0, t_hi: float = 1.0) -> Curve:
        return cls([Constant(p)], [t_lo, t_hi])

    @property
    def t_lo(self) -> float:
        return float(self.knots[0])

    @property
    def t_hi(self) -> float:
        return float(self.knots[-1])

    @property
    def start(self) -> np.ndarray:
        return self.pieces[0].start

    @property
    def end(self) -> np.ndarray:
        return self.pieces[-1].end

    @property
    def dim(self) -> int:
        return self.start.shape[0]

    def __len__(self) -> int:
        return len(self.pieces)

    def __repr__(self) -> str:
        kinds = ",".join(p.kind for p in self.pieces)
        return f"Curve([{kinds}], t=[{self.t_lo}, {self.t_hi}])"

    def same_as(self, other: Curve) -> bool:
        """Piece-for-piece, bit-for-bit equality."""
        return (
            len(self.pieces) == len(other.pieces)
            and np.array_equal(self.knots, other.knots)
            and all(p.same_as(q) for p, q in zip(self.pieces, other.pieces))
        )

    def locate(self, t: float) -> tuple[int, float]:
        """Piece index and local parameter for global parameter t."""
        t = float(t)
        if not (self.t_lo <= t <= self.t_hi):
            raise OutOfRange(f"t={t} outside [{self.t_lo}, {self.t_hi}]")
        n = len(self.pieces)
        i = int(np.searchsorted(self.knots, t, side="right")) - 1
        if i >= n:
            return n - 1, 1.0
        w = self.knots[i + 1] - self.knots[i]
        return i, float((t - self.knots[i]) / w)

    def evaluate(self, t: float) -> np.ndarray:
        i, s = self.locate(t)
        return self.pieces[i].point(s)

    def sample(self, ts) -> np.ndarray:
        """Vectorised evaluation at an array of parameters."""
        ts = np.asarray(ts, dtype=float)
        if ts.size and (ts.min() < self.t_lo or ts.max() > self.t_hi):
            raise OutOfRange("sample parameters outside the curve range")
        n = len(self.pieces)
        idx = np.searchsorted(self.knots, ts, side="right") - 1
        at_end = idx >= n
        idx = np.minimum(idx, n - 1)
        out = np.empty((ts.shape[0], self.dim))
        for i in np.unique(idx):
            mask = idx == i
            w = self.knots[i + 1] - self.knots[i]
            if w > 0:
                s = (ts[mask] - self.knots[i]) / w
            else:
                s = np.zeros(int(mask.sum()))
            s[at_end[mask]] = 1.0
            out[mask] = self.pieces[i].at(s)
        return out

    def global_param(self, i: int, s: float) -> float:
        if s <= 0.0:
            return float(self.knots[i])
        if s >= 1.0:
            return float(self.knots[i + 1])
        return float(self.knots[i] + s * (self.knots[i + 1] - self.knots[i]))

    def restrict(self, a: float, b: float) -> Curve:
        """The sub-curve over [a, b], keeping global parameter values."""
        if not a < b:
            raise ValueError(f"restrict needs a < b, got [{a}, {b}]")
        pa, pb = self.evaluate(a), self.evaluate(b)
        ia, sa = self.locate(a)
        ib, sb = self.locate(b)
        while sb == 0.0 and ib > ia:
            ib -= 1
            sb = 1.0
        pieces = []
        for i in range(ia, ib + 1):
            piece = self.pieces[i]
            s0 = sa if i == ia else 0.0
            s1 = sb if i == ib else 1.0
            if s0 == 0.0 and s1 == 1.0:
                pieces.append(piece)
                continue
            p0 = pa if i == ia else piece.start
            p1 = pb if i == ib else piece.end
            pieces.append(piece.sub(s0, s1, p0, p1))
        knots = [a] + [float(self.knots[i]) for i in range(ia + 1, ib + 1)] + [b]
        return Curve(pieces, knots)

    def length(self) -> float:
        return float(sum(p.length() for p in self.pieces))

    def joint_gaps(self) -> list[int]:
        return [
            i
            for i, (p, q) in enumerate(zip(self.pieces[:-1], self.pieces[1:]))
            if not np.array_equal(p.end, q.start)
        ]

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        lo = np.full(self.dim, np.inf)
        hi = np.full(self.dim, -np.inf)
        for p in self.pieces:
            if isinstance(p, Arc):
                pts = [p.center - p.radius, p.center + p.radius, p.start, p.end]
            else:
                pts = [p.start, p.end]
            for q in pts:
                lo = np.minimum(lo, q)
                hi = np.maximum(hi, q)
        return lo, hi


def evaluate(curve: Curve, t: float) -> np.ndarray:
    return curve.evaluate(t)


def covering_ball(curve: Curve, space: Space) -> tuple[np.ndarray, float]:
    """A closed ball (in the space's metric) containing the whole trace."""
    lo, hi = curve.bounding_box()
    center = 0.5 * (lo + hi)
    return center, space.distance(center, hi) * (1 + 1e-12) + 1e-12


@dataclass
class CrossingSet:
    """Sorted parameters where the curve meets a sphere."""

    params: list[float] = field(default_factory=list)
    pieces: list[int] = field(default_factory=list)
    solvers: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.params)

    def __iter__(self) -> Iterator[float]:
        return iter(self.params)

    def __bool__(self) -> bool:
        return bool(self.params)


def sphere_crossings(
    curve: Curve,
    space: Space,
    center,
    radius: float,
    window: tuple[float, float] | None = None,
    tol_root: float = TOL_ROOT,
) -> CrossingSet:
    """All parameters in `window` with d(curve(t), center) == radius.

    Linear pieces are solved in closed form (a quadratic in euclidean spaces,
    face-by-face linear equations in the max-norm plane); euclidean arcs
    reduce to A cos(phi) + B sin(phi) = C. Anything else falls back to
    sign-change bracketing and bisection on the distance residual.
    """
    center = space.point(center)
    radius = float(radius)
    t1, t2 = (curve.t_lo, curve.t_hi) if window is None else (float(window[0]), float(window[1]))
    if t1 > t2 or t1 < curve.t_lo or t2 > curve.t_hi:
        raise OutOfRange(f"window [{t1}, {t2}] not inside [{curve.t_lo}, {curve.t_hi}]")
    if not radius > 0:
        raise ValueError("radius must be positive")

    def residual(t: float) -> float:
        return space.distance(curve.evaluate(t), center) - radius

    found: dict[float, tuple[int, str]] = {}
    knots = curve.knots
    for i, piece in enumerate(curve.pieces):
        k0, k1 = float(knots[i]), float(knots[i + 1])
        if k1 < t1 or k0 > t2:
            continue
        w = k1 - k0
        if w > 0:
            s_lo = max(0.0, (t1 - k0) / w)
            s_hi = min(1.0, (t2 - k0) / w)
        else:
            s_lo, s_hi = 0.0, 1.0
        for s, solver in _piece_roots(piece, space, center, radius, s_lo, s_hi, tol_root):
            if s < _SNAP:
                s = 0.0
            elif s > 1.0 - _SNAP:
                s = 1.0
            t = min(max(curve.global_param(i, s), t1), t2)
            if abs(residual(t)) > tol_root:
                t = _polish(residual, t, t1, t2, tol_root)
                if t is None:
                    continue
            found.setdefault(t, (i, solver))

    params = sorted(found)
    merged: list[float] = []
    span = curve.t_hi - curve.t_lo
    for t in params:
        if merged and t - merged[-1] <= 1e-12 * span:
            continue
        merged.append(t)
    return CrossingSet(merged, [found[t][0] for t in merged], [found[t][1] for t in merged])


def first_crossing(curve, space, center, radius, window=None, tol_root: float = TOL_ROOT) -> float:
    cs = sphere_crossings(curve, space, center, radius, window, tol_root)
    if not cs:
        raise NoCrossing(f"no crossing of the sphere ({radius}) in window {window}")
    return cs.params[0]


def last_crossing(curve, space, center, radius, window=None, tol_root: float = TOL_ROOT) -> float:
    cs = sphere_crossings(curve, space, center, radius, window, tol_root)
    if not cs:
        raise NoCrossing(f"no crossing of the sphere ({radius}) in window {window}")
    return cs.params[-1]


def _piece_roots(piece, space, center, radius, s_lo, s_hi, tol):
    slack = 1e-12
    if isinstance(piece, Constant):
        f = space.distance(piece.at_point, center) - radius
        return [(s_lo, "constant"), (s_hi, "constant")] if abs(f) <= tol else []
    if isinstance(piece, Linear) and space.kind != CHEBYSHEV:
        roots = _segment_sphere_roots(piece.start - center, piece.end - piece.start, radius, tol)
        label = "quadratic"
    elif isinstance(piece, Linear):
        roots = _segment_square_roots(piece.start - center, piece.end - piece.start, radius, tol)
        label = "faces"
    elif isinstance(piece, Arc) and space.kind != CHEBYSHEV:
        roots = _arc_sphere_roots(piece, center, radius, tol)
        label = "trig"
    else:
        return [
            (s, "bisection")
            for s in bracket_roots(
                lambda s: space.distance(piece.point(s), center) - radius, s_lo, s_hi, tol
            )
        ]
    out = []
    for s in roots:
        if s_lo - slack <= s <= s_hi + slack:
            out.append((min(max(s, s_lo), s_hi), label))
    return out


def _segment_sphere_roots(p0: np.ndarray, d: np.ndarray, r: float, tol: float) -> list[float]:
    a = float(np.dot(d, d))
    if a == 0.0:
        return [0.0, 1.0] if abs(float(np.linalg.norm(p0)) - r) <= tol else []
    b = 2.0 * float(np.dot(d, p0))
    c = float(np.dot(p0, p0)) - r * r
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        s = -b / (2.0 * a)
        if abs(float(np.linalg.norm(p0 + s * d)) - r) <= tol:
            return [s]
        return []
    if disc == 0.0:
        return [-b / (2.0 * a)]
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    roots = [q / a]
    if q != 0.0:
        roots.append(c / q)
    return sorted(roots)


def _segment_square_roots(p0: np.ndarray, d: np.ndarray, r: float, tol: float) -> list[float]:
    # max(|x(s)|, |y(s)|) = r: hit a face line, then check the other coordinate.
    roots: list[float] = []
    for i in (0, 1):
        j = 1 - i
        for sign in (1.0, -1.0):
            target = sign * r
            if d[i] != 0.0:
                s = (target - p0[i]) / d[i]
                if abs(p0[j] + s * d[j]) <= r + tol:
                    roots.append(float(s))
            elif abs(p0[i] - target) <= tol:
                # segment runs along this face; report the ends of the overlap
                if d[j] == 0.0:
                    if abs(p0[j]) <= r + tol:
                        roots += [0.0, 1.0]
                    continue
                lo = (-r - p0[j]) / d[j]
                hi = (r - p0[j]) / d[j]
                lo, hi = min(lo, hi), max(lo, hi)
                lo, hi = max(lo, 0.0), min(hi, 1.0)
                if lo <= hi:
                    roots += [float(lo), float(hi)]
    return sorted(roots)


def _arc_sphere_roots(arc: Arc, center: np.ndarray, r: float, tol: float) -> list[float]:
    if arc.sweep == 0.0:
        f = float(np.linalg.norm(arc.start - center)) - r
        return [0.0] if abs(f) <= tol else []
    w = arc.center - center
    big_a = 2.0 * arc.radius * float(np.dot(w, arc.u))
    big_b = 2.0 * arc.radius * float(np.dot(w, arc.v))
    big_c = r * r - float(np.dot(w, w)) - arc.radius * arc.radius
    rho = math.hypot(big_a, big_b)
    scale = max(r, arc.radius, float(np.linalg.norm(w)))
    if rho <= 1e-14 * scale * scale:
        if abs(big_c) <= 2.0 * tol * scale:
            return [0.0, 1.0]
        return []
    ratio = big_c / rho
    phi0 = math.atan2(big_b, big_a)
    if abs(ratio) > 1.0:
        if abs(ratio) - 1.0 > 1e-9:
            return []
        phis = [phi0 if ratio > 0 else phi0 + math.pi]
    else:
        delta = math.acos(ratio)
        phis = [phi0 - delta, phi0 + delta]
    two_pi = 2.0 * math.pi
    out = []
    for phi in phis:
        phi = phi % two_pi
        for cand in (phi, phi - two_pi, phi + two_pi):
            s = cand / arc.sweep
            if -1e-12 <= s <= 1.0 + 1e-12:
                out.append(s)
    return sorted(out)


def bracket_roots(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = TOL_ROOT,
    grid: int = 256,
    max_iter: int = BISECT_MAX_ITER,
) -> list[float]:
    """Roots of a continuous f on [lo, hi] via sign-change brackets and bisection."""
    if hi < lo:
        return []
    if hi == lo:
        return [lo] if abs(f(lo)) <= tol else []
    xs = np.linspace(lo, hi, grid + 1)
    fs = [f(float(x)) for x in xs]
    roots = []
    for k in range(grid + 1):
        if abs(fs[k]) <= tol:
            roots.append(float(xs[k]))
            continue
        if k < grid and abs(fs[k + 1]) > tol and (fs[k] < 0) != (fs[k + 1] < 0):
            roots.append(bisect(f, float(xs[k]), float(xs[k + 1]), tol, max_iter, fs[k]))
    return roots


def bisect(f, a: float, b: float, tol: float = TOL_ROOT, max_iter: int = BISECT_MAX_ITER, fa=None) -> float:
    fa = f(a) if fa is None else fa
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        fm = f(m)
        if abs(fm) <= tol or m == a or m == b:
            return m
        if (fm < 0) == (fa < 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _polish(residual, t: float, t1: float, t2: float, tol: float) -> float | None:
    h = max(1e-9 * max(abs(t2 - t1), 1.0), 1e-15)
    a, b = max(t1, t - h), min(t2, t + h)
    fa, fb = residual(a), residual(b)
    if abs(fa) <= tol:
        return a
    if abs(fb) <= tol:
        return b
    if (fa < 0) == (fb < 0):
        return None
    m = bisect(residual, a, b, tol, BISECT_MAX_ITER, fa)
    return m if abs(residual(m)) <= tol else None


def splice(curve: Curve, replacements: Sequence[tuple[tuple[float, float], Curve]]) -> Curve:
    """Replace parameter windows of `curve` by the given inserts.

    Each insert must start at curve(u) and end at curve(v) exactly. The result
    spans the original parameter interval with widths proportional to piece
    length.
    """
    if not replacements:
        return curve
    reps = sorted(((float(u), float(v)), ins) for (u, v), ins in replacements)
    prev_v = curve.t_lo
    for k, ((u, v), ins) in enumerate(reps):
        if not u < v:
            raise OverlappingWindows(f"window {k} is empty: [{u}, {v}]")
        if k == 0 and not u > curve.t_lo:
            raise OverlappingWindows("first window must start strictly after t_lo")
        if k > 0 and not u > prev_v:
            raise OverlappingWindows(f"window {k} overlaps its predecessor")
        prev_v = v
        if not np.array_equal(ins.start, curve.evaluate(u)):
            raise EndpointMismatch(f"insert {k} does not start at curve({u})")
        if not np.array_equal(ins.end, curve.evaluate(v)):
            raise EndpointMismatch(f"insert {k} does not end at curve({v})")
    if not prev_v < curve.t_hi:
        raise OverlappingWindows("last window must end strictly before t_hi")
    pieces: list[Piece] = []
    prev = curve.t_lo
    for (u, v), ins in reps:
        pieces.extend(curve.restrict(prev, u).pieces)
        pieces.extend(ins.pieces)
        prev = v
    pieces.extend(curve.restrict(prev, curve.t_hi).pieces)
    return Curve.from_pieces(pieces, curve.t_lo, curve.t_hi)


def point_hits(curve: Curve, space: Space, p, tol: float) -> list[float]:
    """Parameters where the curve passes within `tol` of p (one per approach).

    Segments and arcs meet a point at most once, so each piece contributes its
    closest approach; constant pieces contribute both ends of their interval.
    """
    p = space.point(p)
    hits: set[float] = set()
    for i, piece in enumerate(curve.pieces):
        if isinstance(piece, Constant):
            if space.distance(piece.at_point, p) <= tol:
                hits.add(float(curve.knots[i]))
                hits.add(float(curve.knots[i + 1]))
            continue
        s = _closest_param(piece, p)
        if space.distance(piece.point(s), p) <= tol:
            hits.add(curve.global_param(i, s))
    return sorted(hits)


def _closest_param(piece: Piece, p: np.ndarray) -> float:
    if isinstance(piece, Linear):
        d = piece.end - piece.start
        dd = float(np.dot(d, d))
        if dd == 0.0:
            return 0.0
        s = float(np.clip(np.dot(p - piece.start, d) / dd, 0.0, 1.0))
    elif isinstance(piece, Arc):
        if piece.sweep == 0.0:
            return 0.0
        rel = p - piece.center
        phi = math.atan2(float(np.dot(rel, piece.v)), float(np.dot(rel, piece.u)))
        if phi < 0 and piece.sweep > math.pi:
            phi += 2 * math.pi
        s = float(np.clip(phi / piece.sweep, 0.0, 1.0))
        ends = [(float(np.linalg.norm(piece.point(c) - p)), c) for c in (s, 0.0, 1.0)]
        s = min(ends)[1]
    else:
        grid = np.linspace(0.0, 1.0, 257)
        pts = piece.at(grid)
        s = float(grid[int(np.argmin(np.linalg.norm(pts - p, axis=1)))])
    if s < _SNAP:
        return 0.0
    if s > 1.0 - _SNAP:
        return 1.0
    return s
