"""JSON problem and result files (schema version "v1").

Floats are written with Python's shortest round-trip repr, so a write/read
cycle is lossless. Infinite values are stored as the strings "inf"/"-inf".
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .curves import Arc, Constant, Curve, Linear
from .detour import Options, RepairProblem, RepairResult
from .obstacles import FiniteObstacles, LatticeObstacles
from .spaces import ALL, BALL, BOX, CHEBYSHEV, EUCLIDEAN, LINE, Domain, Space
from .verify import RepairReport

VERSION = "v1"


class ParseError(ValueError):
    """A problem or result file is malformed; `field` names the culprit."""

    def __init__(self, field: str, message: str):
        super().__init__(f"field '{field}': {message}")
        self.field = field


def encode_float(v: float):
    v = float(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if math.isnan(v):
        raise ValueError("NaN cannot be serialised")
    return v


def decode_float(v, field: str) -> float:
    if isinstance(v, str) and v in ("inf", "-inf"):
        return math.inf if v == "inf" else -math.inf
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(field, f"expected a number, got {v!r}")
    out = float(v)
    if not math.isfinite(out):
        raise ParseError(field, "non-finite number")
    return out


def _pt(p) -> list:
    return [encode_float(c) for c in np.asarray(p, dtype=float).tolist()]


def _read_pt(v, field: str, dim: int | None = None) -> np.ndarray:
    if not isinstance(v, list) or not v:
        raise ParseError(field, "expected a non-empty list of coordinates")
    out = np.array([decode_float(c, f"{field}[{i}]") for i, c in enumerate(v)])
    if dim is not None and out.shape[0] != dim:
        raise ParseError(field, f"expected {dim} coordinates, got {out.shape[0]}")
    return out


def _get(obj: dict, key: str, field: str):
    if not isinstance(obj, dict):
        raise ParseError(field, "expected an object")
    if key not in obj:
        raise ParseError(f"{field}.{key}" if field else key, "missing")
    return obj[key]


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def load_json(path) -> dict:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}", exc.msg) from None
    if not isinstance(doc, dict):
        raise ParseError("<root>", "expected an object")
    version = doc.get("version")
    if version != VERSION:
        raise ParseError("version", f"expected {VERSION!r}, got {version!r}")
    return doc


# problems ------------------------------------------------------------------


def space_to_dict(space: Space) -> dict:
    return {"kind": space.kind, "dim": space.dim}


def domain_to_dict(domain: Domain) -> dict:
    if domain.shape == ALL:
        return {"shape": ALL}
    if domain.shape == BALL:
        return {
            "shape": BALL,
            "center": _pt(domain.center),
            "radius": encode_float(domain.radius),
            "open": domain.open,
        }
    return {"shape": BOX, "min": _pt(domain.lo), "max": _pt(domain.hi)}


def options_to_dict(opts: Options) -> dict:
    return {
        "delta_fraction": encode_float(opts.delta_fraction),
        "tol_root": encode_float(opts.tol_root),
        "tol_boundary": encode_float(opts.tol_boundary),
        "samples": int(opts.samples),
        "splice_extent": opts.splice_extent,
        "puncture_mode": opts.puncture_mode,
    }


def problem_to_dict(problem: RepairProblem, waypoints=None) -> dict:
    """Serialise a problem whose path is a polyline through `waypoints`."""
    if waypoints is None:
        waypoints = [problem.path.pieces[0].start] + [p.end for p in problem.path.pieces]
    obs = problem.obstacles
    if isinstance(obs, FiniteObstacles):
        obstacles = {"mode": "finite", "points": [_pt(p) for p in obs.points]}
    elif isinstance(obs, LatticeObstacles):
        step = encode_float(obs.step) if obs.full_grid else _pt(obs.step)
        obstacles = {"mode": "lattice", "step": step, "origin": _pt(obs.origin)}
    else:
        raise ValueError("only finite and lattice obstacle sets can be written to a file")
    return {
        "version": VERSION,
        "space": space_to_dict(problem.space),
        "domain": domain_to_dict(problem.domain),
        "path": {"waypoints": [_pt(p) for p in waypoints]},
        "obstacles": obstacles,
        "options": options_to_dict(problem.options),
    }


def parse_space(obj) -> Space:
    kind = _get(obj, "kind", "space")
    if kind not in (EUCLIDEAN, CHEBYSHEV, LINE):
        raise ParseError("space.kind", f"unknown kind {kind!r}")
    default_dim = {EUCLIDEAN: 2, CHEBYSHEV: 2, LINE: 1}[kind]
    dim = obj.get("dim", default_dim)
    if isinstance(dim, bool) or not isinstance(dim, int):
        raise ParseError("space.dim", f"expected an integer, got {dim!r}")
    try:
        return Space(kind, dim)
    except ValueError as exc:
        raise ParseError("space.dim", str(exc)) from None


def parse_domain(obj, space: Space) -> Domain:
    shape = _get(obj, "shape", "domain")
    try:
        if shape == ALL:
            return Domain.whole(space)
        if shape == BALL:
            center = _read_pt(_get(obj, "center", "domain"), "domain.center", space.dim)
            radius = decode_float(_get(obj, "radius", "domain"), "domain.radius")
            is_open = obj.get("open", False)
            if not isinstance(is_open, bool):
                raise ParseError("domain.open", "expected true or false")
            if not radius > 0 or math.isinf(radius):
                raise ParseError("domain.radius", "must be positive and finite")
            return Domain.ball(space, center, radius, open=is_open)
        if shape == BOX:
            lo = _read_pt(_get(obj, "min", "domain"), "domain.min", space.dim)
            hi = _read_pt(_get(obj, "max", "domain"), "domain.max", space.dim)
            if not np.all(lo < hi):
                raise ParseError("domain.max", "box needs min < max in every coordinate")
            return Domain.box(space, lo, hi)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError("domain", str(exc)) from None
    raise ParseError("domain.shape", f"unknown shape {shape!r}")


def parse_options(obj) -> Options:
    if obj is None:
        return Options()
    if not isinstance(obj, dict):
        raise ParseError("options", "expected an object")
    known = {f for f in Options.__dataclass_fields__}
    kwargs: dict[str, Any] = {}
    for key, value in obj.items():
        if key not in known:
            raise ParseError(f"options.{key}", "unknown option")
        if key in ("delta_fraction", "tol_root", "tol_boundary"):
            kwargs[key] = decode_float(value, f"options.{key}")
        elif key == "samples":
            if isinstance(value, bool) or not isinstance(value, int):
                raise ParseError("options.samples", "expected an integer")
            kwargs[key] = value
        else:
            if not isinstance(value, str):
                raise ParseError(f"options.{key}", "expected a string")
            kwargs[key] = value
    try:
        return Options(**kwargs)
    except ValueError as exc:
        bad = next((k for k in kwargs if k in str(exc)), "options")
        raise ParseError(bad if bad == "options" else f"options.{bad}", str(exc)) from None


def parse_obstacles(obj, space: Space):
    mode = _get(obj, "mode", "obstacles")
    if mode == "finite":
        pts = _get(obj, "points", "obstacles")
        if not isinstance(pts, list):
            raise ParseError("obstacles.points", "expected a list of points")
        return FiniteObstacles(space, [_read_pt(p, f"obstacles.points[{i}]", space.dim) for i, p in enumerate(pts)])
    if mode == "lattice":
        step = _get(obj, "step", "obstacles")
        origin = obj.get("origin")
        if origin is not None:
            origin = _read_pt(origin, "obstacles.origin", space.dim)
        if isinstance(step, list):
            step_val = _read_pt(step, "obstacles.step", space.dim)
        else:
            step_val = decode_float(step, "obstacles.step")
        try:
            return LatticeObstacles(space, step_val, origin)
        except ValueError as exc:
            raise ParseError("obstacles.step", str(exc)) from None
    raise ParseError("obstacles.mode", f"unknown mode {mode!r}")


def parse_problem(doc: dict) -> tuple[RepairProblem, list[np.ndarray]]:
    space = parse_space(_get(doc, "space", ""))
    domain = parse_domain(_get(doc, "domain", ""), space)
    path = _get(doc, "path", "")
    wps = _get(path, "waypoints", "path")
    if not isinstance(wps, list) or len(wps) < 2:
        raise ParseError("path.waypoints", "need at least two waypoints")
    waypoints = [_read_pt(p, f"path.waypoints[{i}]", space.dim) for i, p in enumerate(wps)]
    obstacles = parse_obstacles(_get(doc, "obstacles", ""), space)
    options = parse_options(doc.get("options"))
    curve = Curve.polyline(waypoints)
    return RepairProblem(space, domain, curve, obstacles, options), waypoints


def load_problem(path) -> RepairProblem:
    return parse_problem(load_json(path))[0]


# results -------------------------------------------------------------------


def piece_to_dict(piece) -> dict:
    if isinstance(piece, Linear):
        return {"kind": "linear", "from": _pt(piece.start), "to": _pt(piece.end)}
    if isinstance(piece, Arc):
        return {
            "kind": "arc",
            "center": _pt(piece.center),
            "radius": encode_float(piece.radius),
            "from": _pt(piece.start),
            "to": _pt(piece.end),
            "orientation": {"u": _pt(piece.u), "v": _pt(piece.v), "sweep": encode_float(piece.sweep)},
        }
    return {"kind": "constant", "at": _pt(piece.at_point)}


def curve_to_dict(curve: Curve) -> dict:
    return {
        "t_range": [encode_float(curve.t_lo), encode_float(curve.t_hi)],
        "knots": [encode_float(k) for k in curve.knots],
        "pieces": [piece_to_dict(p) for p in curve.pieces],
    }


def parse_piece(obj, field: str):
    kind = _get(obj, "kind", field)
    if kind == "linear":
        return Linear(_read_pt(_get(obj, "from", field), f"{field}.from"), _read_pt(_get(obj, "to", field), f"{field}.to"))
    if kind == "constant":
        return Constant(_read_pt(_get(obj, "at", field), f"{field}.at"))
    if kind == "arc":
        ori = _get(obj, "orientation", field)
        return Arc(
            _read_pt(_get(obj, "center", field), f"{field}.center"),
            decode_float(_get(obj, "radius", field), f"{field}.radius"),
            _read_pt(_get(obj, "from", field), f"{field}.from"),
            _read_pt(_get(obj, "to", field), f"{field}.to"),
            _read_pt(_get(ori, "u", f"{field}.orientation"), f"{field}.orientation.u"),
            _read_pt(_get(ori, "v", f"{field}.orientation"), f"{field}.orientation.v"),
            decode_float(_get(ori, "sweep", f"{field}.orientation"), f"{field}.orientation.sweep"),
        )
    raise ParseError(f"{field}.kind", f"unknown piece kind {kind!r}")


def parse_curve(doc: dict) -> Curve:
    pieces_raw = _get(doc, "pieces", "")
    if not isinstance(pieces_raw, list) or not pieces_raw:
        raise ParseError("pieces", "expected a non-empty list")
    pieces = [parse_piece(p, f"pieces[{i}]") for i, p in enumerate(pieces_raw)]
    knots_raw = _get(doc, "knots", "")
    if not isinstance(knots_raw, list):
        raise ParseError("knots", "expected a list")
    knots = [decode_float(k, f"knots[{i}]") for i, k in enumerate(knots_raw)]
    try:
        return Curve(pieces, knots, strict=False)
    except ValueError as exc:
        raise ParseError("knots", str(exc)) from None


def report_to_dict(report: RepairReport) -> dict:
    return {
        "passed": report.passed,
        "endpoints_ok": report.endpoints_ok,
        "continuity_modulus": encode_float(report.continuity_modulus),
        "min_clearance": encode_float(report.min_clearance),
        "containment_ok": report.containment_ok,
        "crossing_counts": [{"obstacle": _pt(m), "count": int(c)} for m, c in report.crossing_counts],
        "samples": report.samples,
        "violations": list(report.violations),
    }


def parse_report(obj) -> RepairReport:
    f = "report"
    counts = _get(obj, "crossing_counts", f)
    if not isinstance(counts, list):
        raise ParseError("report.crossing_counts", "expected a list")
    return RepairReport(
        endpoints_ok=bool(_get(obj, "endpoints_ok", f)),
        continuity_modulus=decode_float(_get(obj, "continuity_modulus", f), "report.continuity_modulus"),
        min_clearance=decode_float(_get(obj, "min_clearance", f), "report.min_clearance"),
        containment_ok=bool(_get(obj, "containment_ok", f)),
        crossing_counts=[
            (
                _read_pt(_get(c, "obstacle", f"{f}.crossing_counts[{i}]"), f"{f}.crossing_counts[{i}].obstacle").tolist(),
                int(_get(c, "count", f"{f}.crossing_counts[{i}]")),
            )
            for i, c in enumerate(counts)
        ],
        samples=int(_get(obj, "samples", f)),
        violations=list(_get(obj, "violations", f)),
    )


def result_to_dict(result: RepairResult, options: Options | None = None) -> dict:
    doc = {"version": VERSION, "mode": result.mode}
    if options is not None:
        doc["options"] = options_to_dict(options)
    doc.update(curve_to_dict(result.curve))
    doc["report"] = report_to_dict(result.report)
    doc["radii"] = [
        {
            "obstacle": _pt(e.obstacle),
            "eps": encode_float(e.eps),
            "isolation": encode_float(e.isolation),
            "separation": encode_float(e.separation),
            "delta_formula": encode_float(e.delta_formula),
            "delta": encode_float(e.delta),
        }
        for e in result.radii
    ]
    t_star = result.schedule.t_star
    doc["schedule"] = {
        "t_star": None if t_star is None else encode_float(t_star),
        "k_star": result.schedule.k_star,
        "records": [
            {
                "obstacle": _pt(s.obstacle),
                "delta": encode_float(s.delta),
                "t_first": encode_float(s.t_hit_first),
                "t_last": encode_float(s.t_hit_last),
                "t_entry": encode_float(s.t_entry),
                "t_exit": encode_float(s.t_exit),
                "entry": _pt(s.entry),
                "exit": _pt(s.exit),
            }
            for s in result.records
        ],
    }
    return doc


def parse_radii(doc) -> list[dict]:
    raw = _get(doc, "radii", "")
    if not isinstance(raw, list):
        raise ParseError("radii", "expected a list")
    out = []
    for i, r in enumerate(raw):
        f = f"radii[{i}]"
        entry = {"obstacle": _read_pt(_get(r, "obstacle", f), f"{f}.obstacle")}
        for key in ("eps", "isolation", "separation", "delta_formula", "delta"):
            entry[key] = decode_float(_get(r, key, f), f"{f}.{key}")
        out.append(entry)
    return out


def parse_schedule(doc) -> list[dict]:
    sched = _get(doc, "schedule", "")
    raw = _get(sched, "records", "schedule")
    if not isinstance(raw, list):
        raise ParseError("schedule.records", "expected a list")
    out = []
    for i, r in enumerate(raw):
        f = f"schedule.records[{i}]"
        entry = {"obstacle": _read_pt(_get(r, "obstacle", f), f"{f}.obstacle")}
        for key in ("delta", "t_first", "t_last", "t_entry", "t_exit"):
            entry[key] = decode_float(_get(r, key, f), f"{f}.{key}")
        out.append(entry)
    return out


def parse_result(doc: dict):
    """(curve, report, radii, splice records, options) from a result document.

    `options` is None when the document does not record the options it was
    produced with.
    """
    options = parse_options(doc["options"]) if "options" in doc else None
    if options is not None and doc.get("mode", options.puncture_mode) != options.puncture_mode:
        raise ParseError("mode", "disagrees with options.puncture_mode")
    return (
        parse_curve(doc),
        parse_report(_get(doc, "report", "")),
        parse_radii(doc),
        parse_schedule(doc),
        options,
    )
