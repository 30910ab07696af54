"""Command-line frontend.

    pathpunch repair <in> -o <out> [--svg FILE] [--samples N] [--delta-fraction F]
                     [--splice-extent tightest|widest] [--mode scheduled|iterative]
    pathpunch check <in> <result>
    pathpunch demo <name> -d <dir>

Exit codes: 0 success, 1 I/O or parse error, 2 the problem violates a
hypothesis of the construction, 3 the repaired path failed validation.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import sys
from pathlib import Path

import numpy as np

from . import fileformat as ff
from .demos import DEMOS
from .detour import ITERATIVE, SCHEDULED, TIGHTEST, WIDEST, repair
from .errors import DetourError, HypothesisViolated
from .spaces import interior_radius
from .verify import check_hypotheses, validate

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_HYPOTHESIS = 2
EXIT_INVALID = 3

REL_TOL = 1e-9


def _err(msg: str) -> None:
    print(f"pathpunch: {msg}", file=sys.stderr)


def _load_problem(path):
    try:
        return ff.parse_problem(ff.load_json(path))
    except OSError as exc:
        raise ff.ParseError("<file>", f"cannot read {path}: {exc.strerror}") from None


def cmd_repair(
    input_path,
    output_path,
    svg=None,
    samples: int | None = None,
    delta_fraction: float | None = None,
    splice_extent: str | None = None,
    mode: str | None = None,
) -> int:
    try:
        problem, _ = _load_problem(input_path)
        overrides = {
            k: v
            for k, v in (
                ("samples", samples),
                ("delta_fraction", delta_fraction),
                ("splice_extent", splice_extent),
                ("puncture_mode", mode),
            )
            if v is not None
        }
        if overrides:
            try:
                problem.options = dataclasses.replace(problem.options, **overrides)
            except ValueError as exc:
                raise ff.ParseError("options", str(exc)) from None
    except ff.ParseError as exc:
        _err(str(exc))
        return EXIT_PARSE

    problems = check_hypotheses(problem)
    if problems:
        for v in problems:
            _err(f"hypothesis violated: {v}")
        return EXIT_HYPOTHESIS
    try:
        result = repair(problem)
    except HypothesisViolated as exc:
        _err(f"hypothesis violated: {exc}")
        return EXIT_HYPOTHESIS
    except DetourError as exc:
        _err(f"repair failed: {exc}")
        return EXIT_INVALID

    try:
        Path(output_path).write_text(ff.dumps(ff.result_to_dict(result, problem.options)))
        if svg is not None:
            from .svg import render

            Path(svg).write_text(render(problem, result.curve, result.radii))
    except OSError as exc:
        _err(f"cannot write output: {exc}")
        return EXIT_PARSE

    report = result.report
    if not report.passed or not report.min_clearance > 0:
        _err(f"validation failed: {', '.join(report.violations) or 'zero clearance'}")
        return EXIT_INVALID
    return EXIT_OK


def _close(a: float, b: float) -> bool:
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= REL_TOL * max(1.0, abs(a), abs(b))


def _compare_reports(stored, fresh) -> list[str]:
    diffs = []
    for name in ("endpoints_ok", "containment_ok", "samples", "violations"):
        if getattr(stored, name) != getattr(fresh, name):
            diffs.append(name)
    for name in ("continuity_modulus", "min_clearance"):
        if not _close(getattr(stored, name), getattr(fresh, name)):
            diffs.append(name)
    if len(stored.crossing_counts) != len(fresh.crossing_counts) or any(
        c1 != c2 or not np.allclose(m1, m2, rtol=0, atol=1e-12)
        for (m1, c1), (m2, c2) in zip(stored.crossing_counts, fresh.crossing_counts)
    ):
        diffs.append("crossing_counts")
    return diffs


def _recheck_radii(problem, radii: list[dict], mode: str) -> list[str]:
    space, opts = problem.space, problem.options
    bad = []
    for i, r in enumerate(radii):
        m = r["obstacle"]
        if m.shape[0] != space.dim:
            bad.append(f"radii[{i}]: wrong dimension")
            continue
        try:
            eps_u = interior_radius(problem.domain, m)
        except HypothesisViolated:
            bad.append(f"radii[{i}]: obstacle not interior")
            continue
        dx, dy = space.distance(m, problem.x), space.distance(m, problem.y)
        terms = [v for v in (r["eps"], r["isolation"], dx, dy, r["separation"]) if not math.isinf(v)]
        bound = 0.5 * min(terms)
        if not _close(bound, r["delta_formula"]):
            bad.append(f"radii[{i}]: delta_formula does not match its terms")
        if not 0 < r["delta"] < r["delta_formula"]:
            bad.append(f"radii[{i}]: delta outside (0, delta_formula)")
        if not _close(r["delta"], opts.delta_fraction * r["delta_formula"]):
            bad.append(f"radii[{i}]: delta is not delta_fraction * delta_formula")
        if mode == SCHEDULED and not _close(r["eps"], eps_u):
            bad.append(f"radii[{i}]: eps differs from the interior radius")
        if r["eps"] > eps_u * (1 + REL_TOL):
            bad.append(f"radii[{i}]: eps exceeds the interior radius")
    if mode == SCHEDULED:
        for i in range(len(radii)):
            for j in range(i + 1, len(radii)):
                a, b = radii[i], radii[j]
                if not space.distance(a["obstacle"], b["obstacle"]) > a["delta"] + b["delta"]:
                    bad.append(f"radii[{i}], radii[{j}]: balls intersect")
    return bad


def _recheck_schedule(records: list[dict], mode: str, t_range) -> list[str]:
    if mode != SCHEDULED:
        return []
    bad = []
    prev = t_range[0]
    for k, r in enumerate(records):
        nxt = records[k + 1]["t_first"] if k + 1 < len(records) else t_range[1]
        if not prev < r["t_entry"] < r["t_first"] <= r["t_last"] < r["t_exit"] < nxt:
            bad.append(f"schedule.records[{k}]: splice parameters out of order")
        prev = r["t_exit"]
    return bad


def cmd_check(input_path, result_path) -> int:
    try:
        problem, _ = _load_problem(input_path)
        try:
            doc = ff.load_json(result_path)
        except OSError as exc:
            raise ff.ParseError("<file>", f"cannot read {result_path}: {exc.strerror}") from None
        curve, stored, radii, records, options = ff.parse_result(doc)
        if options is not None:
            problem.options = options
        mode = problem.options.puncture_mode
        if curve.dim != problem.space.dim:
            raise ff.ParseError("pieces", "curve dimension does not match the problem")
    except ff.ParseError as exc:
        _err(str(exc))
        return EXIT_PARSE

    fresh = validate(curve, problem, stored.samples)
    failures = []
    if not fresh.passed:
        failures.append("report: " + ", ".join(fresh.violations))
    diffs = _compare_reports(stored, fresh)
    if diffs:
        failures.append("stored report differs in " + ", ".join(diffs))
    failures += _recheck_radii(problem, radii, mode)
    failures += _recheck_schedule(records, mode, (problem.path.t_lo, problem.path.t_hi))
    for f in failures:
        _err(f)
    return EXIT_INVALID if failures else EXIT_OK


def cmd_demo(name: str, out_dir) -> int:
    if name not in DEMOS:
        _err(f"unknown demo {name!r}; choose from {', '.join(DEMOS)}")
        return EXIT_PARSE
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        problem_file = out / f"{name}.problem.json"
        problem_file.write_text(ff.dumps(DEMOS[name]))
    except OSError as exc:
        _err(f"cannot write to {out}: {exc}")
        return EXIT_PARSE
    return cmd_repair(problem_file, out / f"{name}.result.json", svg=out / f"{name}.svg")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pathpunch", description="Repair paths around point obstacles.")
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("repair", help="repair the path of a problem file")
    rep.add_argument("input")
    rep.add_argument("-o", "--output", required=True)
    rep.add_argument("--svg")
    rep.add_argument("--samples", type=int)
    rep.add_argument("--delta-fraction", type=float)
    rep.add_argument("--splice-extent", choices=[TIGHTEST, WIDEST])
    rep.add_argument("--mode", choices=[SCHEDULED, ITERATIVE])

    chk = sub.add_parser("check", help="re-validate a stored result against its problem")
    chk.add_argument("input")
    chk.add_argument("result")

    demo = sub.add_parser("demo", help="write and repair one of the bundled problems")
    demo.add_argument("name")
    demo.add_argument("-d", "--dir", default=".")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    if args.command == "repair":
        return cmd_repair(
            args.input,
            args.output,
            svg=args.svg,
            samples=args.samples,
            delta_fraction=args.delta_fraction,
            splice_extent=args.splice_extent,
            mode=args.mode,
        )
    if args.command == "check":
        return cmd_check(args.input, args.result)
    return cmd_demo(args.name, args.dir)
