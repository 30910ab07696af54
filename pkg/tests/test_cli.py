import json
import subprocess
import sys

import pytest

from pathpunch import fileformat as ff
from pathpunch.cli import cmd_check, cmd_demo, cmd_repair, main
from pathpunch.demos import DEMOS


def write(path, doc):
    path.write_text(json.dumps(doc))
    return path


@pytest.mark.parametrize("name", ["single", "multi", "lattice", "vee", "chebyshev"])
def test_demos_succeed_and_check(tmp_path, name):
    assert cmd_demo(name, tmp_path) == 0
    assert (tmp_path / f"{name}.svg").read_text().startswith("<svg")
    assert cmd_check(tmp_path / f"{name}.problem.json", tmp_path / f"{name}.result.json") == 0


def test_demo_single_matches_library(tmp_path):
    cmd_demo("single", tmp_path)
    doc = json.loads((tmp_path / "single.result.json").read_text())
    assert [p["kind"] for p in doc["pieces"]] == ["linear", "arc", "linear"]
    assert doc["pieces"][0]["to"] == [-0.5, 0.0]


def test_demo_multi_has_five_pieces(tmp_path):
    cmd_demo("multi", tmp_path)
    doc = json.loads((tmp_path / "multi.result.json").read_text())
    assert len(doc["pieces"]) == 5
    assert [r["delta"] for r in doc["radii"]] == [0.5, 0.5]


def test_demo_lattice_schedule(tmp_path):
    cmd_demo("lattice", tmp_path)
    doc = json.loads((tmp_path / "lattice.result.json").read_text())
    assert doc["schedule"]["k_star"] == 5


def test_demo_vee_crosses_twice(tmp_path):
    cmd_demo("vee", tmp_path)
    doc = json.loads((tmp_path / "vee.result.json").read_text())
    assert doc["report"]["crossing_counts"][0]["count"] >= 2


def test_demo_line_negative(tmp_path, capsys):
    assert cmd_demo("line-negative", tmp_path) == 2
    assert "BoundaryNotPathConnected" in capsys.readouterr().err


def test_unknown_demo(tmp_path):
    assert cmd_demo("nope", tmp_path) == 1


def test_malformed_files_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cmd_repair(bad, tmp_path / "out.json") == 1
    doc = json.loads(json.dumps(DEMOS["single"]))
    doc["domain"]["radius"] = "ten"
    assert cmd_repair(write(tmp_path / "p.json", doc), tmp_path / "out.json") == 1
    assert "domain.radius" in capsys.readouterr().err
    doc = json.loads(json.dumps(DEMOS["single"]))
    del doc["path"]
    assert cmd_repair(write(tmp_path / "p.json", doc), tmp_path / "out.json") == 1
    assert "path" in capsys.readouterr().err
    assert cmd_repair(tmp_path / "missing.json", tmp_path / "out.json") == 1


def test_obstacle_on_boundary_exit_2(tmp_path):
    doc = json.loads(json.dumps(DEMOS["single"]))
    doc["obstacles"]["points"] = [[0.0, 10.0]]
    assert cmd_repair(write(tmp_path / "p.json", doc), tmp_path / "out.json") == 2


def test_check_rejects_hitting_curve(tmp_path):
    cmd_demo("single", tmp_path)
    res = tmp_path / "single.result.json"
    doc = json.loads(res.read_text())
    doc["knots"] = [0.0, 1.0]
    doc["pieces"] = [{"kind": "linear", "from": [-2.0, 0.0], "to": [2.0, 0.0]}]
    write(res, doc)
    assert cmd_check(tmp_path / "single.problem.json", res) == 3


def test_check_rejects_tampered_radii(tmp_path):
    cmd_demo("multi", tmp_path)
    res = tmp_path / "multi.result.json"
    doc = json.loads(res.read_text())
    doc["radii"][0]["delta"] = 1.5
    write(res, doc)
    assert cmd_check(tmp_path / "multi.problem.json", res) == 3


def test_check_rejects_tampered_report(tmp_path):
    cmd_demo("multi", tmp_path)
    res = tmp_path / "multi.result.json"
    doc = json.loads(res.read_text())
    doc["report"]["min_clearance"] = 0.75
    write(res, doc)
    assert cmd_check(tmp_path / "multi.problem.json", res) == 3


def test_repair_flags_and_iterative_mode(tmp_path):
    prob = write(tmp_path / "p.json", DEMOS["multi"])
    out = tmp_path / "r.json"
    assert main(["repair", str(prob), "-o", str(out), "--mode", "iterative", "--samples", "2048",
                 "--delta-fraction", "0.25", "--splice-extent", "widest", "--svg", str(tmp_path / "p.svg")]) == 0
    doc = json.loads(out.read_text())
    assert doc["mode"] == "iterative" and doc["report"]["samples"] == 2048
    assert doc["radii"][0]["delta"] == 0.25
    assert cmd_check(prob, out) == 0
    assert main(["repair", str(prob), "-o", str(out), "--delta-fraction", "1.5"]) == 1


def test_output_is_byte_identical(tmp_path):
    prob = write(tmp_path / "p.json", DEMOS["chebyshev"])
    main(["repair", str(prob), "-o", str(tmp_path / "a.json"), "--svg", str(tmp_path / "a.svg")])
    main(["repair", str(prob), "-o", str(tmp_path / "b.json"), "--svg", str(tmp_path / "b.svg")])
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()


def test_problem_round_trip(rng):
    from generators import finite_problem

    for _ in range(20):
        prob = finite_problem(rng)
        doc = ff.problem_to_dict(prob)
        again, _ = ff.parse_problem(json.loads(ff.dumps(doc)))
        assert ff.problem_to_dict(again) == doc
        assert again.path.same_as(prob.path)


def test_result_round_trip_is_lossless(tmp_path):
    cmd_demo("multi", tmp_path)
    text = (tmp_path / "multi.result.json").read_text()
    curve, report, *_ = ff.parse_result(json.loads(text))
    problem = ff.load_problem(tmp_path / "multi.problem.json")
    from pathpunch import repair

    result = repair(problem)
    assert curve.same_as(result.curve)
    assert report == result.report


def test_infinity_is_written_as_string(tmp_path):
    cmd_demo("single", tmp_path)
    doc = json.loads((tmp_path / "single.result.json").read_text())
    assert doc["radii"][0]["isolation"] == "inf"


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "pathpunch", "demo", "line-negative", "-d", str(tmp_path)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2
