import csv
import json
from collections import Counter

import pytest

from sawtooth.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, main


def write_spec(tmp_path, top, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps({"N": len(top), "top": top}))
    return str(path)


def test_sample_single_row(tmp_path, capsys):
    spec = write_spec(tmp_path, [0])
    assert main(["sample", "--spec", spec, "--seed", "3"]) == EXIT_OK
    out = capsys.readouterr()
    assert out.out == "3,0\n"
    assert json.loads(out.err)["config"]["seed"] == 3


def test_sample_deterministic_files(tmp_path):
    spec = write_spec(tmp_path, [9, 6, 4, 1, 0])
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["sample", "--spec", spec, "--samples", "20", "--seed", "5", "--out", str(a)]) == EXIT_OK
    assert main(["sample", "--spec", spec, "--samples", "20", "--seed", "5", "--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert len(a.read_text().splitlines()) == 20
    cfg = json.loads((tmp_path / "a.csv.config.json").read_text())
    assert cfg["top"] == [9, 6, 4, 1, 0] and cfg["samples"] == 20


def test_sample_two_rows_frequency(tmp_path):
    spec = write_spec(tmp_path, [2, 0])
    out = tmp_path / "s.csv"
    assert main(["sample", "--spec", spec, "--samples", "10000", "--out", str(out)]) == EXIT_OK
    rows = list(csv.reader(out.open()))
    c = Counter(r[1] for r in rows)
    assert abs(c["0"] / 10_000 - 0.5) < 0.02
    assert set(c) == {"0", "1"}


def test_sample_render_and_render_command(tmp_path):
    spec = write_spec(tmp_path, [5, 3, 0])
    out = tmp_path / "s.csv"
    assert main(["sample", "--spec", spec, "--samples", "2", "--out", str(out), "--render"]) == EXIT_OK
    assert (tmp_path / "s.0.svg").exists() and (tmp_path / "s.1.svg").exists()
    svg = tmp_path / "r.svg"
    assert main(["render", str(out), "--index", "1", "--out", str(svg)]) == EXIT_OK
    assert svg.read_text().count('class="vertical"') == 6


def test_render_json_pattern(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"N": 1, "rows": [[0]]}))
    assert main(["render", str(path)]) == EXIT_OK
    assert capsys.readouterr().out.count('class="vertical"') == 1
    path.write_text(json.dumps([[0]]))
    with pytest.raises(SystemExit) as exc:
        main(["render", str(path)])
    assert exc.value.code == 2


def test_verify_checks(capsys):
    assert main(["verify", "key-prop", "--N", "4", "--k", "2"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["passed"]
    assert main(["verify", "cumulant-identity", "--d", "5"]) == EXIT_OK
    capsys.readouterr()
    assert main(["verify", "theorem2", "--N", "10", "--d", "3"]) == EXIT_OK
    rep = json.loads(capsys.readouterr().out)
    assert all(p["abs_error"] < 1e-6 for p in rep["pairs"])
    assert main(["verify", "sampler-exactness"]) == EXIT_OK


def test_verify_failure_exit_code(capsys):
    assert main(["verify", "theorem2", "--N", "10", "--d", "3", "--atol", "1e-12"]) == EXIT_FAIL
    assert not json.loads(capsys.readouterr().out)["passed"]


def test_budget_exit_code(capsys):
    # degree 9 is beyond the walk-count table bounds
    assert main(["verify", "cumulant-identity", "--d", "9"]) == EXIT_BUDGET
    assert json.loads(capsys.readouterr().out)["skipped"]


def test_usage_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sample"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"N": 2, "top": [0, 3]}))
    assert main(["sample", "--spec", str(bad)]) == 2


def test_gue_compare(capsys):
    assert main(["gue-compare", "--N", "12", "--k", "2", "--samples", "40", "--seed", "1"]) == EXIT_OK
    rep = json.loads(capsys.readouterr().out)
    assert rep["k"] == 2 and rep["samples"] == 40
    assert {"sqrt", "no_sqrt"} <= set(rep)
    assert len(rep["sqrt"]["report"]["ks"]) == 2
