import json
from pathlib import Path

import pytest

import slatt.survey
from slatt.cli import main
from slatt.lattice import Verdict

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def s7_file(tmp_path):
    p = tmp_path / "s7.json"
    p.write_text('{"grid": [2, 2], "forks": [0]}')
    return p


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "--grid", "2x2", "--forks", "0")
    assert code == 0 and json.loads(out) == {"grid": [2, 2], "forks": [0]}
    a = run(capsys, "gen", "--grid", "4x4", "--forks", "auto:2", "--seed", "7")
    b = run(capsys, "gen", "--grid", "4x4", "--forks", "auto:2", "--seed", "7")
    assert a == b and len(json.loads(a[1])["forks"]) == 2


@pytest.mark.parametrize("argv", [
    ["gen", "--grid", "1x3"],
    ["gen", "--grid", "3by3"],
    ["gen", "--grid", "2x2", "--forks", "99"],
    ["gen", "--grid", "2x2", "--forks", "auto:x"],
])
def test_gen_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


@pytest.mark.parametrize("name,recipe", [
    ("check_s7.json", '{"grid": [2, 2], "forks": [0]}'),
    ("check_grid33.json", '{"grid": [3, 3], "forks": []}'),
])
def test_check_golden(capsys, tmp_path, name, recipe):
    p = tmp_path / "in.json"
    p.write_text(recipe)
    code, out, _ = run(capsys, "check", p)
    assert code == 0
    assert out == (GOLDEN / name).read_text()
    report = json.loads(out)
    assert report["schema"] == "slatt.check.v1"
    assert all(report["properties"].values())


def test_check_m3_not_slim(capsys, tmp_path):
    p = tmp_path / "m3.json"
    p.write_text('{"n": 5, "upper_covers": [[1, 2, 3], [4], [4], [4], []]}')
    code, out, _ = run(capsys, "check", p)
    report = json.loads(out)
    assert code == 0 and report["valid"]["ok"] is False
    assert "not slim" in report["valid"]["diagnosis"]


def test_check_n5_not_semimodular(capsys, tmp_path):
    p = tmp_path / "n5.json"
    p.write_text('{"n": 5, "upper_covers": [[1, 2], [3], [4], [4], []]}')
    code, out, _ = run(capsys, "check", p)
    assert code == 0 and "not semimodular" in json.loads(out)["valid"]["diagnosis"]


@pytest.mark.parametrize("text", ['{bad', '[1, 2]', '{"foo": 1}', '{"n": 3, "upper_covers": [[1, 2], [], []]}'])
def test_check_parse_errors(capsys, tmp_path, text):
    p = tmp_path / "bad.json"
    p.write_text(text)
    assert run(capsys, "check", p)[0] == 2


def test_check_theorem_failure_exit_code(capsys, tmp_path, monkeypatch, s7_file):
    monkeypatch.setitem(slatt.survey.PROPERTIES, "partition", lambda P: Verdict(False, "forced", "forced"))
    witness = tmp_path / "w.json"
    code, _, err = run(capsys, "check", s7_file, "--witness-file", witness)
    assert code == 3
    assert "IMPLEMENTATION BUG OR DISCOVERY" in err
    assert json.loads(witness.read_text())["properties"]["partition"] is False


def test_check_corollary_failure_exit_code(capsys, tmp_path):
    p = tmp_path / "r.json"
    p.write_text('{"grid": [2, 2], "forks": [0, 0, 5]}')
    code, out, _ = run(capsys, "check", p)
    assert code == 1
    assert "corollary:covnew" in json.loads(out)["failures"]


def test_congruences(capsys, s7_file):
    code, out, _ = run(capsys, "congruences", s7_file)
    data = json.loads(out)
    assert code == 0 and data["elements"] == 3 and data["maximal"] == [0, 1]
    assert data["col"]["4-6"] == 2 and data["col"]["3-6"] != data["col"]["5-6"]


def test_swing(capsys, s7_file):
    code, out, _ = run(capsys, "swing", s7_file, "--pair", "3-6", "2-5", "--witness", "--verify-oracle")
    data = json.loads(out)
    assert code == 0 and data["leq"] is True
    assert data["path"][0] == ["start", "3-6"] and data["path"][-1][1] == "2-5"
    assert data["verify_oracle"]["mismatches"] == 0
    code, out, _ = run(capsys, "swing", s7_file, "--pair", "3-6", "0-1")
    assert json.loads(out)["leq"] is False
    assert run(capsys, "swing", s7_file, "--pair", "0-6", "0-1")[0] == 2


def test_render(capsys, tmp_path, s7_file):
    out = tmp_path / "s7.svg"
    assert run(capsys, "render", s7_file, "--colors", "-o", out)[0] == 0
    assert out.read_text() == (GOLDEN / "s7_colors.svg").read_text()
    code, text, _ = run(capsys, "render", s7_file, "--format", "tikz", "--trajectories")
    assert code == 0 and "tikzpicture" in text


def test_survey_small(capsys, tmp_path):
    out = tmp_path / "s.json"
    code, _, _ = run(capsys, "survey", "--bounds", "2,2,1", "-o", out)
    report = json.loads(out.read_text())
    assert code == 0
    assert report["schema"] == "slatt.survey.v1"
    assert report["summary"]["recipes"] == 2 == len(report["records"])
    assert report["summary"]["failed_recipes"] == 0


def test_survey_jobs_identical(capsys, tmp_path, monkeypatch):
    outs = []
    for jobs in ("1", "3"):
        monkeypatch.setenv("SLATT_JOBS", jobs)
        out = tmp_path / f"s{jobs}.json"
        run(capsys, "survey", "--bounds", "3,3,1", "--random", "4", "-o", out)
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
