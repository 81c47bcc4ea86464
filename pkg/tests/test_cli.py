import json
import subprocess
import sys

import pytest

from tiltstab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv,expected", [
    (["xi", "--t", "1/4"], {"t": "1/4", "value": "-3/16"}),
    (["xi", "--t=-1/4"], {"t": "-1/4", "value": "-3/16"}),
    (["upsilon", "--x", "2"], {"x": "2", "tilde": False, "value": "2"}),
    (["omega", "--x", "-2", "--y", "1"], {"x": "-2", "y": "1", "value": "1/8"}),
    (["bn-bounds", "--t", "3/2"], {"t": "3/2", "upper": "2/3", "lower": "-20/9"}),
])
def test_json_outputs(capsys, argv, expected):
    code, out, err = run(capsys, *argv)
    assert code == 0
    assert json.loads(out) == expected
    assert err.startswith("tiltstab ")


def test_clifford_command(capsys):
    code, out, _ = run(capsys, "clifford", "--t", "2")
    assert code == 0
    data = json.loads(out)
    assert data["bound"] == "9" and data["stated"] == "9"


def test_wall_command_matches_figure(capsys):
    code, out, _ = run(capsys, "wall", "--t", "3/2")
    data = json.loads(out)
    assert data["line"] == {"slope": "-3/2", "intercept": "13/4"}


def test_surd_arguments(capsys):
    code, out, _ = run(capsys, "bn-bounds", "--t", "sqrt(14)/2")
    assert code == 0
    assert "sqrt(14)" in json.loads(out)["upper"]


def test_weights_and_central_charge(capsys):
    code, out, _ = run(capsys, "weights")
    assert [w["weights"] for w in json.loads(out)] == [[1, 1, 1, 1, 1], [1, 1, 1, 1, 2], [1, 1, 1, 1, 4]]
    code, out, _ = run(capsys, "central-charge", "--alpha", "1", "--a", "1", "--ch", "3,0,0,0")
    assert json.loads(out) == {"re": "0", "im": "-3/2"}


def test_qgamma_and_delta(capsys):
    code, out, _ = run(capsys, "qgamma", "--ch", "3,3,3/2,1/2")
    assert json.loads(out)["value"] == "6"
    code, out, _ = run(capsys, "delta", "--variety", "double")
    data = json.loads(out)
    assert data["value"] == "13/6" and data["literal"] == "5/2" and data["discrepancy"]


def test_csv_output(capsys):
    code, out, _ = run(capsys, "curve", "xi", "--format", "csv", "--step", "1/4")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x,y"
    assert lines[1:] == ["0,0", "1/4,-3/16", "1/2,0", "3/4,1/16", "1,1/2"]


def test_figure_svg(capsys, tmp_path):
    path = tmp_path / "fig1.svg"
    code, _, _ = run(capsys, "figure", "fig1", "--format", "svg", "--out", str(path))
    assert code == 0
    assert path.read_text().startswith("<svg")


@pytest.mark.parametrize("argv", [
    ["xi", "--t", "abc"],
    ["xi"],
    ["nosuch"],
    ["xi", "--t", "1/4", "--format", "svg"],
    ["clifford", "--t", "1", "--variety", "quintic"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


@pytest.mark.parametrize("argv", [
    ["clifford", "--t", "1"],
    ["wall", "--t", "3"],
    ["support-interval", "--alpha", "1", "--a", "0"],
    ["kernel-check", "--alpha", "0", "--beta", "1"],
])
def test_domain_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == ""
    assert "error" in json.loads(err.splitlines()[-1])


def test_bad_grid_env_exits_2(capsys, monkeypatch):
    monkeypatch.setenv("TILTSTAB_GRID", "star=abc")
    assert run(capsys, "xi", "--t", "0")[0] == 2


def test_deterministic_subprocess_output():
    cmd = [sys.executable, "-m", "tiltstab.cli", "restriction-bound", "--mu", "1/5", "--variety", "double"]
    first = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert first == second and json.loads(first)["mu"] == "1/5"
