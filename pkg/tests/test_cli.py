import json
import subprocess
import sys

import pytest

from symhilb.cli import main


def run(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_fan_c2(capsys):
    code, out, _ = run(["fan", "--fan", "c2"], capsys)
    data = json.loads(out)
    assert code == 0 and data["s"] == 1
    assert (data["charts"][0]["L"], data["charts"][0]["R"]) == ("t1", "t2")


def test_fan_p2(capsys):
    code, out, _ = run(["fan", "--fan", "p2", "--format", "csv"], capsys)
    assert code == 0
    assert len(out.strip().splitlines()) == 4


def test_fan_non_smooth(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"rays": [[1,0],[1,2]], "cones": [[0,1]]}')
    code, _, err = run(["fan", "--fan", str(f)], capsys)
    assert code == 1 and "non-smooth cone" in err


def test_fan_malformed(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"rays": [[1,0],\n [0,1]], "cones": [[0,1]')
    code, _, err = run(["fan", "--fan", str(f)], capsys)
    assert code == 2 and "line 2" in err


def test_gram_c2(capsys):
    code, out, _ = run(["gram", "--fan", "c2", "-n", "2", "--side", "orb"], capsys)
    assert code == 0 and json.loads(out)["matrix"] == [["t1*t2/2", "0"], ["0", "t1^2*t2^2/2"]]
    code, out, _ = run(["gram", "--fan", "c2", "-n", "2", "--side", "hilb"], capsys)
    assert json.loads(out)["matrix"] == [["-t1*t2/2", "0"], ["0", "t1^2*t2^2/2"]]


def test_gram_p2_diagonal(capsys):
    code, out, _ = run(["gram", "--fan", "p2", "-n", "2"], capsys)
    m = json.loads(out)["matrix"]
    assert len(m) == 9
    assert all((v != "0") == (i == j) for i, row in enumerate(m) for j, v in enumerate(row))


def test_cup_c2_n1(capsys):
    code, out, _ = run(["cup", "--fan", "c2", "-n", "1"], capsys)
    assert code == 0
    assert json.loads(out) == [{"basis": "nakajima", "lhs": [[1]], "mhs": [[1]], "rhs": [[1]], "value": "t1^2*t2^2"}]


def test_cup_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["cup", "--fan", "p2", "-n", "2", "--out", str(a)]) == 0
    assert main(["cup", "--fan", "p2", "-n", "2", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    recs = json.loads(a.read_text())
    assert all(r["basis"] == "nakajima" for r in recs)


def test_cup_orb_side(capsys):
    code, out, _ = run(["cup", "--fan", "c2", "-n", "2", "--side", "orb", "--format", "text"], capsys)
    assert code == 0 and "t1^3*t2^3/2" in out


@pytest.mark.parametrize("suite,extra", [
    ("isometry", ["--fan", "p2", "-n", "3"]),
    ("tangent-oracle", ["-n", "6"]),
    ("cr-calibration", ["-n", "4"]),
    ("degrees", ["--fan", "p1xp1", "-n", "3"]),
    ("theorem", ["--fan", "c2", "-n", "2"]),
])
def test_verify_suites_pass(suite, extra, capsys):
    code, out, _ = run(["verify", "--suite", suite, *extra], capsys)
    data = json.loads(out)
    assert code == 0 and data["status"] == "pass"
    assert data["suites"][suite]["fail"] == 0


def test_verify_theorem_reports_skipped(capsys):
    code, out, _ = run(["verify", "--suite", "theorem", "-n", "2"], capsys)
    assert json.loads(out)["suites"]["theorem"]["skipped"] > 0


def test_verify_cache_warm_cold(tmp_path, capsys):
    args = ["verify", "--suite", "jack", "--fan", "c2", "-n", "4", "--cache", str(tmp_path)]
    code1, cold, _ = run(args, capsys)
    assert list(tmp_path.glob("jack_n4_*.json"))
    code2, warm, _ = run(args, capsys)
    assert code1 == code2 == 0 and cold == warm


@pytest.mark.parametrize("args", [
    ["gram", "-n", "0"],
    ["verify", "--oracle-bound", "9"],
    ["verify", "--suite", "nonsense"],
    ["gram", "--fan", "missing.json"],
    ["gram", "--bogus"],
])
def test_input_errors(args, capsys):
    assert run(args, capsys)[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "symhilb", "fan", "--fan", "c2", "--format", "text"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "L = t1" in proc.stdout
