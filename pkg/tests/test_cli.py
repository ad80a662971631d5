import json

from noether.cli import main


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_groups_list(capsys):
    assert main(["groups", "list", "--n", "5"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 19 and out[0].startswith("G1 ")


def test_groups_info(capsys):
    assert main(["groups", "info", "--family", "G8", "--n", "5"]) == 0
    info = json.loads(capsys.readouterr().out)
    assert info["profile"]["order"] == 32


def test_verify_case_report(tmp_path, capsys):
    out = tmp_path / "g8.json"
    assert main(["verify", "case", "--family", "G8", "--n", "5", "--report", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["status"] == "passed"
    assert rep["input"]["group"] == {"family": 8, "n": 5}
    assert rep["extras"]["epsilon"] == -1


def test_verify_case_missing_root_exits_1(tmp_path, capsys):
    f = write(tmp_path, "f.json", {"char": 0, "roots": [4]})
    assert main(["verify", "case", "--family", "G8", "--n", "6", "--field", f]) == 1


def test_verify_all(tmp_path, capsys):
    assert main(["verify", "all", "--n", "5", "--jobs", "1", "--report", str(tmp_path)]) == 0
    assert "19/19 cases passed" in capsys.readouterr().out
    assert len(list(tmp_path.glob("*.json"))) == 19


def test_verify_theorem18(capsys):
    assert main(["verify", "theorem18", "--subcase", "3", "--m", "3"]) == 0
    assert "NotRational" in capsys.readouterr().out


def test_classify_group(tmp_path, capsys):
    spec = write(tmp_path, "g.json", {"family": "G8", "n": 5})
    f = write(tmp_path, "f.json", {"char": 0, "roots": [4]})
    assert main(["classify", "group", "--spec", spec, "--field", f]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == "Rational"


def test_classify_and_reduce_action(tmp_path, capsys):
    action = write(tmp_path, "a.json", {"d": 3, "m": 2, "generators": {
        "t": {"A": [[0, 0, -1], [1, 0, -1], [0, 1, -1]], "c": [0, 0, 1]}}})
    f = write(tmp_path, "q.json", {"char": 0, "roots": [2]})
    assert main(["classify", "action", "--action", action, "--field", f]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == "NotRational"
    assert main(["reduce", "action", "--action", action]) == 0
    assert json.loads(capsys.readouterr().out)["steps"] == []


def test_m_group(tmp_path, capsys):
    mats = write(tmp_path, "m.json", {"matrices": [{"perm": [1, 2, 3, 0],
                                                    "coeffs": [[1, 0], [1, 0], [1, 0], [2, 1]]}]})
    f = write(tmp_path, "q.json", {"char": 0, "roots": [2]})
    assert main(["m-group", "classify", "--matrices", mats, "--field", f]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == "NotRational"


def test_bad_input_exits_2(tmp_path, capsys):
    assert main(["verify", "case", "--family", "G99", "--n", "5"]) == 2
    assert main(["classify", "group", "--spec", str(tmp_path / "nope.json"), "--field", "x"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["classify", "action", "--action", str(bad), "--field", str(bad)]) == 2
    assert main(["frobnicate"]) == 2
    assert "error" in capsys.readouterr().err
