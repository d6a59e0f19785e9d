import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

import hautus.analyzer
from hautus.cli import main

DEMOS = Path(__file__).resolve().parent.parent / "demos" / "matrices"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def demo(name):
    return str(DEMOS / name)


def test_analyze_text():
    code, out, _ = run("analyze", demo("pole_zero.mat"))
    assert code == 0
    assert "Uncontrollable" in out and "d1" in out


def test_text_and_json_agree():
    args = ["analyze", demo("half.mat"), "--space", "periodic-rational",
            "--space", "periodic-integer"]
    _, text, _ = run(*args)
    code, raw, _ = run(*args, "--format", "json")
    assert code == 0
    data = json.loads(raw)
    for v in data["verdicts"]:
        assert f"[{v['space']}] {v['status']}" in text
    assert [v["status"] for v in data["verdicts"]] == ["Uncontrollable", "Controllable"]


def test_degenerate_exits_zero():
    code, out, _ = run("analyze", demo("p1.mat"))
    assert code == 0 and "Degenerate" in out


def test_no_witness_flag():
    _, raw, _ = run("analyze", demo("pole_zero.mat"), "--no-witness", "--format", "json")
    assert json.loads(raw)["witnesses"] == []


def test_config_file_supplies_spaces(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"spaces": ["temperate"], "integer_box": 5}))
    _, raw, _ = run("analyze", demo("positive_factor.mat"), "--config", str(cfg),
                    "--format", "json")
    data = json.loads(raw)
    assert [v["space"] for v in data["verdicts"]] == ["temperate"]


def test_witness_command():
    code, out, _ = run("witness", demo("pole_zero.mat"), "--witness-factor", "d1")
    assert code == 0 and "witness x" in out
    code, raw, _ = run("witness", demo("pole_zero.mat"), "--witness-factor", "d1",
                       "--format", "json")
    assert json.loads(raw)["witnesses"][0]["prime_factor"] == "d1"


def test_generic_command():
    code, raw, _ = run("generic", "--rows", "1", "--cols", "2", "--nvars", "2",
                       "--degree", "1", "--trials", "5", "--seed", "7", "--format", "json")
    assert code == 0
    data = json.loads(raw)
    assert data["spec"]["seed"] == 7 and len(data["trials"]) == 5


@pytest.mark.parametrize("argv", [
    ["analyze", "/nonexistent/file.mat"],
    ["analyze", "--space", "bogus", "x.mat"],
    [],
    ["frobnicate"],
    ["generic", "--rows", "1"],
    ["generic", "--rows", "1", "--cols", "2", "--nvars", "2", "--degree", "1", "--density", "3"],
    ["witness", "PLACEHOLDER", "--witness-factor", "d2"],
    ["witness", "PLACEHOLDER", "--witness-factor", "d1 +"],
    ["witness", "PLACEHOLDER"],
])
def test_usage_errors_exit_one(argv):
    argv = [demo("pole_zero.mat") if a == "PLACEHOLDER" else a for a in argv]
    code, _, err = run(*argv)
    assert code == 1
    assert err.startswith("hautus: error:")


def test_parse_error_names_line(tmp_path):
    bad = tmp_path / "bad.mat"
    bad.write_text("vars: 2\nd1; d2\nd1\n")
    code, _, err = run("analyze", str(bad))
    assert code == 1 and "line 3" in err


def test_bad_config_exit_one(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("[1, 2]")
    assert run("analyze", demo("gradient.mat"), "--config", str(cfg))[0] == 1


def test_witness_breach_exits_two(monkeypatch):
    monkeypatch.setattr(hautus.analyzer, "module_membership", lambda v, m: True)
    code, _, err = run("analyze", demo("pole_zero.mat"))
    assert code == 2 and "invariant" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hautus", "analyze", demo("gradient.mat")],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and "Controllable" in proc.stdout


def test_distributions_alias():
    _, raw, _ = run("analyze", demo("positive_factor.mat"), "--space", "distributions",
                    "--format", "json")
    assert json.loads(raw)["verdicts"][0] == {**json.loads(raw)["verdicts"][0],
                                              "space": "smooth", "status": "Uncontrollable"}
