import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from pauli_pairs import cli
from pauli_pairs.config import COMMAND_CONFIGS, ConfigError, load_config, parse_text
from pauli_pairs.experiments import ExperimentResult

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def run(tmp_path, *argv):
    out = tmp_path / "out"
    return cli.run([*argv, "--out", str(out)]), out


def test_every_command_has_a_shipped_config():
    shipped = {p.stem.replace("_", "-") for p in CONFIGS.glob("*.cfg")}
    assert shipped == set(COMMAND_CONFIGS)
    for name in COMMAND_CONFIGS:
        load_config(name, CONFIGS / f"{name.replace('-', '_')}.cfg")


def test_nodes_command_writes_table_and_report(tmp_path):
    code, out = run(tmp_path, "nodes", "--config", str(CONFIGS / "nodes.cfg"))
    assert code == 0
    rep = json.loads((out / "report.json").read_text())
    assert rep["exit_code"] == 0 and rep["tables"] == ["nodes.csv"]
    assert rep["summary"]["density"]["verdict"] == "subcritical"
    assert rep["config"]["c"] == 0.2
    lines = (out / "nodes.csv").read_text().splitlines()
    assert lines[0] == "i,lambda,d" and len(lines) == 256


def test_certificate_command(tmp_path):
    code, out = run(tmp_path, "certificate", "--config", str(CONFIGS / "certificate.cfg"))
    assert code == 0
    rows = (out / "certificate.csv").read_text().splitlines()
    assert rows[1].split(",")[0] == "0.2" and "true" in rows[1]
    assert "false" in rows[2]


def test_negative_demo_report(tmp_path):
    code, out = run(tmp_path, "negative-demo")
    assert code == 0
    s = json.loads((out / "report.json").read_text())["summary"]
    assert s["space"]["node_max_dev"] == 0 and s["frequency"]["node_max_dev"] <= 1e-6
    assert s["space"]["global_max_dev"] >= 0.05 and s["frequency"]["global_max_dev"] >= 0.05


@pytest.mark.parametrize("text,match", [
    ("c = 0.2\nbogus = 1\n", "unknown"),
    ("c = zero\n", "c"),
    ("c = -1\n", "c"),
])
def test_bad_config_exits_1(tmp_path, text, match, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    code, _ = run(tmp_path, "nodes", "--config", str(cfg))
    assert code == 1
    assert match in capsys.readouterr().err


def test_missing_config_and_bad_arguments_exit_1(tmp_path):
    assert run(tmp_path, "nodes", "--config", str(tmp_path / "nope.cfg"))[0] == 1
    assert run(tmp_path, "nodes", "--threads", "0")[0] == 1
    with pytest.raises(SystemExit) as exc:
        cli.run(["no-such-command"])
    assert exc.value.code == 1


def test_violation_exits_2(tmp_path, monkeypatch):
    monkeypatch.setitem(cli.RUNNERS, "nodes",
                        lambda cfg, threads=1, timings=False: ExperimentResult({"x": 1}, {"t": [{"a": 1}]}, True))
    code, out = run(tmp_path, "nodes")
    assert code == 2
    assert json.loads((out / "report.json").read_text())["exit_code"] == 2


def test_parse_text_and_overrides():
    assert parse_text("# comment\nc_values = 0.2, 1.6\nname = x\n") == {"c_values": "0.2, 1.6", "name": "x"}
    cfg = load_config("uniqueness-scan", None, {"seed": 5})
    assert cfg.seed == 5 and cfg.c_values == [0.2, 1.6]
    with pytest.raises(ConfigError):
        load_config("uniqueness-scan", None, {"N_values": "32, 64.5"})


def test_timings_only_on_request(tmp_path):
    cfg = tmp_path / "scan.cfg"
    cfg.write_text("c_values = 0.2\nN_values = 32\n")
    code, out = run(tmp_path, "uniqueness-scan", "--config", str(cfg))
    assert code == 0 and "runtime_ms" not in (out / "uniqueness_scan.csv").read_text()
    code, out = run(tmp_path, "uniqueness-scan", "--config", str(cfg), "--timings")
    assert "runtime_ms" in (out / "uniqueness_scan.csv").read_text()


def test_console_script_entry_point(tmp_path):
    exe = shutil.which("pauli-pairs")
    cmd = [exe] if exe else [sys.executable, "-m", "pauli_pairs.cli"]
    res = subprocess.run([*cmd, "nodes", "--out", str(tmp_path / "o")], capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    assert (tmp_path / "o" / "nodes.csv").exists()


@pytest.mark.parametrize("command,text", [
    ("wirtinger", "trials = 40\nconvex_phi_trials = 20\nseed = 3\n"),
    ("uniqueness-scan", "c_values = 0.2, 1.6\nN_values = 32, 64\n"),
    ("moments", "p_max = 20\n"),
])
def test_repeated_runs_are_byte_identical(tmp_path, command, text):
    cfg = tmp_path / "c.cfg"
    cfg.write_text(text)
    bodies = []
    for i in range(2):
        out = tmp_path / f"run{i}"
        assert cli.run([command, "--config", str(cfg), "--out", str(out), "--threads", str(1 + i)]) == 0
        bodies.append({p.name: p.read_bytes() for p in sorted(out.glob("*.csv"))})
    assert bodies[0] and bodies[0] == bodies[1]
