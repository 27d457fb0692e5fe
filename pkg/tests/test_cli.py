import json
import subprocess
import sys

import numpy as np
import pytest

from cmpatterns.cli import main

BASE = """
[model]
alpha = 1.0
beta = 1.0
c = 12.0
d = 1.0
[grid]
n = 65
[simulate]
modes = 1, 2
amplitude = 0.05
lyapunov = true
t_max = 500
"""


@pytest.fixture
def base_cfg(tmp_path):
    path = tmp_path / "base.cfg"
    path.write_text(BASE, encoding="utf-8")
    return str(path)


def run_cli(*args):
    return main(list(args))


def read_json(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_regimes_outputs(tmp_path, base_cfg):
    out = tmp_path / "out"
    assert run_cli("regimes", "--config", base_cfg, "--out-dir", str(out)) == 0
    rep = read_json(out / "regimes.json")
    assert rep["regime"] == "A_LE_1"
    assert rep["count_thresholds"]["extinction"] == pytest.approx(2.0)
    assert (out / "c_curve.csv").read_text().startswith("u,c_of_u")
    assert (out / "c_curve.svg").read_text().startswith("<svg")


def test_regimes_deterministic(tmp_path, base_cfg):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run_cli("regimes", "--config", base_cfg, "--out-dir", str(a)) == 0
    assert run_cli("regimes", "--config", base_cfg, "--out-dir", str(b)) == 0
    assert (a / "regimes.json").read_bytes() == (b / "regimes.json").read_bytes()
    assert (a / "c_curve.svg").read_bytes() == (b / "c_curve.svg").read_bytes()


def test_equilibria_output(tmp_path, base_cfg):
    out = tmp_path / "out"
    assert run_cli("equilibria", "--config", base_cfg, "--out-dir", str(out)) == 0
    rep = read_json(out / "equilibria.json")
    assert rep["consistent"] is True
    assert rep["expected_count"] == 1
    (entry,) = rep["equilibria"]
    assert entry["u"] == pytest.approx(0.5, abs=1e-10)
    assert entry["v"] == pytest.approx(3.0, abs=1e-9)


def test_dispersion_output(tmp_path, base_cfg):
    out = tmp_path / "out"
    assert run_cli("dispersion", "--config", base_cfg, "--out-dir", str(out)) == 0
    rep = read_json(out / "dispersion.json")
    (block,) = rep["equilibria"]
    assert block["stable"] is True
    assert block["unstable_modes"] == []
    assert block["jacobian"]["a21"] == pytest.approx(4.0, rel=1e-9)
    assert len(block["rows"]) == block["j_max"] + 1
    lines = (out / "dispersion.csv").read_text().splitlines()
    assert lines[0] == "equilibrium,j,mu,trace,det,max_re_lambda"
    assert len(lines) == 1 + block["j_max"] + 1


def test_simulate_converges_with_lyapunov(tmp_path, base_cfg):
    out = tmp_path / "out"
    assert run_cli("simulate", "--config", base_cfg, "--out-dir", str(out)) == 0
    rep = read_json(out / "simulate.json")
    assert rep["outcome"] == "ConvergedConstant"
    assert rep["u_range"][0] == pytest.approx(0.5, abs=1e-5)
    tr = rep["lyapunov_trace"]
    assert tr is not None and len(tr) >= 2
    assert all(b <= a + 1e-10 * tr[0] for a, b in zip(tr, tr[1:]))
    profile = (out / "final_profile.csv").read_text().splitlines()
    assert profile[0] == "x,u,v"
    assert len(profile) == 1 + 65


def test_simulate_deterministic(tmp_path, base_cfg):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run_cli("simulate", "--config", base_cfg,
                       "--out-dir", str(out)) == 0
    assert (a / "simulate.json").read_bytes() == (b / "simulate.json").read_bytes()
    assert (a / "final_profile.csv").read_bytes() == \
        (b / "final_profile.csv").read_bytes()


def test_simulate_blowup_exit_code(tmp_path, capsys):
    cfg = tmp_path / "blow.cfg"
    cfg.write_text(BASE.replace("[simulate]", "[simulate]\nbase = constants\n"
                                "u0 = 200\nv0 = 3\n")
                   .replace("lyapunov = true", ""), encoding="utf-8")
    out = tmp_path / "out"
    assert run_cli("simulate", "--config", str(cfg), "--out-dir", str(out)) == 3
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["type"] == "StepRejected"
    assert err["error"]["exit_code"] == 3
    assert read_json(out / "simulate.json")["outcome"] == "Blowup"


def test_simulate_lyapunov_needs_equilibrium_base(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(BASE.replace("[simulate]", "[simulate]\nbase = constants\n"),
                   encoding="utf-8")
    assert run_cli("simulate", "--config", str(cfg),
                   "--out-dir", str(tmp_path / "o")) == 1
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["type"] == "ConfigError"


def test_steady_output(tmp_path, base_cfg):
    out = tmp_path / "out"
    assert run_cli("steady", "--config", base_cfg, "--out-dir", str(out)) == 0
    rep = read_json(out / "steady.json")
    (sol,) = rep["solutions"]
    assert sol["classification"] == "Constant"
    assert sol["residual_norm"] < 1e-10
    assert sol["bounds_ok"] is True
    assert (out / "steady_profile_0.csv").exists()


def test_index_and_threshold(tmp_path, base_cfg):
    out = tmp_path / "out"
    assert run_cli("index", "--config", base_cfg, "--out-dir", str(out)) == 0
    rep = read_json(out / "index.json")
    assert rep["degree_sum"] == 1
    assert rep["predicts_nonconstant"] is False

    assert run_cli("threshold", "--config", base_cfg, "--out-dir", str(out)) == 0
    th = read_json(out / "threshold.json")
    # a_bound = 3/2 + 12*1/1 + 144/2 = 85.5 dominates b_bound here
    assert th["a_bound"] == pytest.approx(85.5, rel=1e-12)
    assert th["d_star"] == pytest.approx(85.5, rel=1e-12)
    assert th["exceeds_threshold"] is False


def test_index_degree_three_for_triple(tmp_path):
    cfg = tmp_path / "triple.cfg"
    cfg.write_text("""
[model]
alpha = 3.0
beta = 0.755
c = 17.715
d = 0.1
d1 = 0.01
d2 = 1.0
""", encoding="utf-8")
    out = tmp_path / "out"
    assert run_cli("index", "--config", str(cfg), "--out-dir", str(out)) == 0
    rep = read_json(out / "index.json")
    assert rep["degree_sum"] == 3
    assert rep["predicts_nonconstant"] is True
    assert len(rep["entries"]) == 3


def test_seed_override_lands_in_report(tmp_path, base_cfg):
    out = tmp_path / "out"
    assert run_cli("regimes", "--config", base_cfg, "--out-dir", str(out),
                   "--seed", "9") == 0
    rep = read_json(out / "regimes.json")
    assert rep["config"]["run"]["seed"] == 9


def test_missing_and_invalid_config(tmp_path, capsys):
    assert run_cli("regimes", "--config", str(tmp_path / "nope.cfg"),
                   "--out-dir", str(tmp_path)) == 1
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["type"] == "FileNotFoundError"

    bad = tmp_path / "bad.cfg"
    bad.write_text("[model]\nalpha = 2\nbeta = 0.9\nc = 40\nd = 0.1\n"
                   "[grid]\nresolution = 5\n", encoding="utf-8")
    assert run_cli("equilibria", "--config", str(bad),
                   "--out-dir", str(tmp_path)) == 1
    err2 = json.loads(capsys.readouterr().err)
    assert err2["error"]["type"] == "ConfigError"
    assert "resolution" in err2["error"]["message"]


def test_usage_errors(capsys):
    assert main([]) == 1
    assert main(["unknown-command"]) == 1
    capsys.readouterr()  # swallow argparse noise


SWEEP = """
[model]
alpha = 1.0
beta = 1.0
c = 12.0
d = 1.0
[grid]
n = 65
[sweep]
x_param = c
x_values = 2.0, 12.0, 20.0
t_max = 40
steady_tol = 1e-6
"""


def test_sweep_serial_and_parallel_agree(tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(SWEEP, encoding="utf-8")
    s1, s2 = tmp_path / "s1", tmp_path / "s2"
    assert run_cli("sweep", "--config", str(cfg), "--out-dir", str(s1)) == 0
    assert run_cli("sweep", "--config", str(cfg), "--out-dir", str(s2),
                   "--jobs", "2") == 0
    assert (s1 / "sweep.json").read_bytes() == (s2 / "sweep.json").read_bytes()
    rep = read_json(s1 / "sweep.json")
    rows = rep["rows"]
    assert len(rows) == 3
    assert [r["x"] for r in rows] == [2.0, 12.0, 20.0]
    assert all(r["status"] == "ok" for r in rows)
    # c = 2 sits at the extinction level: no positive equilibria there
    assert rows[0]["count"] == 0
    assert rows[1]["count"] == 1
    lines = (s1 / "sweep.csv").read_text().splitlines()
    assert len(lines) == 4


def test_console_script_entry_point(tmp_path, base_cfg):
    out = subprocess.run(
        [sys.executable, "-m", "cmpatterns.cli", "threshold",
         "--config", base_cfg, "--out-dir", str(tmp_path / "o")],
        capture_output=True, text=True)
    assert out.returncode == 0
    assert (tmp_path / "o" / "threshold.json").exists()
