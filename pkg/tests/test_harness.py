import json
import math
from dataclasses import replace

import numpy as np
import pytest

from so3cubics.cli import main
from so3cubics.errors import ConfigError, DegenerateB
from so3cubics.harness import (config_from_dict, default_config, load_config,
                               run_converge, run_cubic, run_figure1, run_figure2,
                               run_figure3, run_quadratic)
from so3cubics.output import (ROTATION_CSV_HEADER, write_quadratic_csv,
                              write_quadratic_json, write_rotation_csv)
from so3cubics.quadratic import integrate_cubic, integrate_quadratic


# ------------------------------------------------------------- configuration

def test_default_configs_validate():
    for kind in ("figure1", "figure2", "figure3", "converge",
                 "quadratic-compare", "cubic-compare"):
        default_config(kind).validate()


def test_config_rejects_degenerate_interval():
    cfg = replace(default_config("figure1"), t0=0.0, t1=0.0)
    with pytest.raises(ConfigError):
        cfg.validate()


def test_config_rejects_empty_formats():
    cfg = replace(default_config("figure1"), formats=())
    with pytest.raises(ConfigError):
        cfg.validate()


def test_config_rejects_single_delta_converge():
    cfg = replace(default_config("converge"), deltas=(0.04,))
    with pytest.raises(ConfigError):
        cfg.validate()


def test_config_rejects_nondecreasing_deltas():
    cfg = replace(default_config("converge"), deltas=(0.02, 0.04))
    with pytest.raises(ConfigError):
        cfg.validate()


def test_config_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        config_from_dict({"kind": "figure1", "bogus": 1})


def test_config_rejects_oversized_step():
    cfg = replace(default_config("figure1"), step=10.0)
    with pytest.raises(ConfigError):
        cfg.validate()


def test_config_file_round_trip(tmp_path):
    cfg = default_config("figure1")
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg.to_dict()))
    loaded = load_config(path)
    assert loaded == cfg.validate()


def test_config_svg_implies_csv_twin():
    cfg = replace(default_config("figure1"), formats=("svg",)).validate()
    assert "csv" in cfg.formats


def test_config_sample_times_count():
    cfg = replace(default_config("figure1"), stride=0.01)
    times = cfg.sample_times()
    assert len(times) == math.floor((cfg.t1 - cfg.t0) / cfg.stride) + 1
    assert times[0] == cfg.t0


# ------------------------------------------------------------------- figure1

@pytest.fixture(scope="module")
def figure1_result(tmp_path_factory):
    out = tmp_path_factory.mktemp("figure1")
    cfg = replace(default_config("figure1"), out_dir=str(out), stride=0.02)
    return cfg, run_figure1(cfg)


def test_figure1_emits_all_formats(figure1_result):
    cfg, result = figure1_result
    suffixes = sorted(p.suffix for p in result.files)
    assert suffixes == [".csv", ".json", ".svg"]
    for p in result.files:
        assert p.exists() and p.stat().st_size > 0


def test_figure1_csv_row_count(figure1_result):
    cfg, result = figure1_result
    csv_path = next(p for p in result.files if p.suffix == ".csv")
    rows = csv_path.read_text().strip().splitlines()
    expected = math.floor((cfg.t1 - cfg.t0) / cfg.stride) + 1
    assert len(rows) == expected + 1  # header


def test_figure1_error_ordering(figure1_result):
    _, result = figure1_result
    maxima = result.report["maxima"]
    assert maxima["taylor2"][0] > maxima["first"][0] >= maxima["second"][0]


def test_figure1_deterministic_output(tmp_path):
    cfg = replace(default_config("figure1"), out_dir=str(tmp_path),
                  stride=0.1, step=5e-3)
    first = {p.name: p.read_bytes() for p in run_figure1(cfg).files}
    second = {p.name: p.read_bytes() for p in run_figure1(cfg).files}
    assert first == second


# ------------------------------------------------------------------- figure2

def test_figure2_budget_breach_ordering(tmp_path):
    cfg = replace(default_config("figure2"), out_dir=str(tmp_path), budget=1e-3)
    result = run_figure2(cfg)
    maxima = result.report["maxima"]
    assert maxima["second"][0] < maxima["first"][0]
    breach = result.report["breach_times"]
    assert breach["first"] is not None and breach["second"] is not None
    assert breach["first"] < breach["second"]
    svg = next(p for p in result.files if p.suffix == ".svg").read_text()
    assert "t=22.5" in svg


# ------------------------------------------------------------------- figure3

@pytest.fixture(scope="module")
def figure3_result(tmp_path_factory):
    out = tmp_path_factory.mktemp("figure3")
    cfg = replace(default_config("figure3"), out_dir=str(out), stride=0.02)
    return cfg, run_figure3(cfg)


def test_figure3_parameter_regression(figure3_result):
    _, result = figure3_result
    params = result.report["params"]
    assert abs(params["q"][2] - 0.125) < 1e-12
    assert abs(params["beta"] - math.sqrt(2.0) / 4.0) < 1e-12
    assert abs(params["gamma"] - 5.0 * math.pi / 4.0) < 1e-12
    assert params["a0"] == [1.25, 0.25]
    assert params["a1"] == [0.25, 0.25]


def test_figure3_angle_grows(figure3_result):
    _, result = figure3_result
    angles = result.report["angle_at_integer_times"]
    assert angles["2.0"] < angles["6.0"]


def test_figure3_rejects_zero_delta(tmp_path):
    cfg = replace(default_config("figure3"), out_dir=str(tmp_path), deltas=(0.0,))
    with pytest.raises(DegenerateB):
        run_figure3(cfg)


# ------------------------------------------------------------------- converge

def test_converge_default_bands_pass(tmp_path):
    cfg = replace(default_config("converge"), out_dir=str(tmp_path),
                  formats=("json",))
    result = run_converge(cfg)
    passed = result.report["passed"]
    for name in ("first", "second", "approx_cubic", "phase"):
        assert passed[name] == [True], (name, result.report["ratios"][name])


def test_converge_three_deltas_two_ratio_rows(tmp_path):
    cfg = replace(default_config("converge"), out_dir=str(tmp_path),
                  deltas=(0.08, 0.04, 0.02), t1=1.5, step=2e-3, stride=0.05,
                  formats=("json",))
    result = run_converge(cfg)
    for name in ("first", "second", "approx_cubic", "phase"):
        assert len(result.report["ratios"][name]) == 2


# ----------------------------------------------------- quadratic/cubic kinds

def test_quadratic_compare_emits_trajectory(tmp_path):
    cfg = replace(default_config("quadratic-compare"), out_dir=str(tmp_path),
                  t1=2.0, step=2e-3, stride=0.05)
    result = run_quadratic(cfg)
    names = {p.name for p in result.files}
    assert "trajectory.csv" in names and "trajectory.json" in names
    assert "near_geodesic_gauge" in result.report
    data = json.loads((tmp_path / "trajectory.json").read_text())
    assert data["schema"] == "so3cubics-quadratic-v1"
    assert not data["null"]


def test_cubic_compare_reports_equivalence(tmp_path):
    cfg = replace(default_config("cubic-compare"), out_dir=str(tmp_path),
                  t1=2.0, step=2e-3, stride=0.05)
    result = run_cubic(cfg)
    assert result.report["reconstruction_max_frobenius"] < 1e-6
    assert result.report["approx_max_frobenius"] > 0.0


# -------------------------------------------------------------- serialization

def test_quadratic_serialization_shapes(tmp_path):
    cfg = default_config("figure1")
    traj = integrate_quadratic(cfg.ivp(cfg.delta), 1e-2)
    csv_path = write_quadratic_csv(tmp_path / "traj.csv", traj)
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "t,v_x,v_y,v_z,dv_x,dv_y,dv_z,ddv_x,ddv_y,ddv_z"
    assert len(lines) == len(traj.grid) + 1
    json_path = write_quadratic_json(tmp_path / "traj.json", traj)
    data = json.loads(json_path.read_text())
    assert len(data["v"]) == len(traj.grid)
    np.testing.assert_allclose(data["constant"], traj.C)


def test_rotation_serialization_header(tmp_path):
    cfg = default_config("figure1")
    traj = integrate_quadratic(cfg.ivp(cfg.delta), 1e-2)
    rt = integrate_cubic(np.eye(3), traj, 1e-2)
    path = write_rotation_csv(tmp_path / "rot.csv", rt, stride=10)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == ",".join(ROTATION_CSV_HEADER)
    assert len(lines) == len(rt.grid[::10]) + 1


# ------------------------------------------------------------------------ CLI

def test_cli_figure1(tmp_path, capsys):
    code = main(["figure1", "--out", str(tmp_path), "--stride", "0.1",
                 "--step", "0.005"])
    assert code == 0
    out = capsys.readouterr().out
    assert "figure1.csv" in out and "max |error|" in out


def test_cli_config_error(tmp_path):
    assert main(["figure1", "--out", str(tmp_path), "--step", "-1.0"]) == 2


def test_cli_degeneracy_exit(tmp_path):
    assert main(["figure3", "--out", str(tmp_path), "--delta", "0.0"]) == 3


def test_cli_config_file(tmp_path):
    cfg = replace(default_config("figure1"), stride=0.1, step=5e-3,
                  t1=2.0, out_dir=str(tmp_path / "ignored"))
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg.to_dict()))
    out = tmp_path / "real"
    assert main(["figure1", "--config", str(path), "--out", str(out)]) == 0
    assert (out / "figure1.json").exists()


def test_cli_kind_mismatch(tmp_path):
    cfg = default_config("figure2")
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg.to_dict()))
    assert main(["figure1", "--config", str(path)]) == 2


def test_cli_converge_flags(tmp_path, capsys):
    code = main(["converge", "--out", str(tmp_path), "--delta", "0.08",
                 "--delta", "0.04", "--stride", "0.1", "--step", "0.005"])
    assert code == 0
    assert "ratios" in capsys.readouterr().out


def test_cli_quadratic(tmp_path):
    code = main(["quadratic", "--out", str(tmp_path), "--stride", "0.1",
                 "--step", "0.005"])
    assert code == 0
    assert (tmp_path / "trajectory.csv").exists()
    assert (tmp_path / "quadratic.csv").exists()


def test_cli_cubic(tmp_path):
    code = main(["cubic", "--out", str(tmp_path), "--stride", "0.1",
                 "--step", "0.005"])
    assert code == 0
    assert (tmp_path / "cubic.csv").exists()
    data = json.loads((tmp_path / "cubic.json").read_text())
    assert data["reconstruction_max_frobenius"] < 1e-6
