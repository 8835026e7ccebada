import re

import numpy as np
import pytest

from darkbright.cli import cli_main
from darkbright.io import read_table

CONFIG = """
[scheme]
kind = lambda

[fields]
omega1_rabi = 1e10 rad/s
omega2_rabi = 2e10 rad/s

[scenario]
margin = 10
scan_points = 11
scan_half_width = 1e9 rad/s
"""


def test_threshold_prints_expected_values(capsys):
    rc = cli_main(["threshold", "--gamma-cb", "1e6", "--gamma-ab", "1e12",
                   "--mode", "paper_fit"])
    out = capsys.readouterr().out
    assert rc == 0
    omega = float(re.search(r"Omega_th = ([\d.e+-]+) rad/s", out).group(1))
    p_th = float(re.search(r"P_th = ([\d.e+-]+) W/cm", out).group(1))
    assert omega == pytest.approx(1e9, rel=1e-6)
    assert p_th == pytest.approx(4e-2, rel=1e-6)


def test_list_scenarios_prints_five_names(capsys):
    rc = cli_main(["list-scenarios"])
    names = capsys.readouterr().out.split()
    assert rc == 0
    assert len(names) == 5
    assert names == sorted(names)


def test_unknown_subcommand_is_usage_error(capsys):
    rc = cli_main(["defrobnicate"])
    assert rc == 1
    assert "usage" in capsys.readouterr().err


def test_no_arguments_is_usage_error(capsys):
    assert cli_main([]) == 1


def test_physics_error_maps_to_exit_2(capsys):
    rc = cli_main(["threshold", "--gamma-cb=-1e6", "--gamma-ab", "1e12"])
    assert rc == 2
    assert "error" in capsys.readouterr().err


def test_convert_commands(capsys):
    rc = cli_main(["convert", "intensity", "--pulse-energy-j", "1e-6",
                   "--duration-s", "1e-12", "--area-cm2", "1"])
    assert rc == 0
    assert "1.000000e+06 W/cm^2" in capsys.readouterr().out
    rc = cli_main(["convert", "rabi", "--intensity-w-cm2", "1.0"])
    assert rc == 0
    assert "5.000000e+09 rad/s" in capsys.readouterr().out


def test_scenario_end_to_end(tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text(CONFIG)
    out = tmp_path / "cpt.csv"
    rc = cli_main(["--quiet", "scenario", "cpt", "--config", str(cfg),
                   "--out", str(out), "--format", "csv"])
    assert rc == 0
    table = read_table(out)
    assert table.nrows == 11
    assert table.columns[0] == "two_photon_detuning"


def test_scenario_unknown_name_is_usage_error(capsys):
    assert cli_main(["scenario", "warpdrive"]) == 1


def test_scenario_default_out_respects_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("DARKBRIGHT_OUTDIR", str(tmp_path))
    cfg = tmp_path / "run.ini"
    cfg.write_text(CONFIG)
    rc = cli_main(["--quiet", "scenario", "cpt", "--config", str(cfg)])
    assert rc == 0
    assert (tmp_path / "cpt.csv").exists()


def test_steady_prints_populations(tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text(CONFIG)
    rc = cli_main(["steady", "--config", str(cfg)])
    out = capsys.readouterr().out
    assert rc == 0
    pops = {m.group(1): float(m.group(2))
            for m in re.finditer(r"population_(\w+) = ([\d.e+-]+)", out)}
    assert pops.keys() == {"a", "b", "c"}
    assert sum(pops.values()) == pytest.approx(1.0, abs=1e-9)


def test_evolve_writes_trajectory(tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text(CONFIG + "\n[evolve]\nt_final = 10 ps\npoints = 21\n")
    out = tmp_path / "traj.csv"
    rc = cli_main(["--quiet", "evolve", "--config", str(cfg), "--out", str(out)])
    assert rc == 0
    table = read_table(out)
    assert table.nrows == 21
    assert table.columns[0] == "time"
    totals = sum(table.column(f"population_{s}") for s in ("a", "b", "c"))
    np.testing.assert_allclose(totals, 1.0, atol=1e-9)


def test_bad_config_maps_to_exit_2(tmp_path, capsys):
    cfg = tmp_path / "bad.ini"
    cfg.write_text("[rates]\ngama_cb = 1e6 /s\n")
    rc = cli_main(["steady", "--config", str(cfg)])
    assert rc == 2
    assert "gama_cb" in capsys.readouterr().err


def test_quiet_suppresses_progress(tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text(CONFIG)
    out = tmp_path / "cpt.csv"
    rc = cli_main(["--quiet", "scenario", "cpt", "--config", str(cfg),
                   "--out", str(out)])
    assert rc == 0
    assert capsys.readouterr().err == ""
