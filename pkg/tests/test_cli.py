import json
import subprocess
import sys
from dataclasses import replace

import numpy as np
import pytest

from moebius_csr import cli, decision
from moebius_csr.lattice import build_cylinder, build_moebius

S0_DATA = {
    "N": 10,
    "M": 2,
    "a": 0.5,
    "k": 2.0,
    "beta": 2.0,
    "delta": 0.1,
    "p": 3.0,
    "w": 1.0,
    "lambda": 4,
}

OPTIMIZE_S0_REPORT = (
    "case=BetaAboveOne\n"
    "c_star_paper=1.36752136752\n"
    "kind=LocalMin\n"
    "c_opt=0\n"
    "H_opt=0\n"
    "feasible=true\n"
)

OPTIMIZE_S1_CSV = (
    "case,c_star_paper,kind,c_opt,H_opt,feasible\n"
    "BetaBelowOne,0.26736328125,LocalMax,0.26736328125,5.347265625,true\n"
)

STATICS_M_CSV = (
    "param_value,c_star\n"
    "2,1.36752136752\n"
    "3,1.24352331606\n"
    "4,1.18959107807\n"
    "5,1.15942028986\n"
)

STATICS_BETA_CSV = (
    "param_value,c_star\n"
    "0.5,0.26736328125\n"
    "1,\n"
    "1.5,1.66232416945\n"
)

SPECTRUM_CSV = (
    "phi,total_energy\n"
    "0,-5.11803398875\n"
    "1,-5.11803398875\n"
    "2,-5.11803398875\n"
)

COST_REPORT = "cost=-2\nneighborhood=2\nsector=1\nloyalty=0.5\ntotal=1.5\n"


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path / "s0.json"
    path.write_text(json.dumps(S0_DATA), encoding="utf-8")
    return str(path)


@pytest.fixture
def cost_files(tmp_path):
    a = tmp_path / "a.csv"
    c = tmp_path / "c.csv"
    a.write_text("\n".join(["0.5,0.5"] * 4) + "\n", encoding="utf-8")
    c.write_text("\n".join(["0.25,0.25"] * 4) + "\n", encoding="utf-8")
    return str(a), str(c)


def run_cli(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- optimize ---------------------------------------------------------


def test_optimize_report_golden(capsys, scenario_file):
    code, out, err = run_cli(capsys, ["optimize", "--scenario", scenario_file])
    assert code == 0
    assert err == ""
    assert out == OPTIMIZE_S0_REPORT


def test_optimize_csv_golden(capsys, scenario_file):
    argv = ["optimize", "--scenario", scenario_file, "--beta", "0.5", "--csv"]
    code, out, _ = run_cli(capsys, argv)
    assert code == 0
    assert out == OPTIMIZE_S1_CSV


def test_optimize_oracle_lines(capsys, scenario_file):
    argv = [
        "optimize", "--scenario", scenario_file,
        "--beta", "0.5", "--oracle-points", "2001",
    ]
    code, out, _ = run_cli(capsys, argv)
    assert code == 0
    scenario = replace(decision.CsrScenario.from_dict(S0_DATA), beta=0.5)
    c_ref, h_ref = decision.optimize_oracle(scenario, 2001)
    lines = out.splitlines()
    assert lines[-2] == "c_oracle=" + ("%.12g" % c_ref)
    assert lines[-1] == "H_oracle=" + ("%.12g" % h_ref)
    assert lines[-1] == "H_oracle=5.347265625"


def test_optimize_infeasible_exit_code(capsys, scenario_file, tmp_path):
    out_file = tmp_path / "report.txt"
    argv = [
        "optimize", "--scenario", scenario_file,
        "--p", "1", "--w", "3", "--out", str(out_file),
    ]
    code, _, _ = run_cli(capsys, argv)
    assert code == 3
    assert "feasible=false" in out_file.read_text(encoding="utf-8")


def test_optimize_loyalty_exponent_changes_report(capsys, scenario_file):
    base = run_cli(capsys, ["optimize", "--scenario", scenario_file, "--csv"])[1]
    flat = run_cli(
        capsys,
        ["optimize", "--scenario", scenario_file, "--loyalty-exponent", "2", "--csv"],
    )[1]
    assert base != flat


def test_optimize_dump_config_round_trip(capsys, scenario_file, tmp_path):
    cfg = tmp_path / "effective.json"
    argv = [
        "optimize", "--scenario", scenario_file,
        "--beta", "0.5", "--loyalty-exponent", "2",
        "--dump-config", str(cfg), "--out", str(tmp_path / "r.txt"),
    ]
    assert run_cli(capsys, argv)[0] == 0
    data = json.loads(cfg.read_text(encoding="utf-8"))
    loaded = decision.CsrScenario.from_dict(data)
    want = replace(
        decision.CsrScenario.from_dict(S0_DATA), beta=0.5, loyalty_exponent=2
    )
    assert loaded == want
    assert data["lambda"] == 2
    assert list(data) == sorted(data)


# --- statics ----------------------------------------------------------


def test_statics_m_golden(capsys, scenario_file):
    argv = ["statics", "--scenario", scenario_file, "--param", "M", "--range", "2:5:1"]
    code, out, _ = run_cli(capsys, argv)
    assert code == 0
    assert out == STATICS_M_CSV


def test_statics_beta_blank_at_knife_edge(capsys, scenario_file):
    argv = [
        "statics", "--scenario", scenario_file,
        "--param", "beta", "--range", "0.5:1.5:0.5",
    ]
    code, out, _ = run_cli(capsys, argv)
    assert code == 0
    assert out == STATICS_BETA_CSV


def test_statics_delta_matches_library(capsys, scenario_file):
    argv = [
        "statics", "--scenario", scenario_file,
        "--param", "delta", "--range", "0.1:0.3:0.1",
    ]
    code, out, _ = run_cli(capsys, argv)
    assert code == 0
    scenario = decision.CsrScenario.from_dict(S0_DATA)
    rows = out.splitlines()[1:]
    grid = [0.1 + 0.1 * i for i in range(3)]
    assert len(rows) == 3
    for row, value in zip(rows, grid):
        c_star = decision.stationary_closed_form(replace(scenario, delta=value))
        assert row == "%.12g,%.12g" % (value, c_star)


def test_statics_rejects_fractional_m(capsys, scenario_file):
    argv = ["statics", "--scenario", scenario_file, "--param", "M", "--range", "2:3:0.5"]
    code, _, err = run_cli(capsys, argv)
    assert code == 2
    assert err.startswith("error:")


@pytest.mark.parametrize("bad", ["0:1", "1:0:0.5", "0:1:0", "a:b:c", "0:1:-0.1"])
def test_statics_rejects_bad_range(capsys, scenario_file, bad):
    argv = ["statics", "--scenario", scenario_file, "--param", "beta", "--range", bad]
    code, _, err = run_cli(capsys, argv)
    assert code == 2
    assert err.startswith("error:")


# --- spectrum ---------------------------------------------------------


def test_spectrum_golden(capsys):
    argv = [
        "spectrum", "--n", "2", "--m", "2",
        "--t1", "1", "--t2", "0.5", "--flux-sweep", "0:2:1",
    ]
    code, out, _ = run_cli(capsys, argv)
    assert code == 0
    assert out == SPECTRUM_CSV


def test_spectrum_default_grid_and_filling(capsys, tmp_path):
    first = tmp_path / "one.csv"
    second = tmp_path / "two.csv"
    base = ["spectrum", "--n", "3", "--m", "2", "--t1", "1", "--t2", "0.4"]
    assert run_cli(capsys, base + ["--out", str(first)])[0] == 0
    assert run_cli(capsys, base + ["--electrons", "6", "--out", str(second)])[0] == 0
    # default filling is one electron per rung pair (N*M)
    assert first.read_bytes() == second.read_bytes()
    rows = np.loadtxt(first, delimiter=",", skiprows=1)
    assert rows.shape == (41, 2)
    assert rows[0, 0] == 0.0
    assert rows[-1, 0] == 3.0
    assert rows[0, 1] == pytest.approx(rows[-1, 1], abs=1e-9)  # full flux period


def test_spectrum_rejects_overfilling(capsys):
    argv = ["spectrum", "--n", "2", "--m", "1", "--electrons", "99"]
    code, _, err = run_cli(capsys, argv)
    assert code == 2
    assert err.startswith("error:")


# --- cost -------------------------------------------------------------


def test_cost_golden(capsys, cost_files):
    a, c = cost_files
    argv = [
        "cost", "--contributions", a, "--costs", c,
        "--t1", "2", "--t2", "1", "--delta", "0.5",
    ]
    code, out, _ = run_cli(capsys, argv)
    assert code == 0
    assert out == COST_REPORT


def test_cost_rejects_bad_matrix(capsys, cost_files, tmp_path):
    a, c = cost_files
    bad = tmp_path / "bad.csv"
    bad.write_text("1.5,0.2\n0.1,0.3\n", encoding="utf-8")  # level >= 1
    argv = [
        "cost", "--contributions", str(bad), "--costs", c,
        "--t1", "1", "--t2", "1", "--delta", "0.5",
    ]
    code, _, err = run_cli(capsys, argv)
    assert code == 2
    assert err.startswith("error:")


# --- lattice ----------------------------------------------------------


def test_lattice_csv_matches_library(capsys):
    code, out, _ = run_cli(capsys, ["lattice", "--n", "3", "--m", "2"])
    assert code == 0
    assert out == build_moebius(3, 2).to_csv()
    assert "twist" in out


def test_lattice_cylinder_has_no_twist(capsys):
    argv = ["lattice", "--n", "3", "--m", "2", "--topology", "cylinder"]
    code, out, _ = run_cli(capsys, argv)
    assert code == 0
    assert out == build_cylinder(3, 2).to_csv()
    assert "twist" not in out


def test_lattice_dot_output(capsys):
    argv = ["lattice", "--n", "1", "--m", "1", "--format", "dot"]
    code, out, _ = run_cli(capsys, argv)
    assert code == 0
    assert out == build_moebius(1, 1).to_dot()
    assert out.startswith("graph moebius_N1_M1 {")


def test_lattice_rejects_bad_size(capsys):
    code, _, err = run_cli(capsys, ["lattice", "--n", "0", "--m", "1"])
    assert code == 2
    assert err.startswith("error:")


# --- shared CLI behavior ------------------------------------------------


def test_every_subcommand_is_deterministic(capsys, scenario_file, cost_files, tmp_path):
    a, c = cost_files
    commands = [
        ["lattice", "--n", "2", "--m", "2"],
        ["spectrum", "--n", "2", "--m", "2", "--flux-sweep", "0:2:0.5"],
        ["cost", "--contributions", a, "--costs", c,
         "--t1", "1.5", "--t2", "0.8", "--delta", "0.35"],
        ["optimize", "--scenario", scenario_file, "--csv"],
        ["statics", "--scenario", scenario_file, "--param", "delta",
         "--range", "0.1:0.9:0.2"],
    ]
    for i, argv in enumerate(commands):
        paths = [tmp_path / f"run{i}_{j}.txt" for j in range(2)]
        for path in paths:
            assert run_cli(capsys, argv + ["--out", str(path)])[0] == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()
        assert paths[0].read_bytes().decode("utf-8").endswith("\n")


def test_stdout_matches_file_output(capsys, scenario_file, tmp_path):
    out_file = tmp_path / "report.txt"
    argv = ["optimize", "--scenario", scenario_file]
    _, streamed, _ = run_cli(capsys, argv)
    run_cli(capsys, argv + ["--out", str(out_file)])
    assert streamed == out_file.read_text(encoding="utf-8")


def test_missing_scenario_file_is_io_error(capsys, tmp_path):
    argv = ["optimize", "--scenario", str(tmp_path / "nope.json")]
    code, _, err = run_cli(capsys, argv)
    assert code == 1
    assert err.startswith("io error:")


def test_unwritable_output_is_io_error(capsys, scenario_file, tmp_path):
    argv = [
        "optimize", "--scenario", scenario_file,
        "--out", str(tmp_path / "missing_dir" / "x.txt"),
    ]
    code, _, err = run_cli(capsys, argv)
    assert code == 1
    assert err.startswith("io error:")


def test_unknown_scenario_key_is_domain_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({**S0_DATA, "oops": 1}), encoding="utf-8")
    code, _, err = run_cli(capsys, ["optimize", "--scenario", str(path)])
    assert code == 2
    assert err.startswith("error: unknown scenario keys: oops")


def test_non_object_scenario_is_domain_error(capsys, tmp_path):
    path = tmp_path / "list.json"
    path.write_text("[1, 2]", encoding="utf-8")
    code, _, err = run_cli(capsys, ["optimize", "--scenario", str(path)])
    assert code == 2
    assert err.startswith("error:")


def test_malformed_json_is_domain_error(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    code, _, err = run_cli(capsys, ["optimize", "--scenario", str(path)])
    assert code == 2
    assert err.startswith("error:")


def test_argparse_rejections_exit_2(scenario_file):
    for argv in (
        ["optimize", "--scenario", scenario_file, "--loyalty-exponent", "3"],
        ["statics", "--scenario", scenario_file, "--param", "alpha", "--range", "0:1:1"],
        ["lattice", "--n", "2", "--m", "1", "--nope"],
        [],
    ):
        with pytest.raises(SystemExit) as excinfo:
            cli.main(argv)
        assert excinfo.value.code == 2


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "moebius_csr", "lattice", "--n", "2", "--m", "1"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert result.returncode == 0
    assert result.stdout.startswith("kind,n1,m1,n2,m2")