import csv
import json
import math

import pytest

from pulsestab.cli import main

FAST = ["--grid-n", "512"]


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_wave_command_json(capsys):
    code, out, err = run_cli(
        capsys, "wave", "--a", "-1", "--b", "1", "--c", "-1", "--eta0", "-1.5"
    )
    assert code == 0
    document = json.loads(out)
    assert document["schema_version"] == 1
    result = document["result"]
    assert result["w"] == pytest.approx(0.0, abs=1e-15)
    assert result["lam"] == pytest.approx(0.5)
    assert result["B"] == pytest.approx(1.41421356, rel=1e-8)
    assert result["residual_r1"] < 1e-9
    assert result["residual_r2"] < 1e-9


def test_wave_reports_are_reproducible(capsys):
    argv = ["wave", "--a", "-1", "--b", "1", "--c", "-1", "--eta0", "-1.0", *FAST]
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)

    def strip(text):
        return [line for line in text.splitlines() if "generated_at" not in line]

    assert strip(first) == strip(second)


def test_spectrum_command(capsys):
    code, out, _ = run_cli(
        capsys, "spectrum", "--a", "-1", "--b", "1", "--c", "-1", "--eta0", "-1", *FAST
    )
    assert code == 0
    result = json.loads(out)["result"]
    assert result["negative_count"] == 1
    assert result["zero_modes"] == 1
    assert result["ess_spectrum_gap"] == pytest.approx(1 - 1 / math.sqrt(6), rel=1e-9)
    assert len(result["eigenvalues"]) == 1024


def test_jl_spectrum_command(capsys):
    code, out, _ = run_cli(
        capsys, "jl-spectrum", "--a", "-1", "--b", "1", "--c", "-1", "--eta0", "-1", *FAST
    )
    assert code == 0
    result = json.loads(out)["result"]
    assert result["max_real_part"] < 1e-6
    assert result["n_unstable"] == 0
    assert result["symmetry_defect"] < 1e-6


def test_index_command_stable(capsys):
    code, out, _ = run_cli(
        capsys, "index", "--a", "-1", "--b", "1", "--c", "-1", "--eta0", "-1", *FAST
    )
    assert code == 0
    result = json.loads(out)["result"]
    assert result["verdict"]["verdict"] == "stable"
    assert result["index_report"]["method"] == "closed_form"
    assert result["index_report"]["index_value"] == pytest.approx(-432 / 35, rel=1e-12)
    assert result["verdict"]["parity_rhs"] == 0


def test_index_command_standing_branch(capsys):
    code, out, _ = run_cli(
        capsys, "index", "--a", "-1", "--b", "1", "--c", "-1", "--eta0", "-1.5", *FAST
    )
    assert code == 0
    report = json.loads(out)["result"]["index_report"]
    assert report["kdv_part"] == pytest.approx(-7.2, rel=1e-6)
    assert report["hill_part"] == pytest.approx(3.6, rel=1e-6)
    assert report["lower_bound_3I"] == pytest.approx(-54.0)
    assert report["upper_bound_3I"] == pytest.approx(-54.0)


def test_index_command_inconclusive_exit_code(capsys):
    code, out, _ = run_cli(
        capsys,
        "index", "--a", "-1", "--b", "1", "--c", "-1", "--eta0", "-1",
        "--index-tol", "1e6", *FAST,
    )
    assert code == 4
    assert json.loads(out)["result"]["verdict"]["verdict"] == "inconclusive"


def test_domain_error_exit_code(capsys):
    code, out, err = run_cli(
        capsys, "wave", "--a", "-1", "--b", "1", "--c", "-1", "--eta0", "-3", *FAST
    )
    assert code == 2
    assert "error" in err
    assert out == ""


def test_threshold_command(capsys):
    code, out, _ = run_cli(
        capsys,
        "threshold", "--zmin", "9.0", "--zmax", "11.0", "--tol", "1e-3",
        "--grid-n", "384", "--grid-len", "100",
    )
    assert code == 0
    result = json.loads(out)["result"]
    stable_edge = (107.0 + 9.0 * math.sqrt(237.0)) / 26.0
    unstable_edge = (517.0 + 9.0 * math.sqrt(5385.0)) / 112.0
    assert stable_edge < result["z_star"] < unstable_edge
    assert result["bracket_hi"] - result["bracket_lo"] < 1e-3


def test_threshold_no_sign_change_is_domain_error(capsys):
    code, _, err = run_cli(
        capsys,
        "threshold", "--zmin", "0.5", "--zmax", "2.0",
        "--grid-n", "384", "--grid-len", "100",
    )
    assert code == 2
    assert "same sign" in err


def test_scan_eta0_all_stable(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("WORKBENCH_THREADS", "2")
    out_path = tmp_path / "scan.csv"
    code, _, _ = run_cli(
        capsys,
        "scan", "--param", "eta0", "--from", "-2.2", "--to", "-0.1", "--steps", "22",
        "--a", "-1", "--b", "1", "--c", "-1",
        "--grid-n", "512", "--output", str(out_path),
    )
    assert code == 0
    with out_path.open() as handle:
        rows = list(csv.DictReader(handle))
    assert len(rows) == 22
    assert set(r["verdict"] for r in rows) == {"stable"}
    header = rows[0].keys()
    assert list(header) == [
        "eta0", "w", "n_tilde_L", "index_value",
        "lower_bound", "upper_bound", "max_real_JL", "verdict",
    ]
    assert all(float(r["index_value"]) < 0 for r in rows)
    assert all(r["lower_bound"] == "" for r in rows)  # bounds are z-scan only


def test_scan_z_mixed_verdicts(capsys):
    code, out, _ = run_cli(
        capsys,
        "scan", "--param", "z", "--from", "4", "--to", "13", "--steps", "4",
        "--grid-n", "512", "--grid-len", "100",
    )
    assert code == 0
    rows = list(csv.DictReader(out.splitlines()))
    verdicts = [r["verdict"] for r in rows]
    assert verdicts[0] == "stable"
    assert verdicts[-1] == "unstable"
    assert all(r["lower_bound"] != "" for r in rows)
    assert float(rows[0]["lower_bound"]) < 3 * float(rows[0]["index_value"]) <= float(
        rows[0]["upper_bound"]
    ) + 1e-6


def test_scan_missing_arguments(capsys):
    code, _, err = run_cli(capsys, "scan", "--param", "z", "--grid-n", "256")
    assert code == 2
    assert "scan requires" in err


def test_format_mismatch_rejected(capsys):
    code, _, err = run_cli(
        capsys, "wave", "--a", "-1", "--b", "1", "--c", "-1", "--eta0", "-1.5",
        "--format", "csv",
    )
    assert code == 2
    assert "emits json" in err


def test_config_file_precedence(capsys, tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text(
        "a = -1\nb = 1\nc = -1\neta0 = -1.5\ngrid_n = 256\n# comment line\n"
    )
    code, out, _ = run_cli(capsys, "wave", "--config", str(config))
    assert code == 0
    assert json.loads(out)["result"]["eta0"] == -1.5
    # flags win over the file
    code, out, _ = run_cli(capsys, "wave", "--config", str(config), "--eta0", "-1.0")
    assert code == 0
    assert json.loads(out)["result"]["eta0"] == -1.0


def test_bad_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("WORKBENCH_THREADS", "many")
    code, _, err = run_cli(
        capsys,
        "scan", "--param", "z", "--from", "1", "--to", "2", "--steps", "2",
        "--grid-n", "512", "--grid-len", "100",
    )
    assert code == 2
    assert "WORKBENCH_THREADS" in err


def test_output_file_written(capsys, tmp_path):
    out_path = tmp_path / "wave.json"
    code, out, _ = run_cli(
        capsys,
        "wave", "--a", "-1", "--b", "1", "--c", "-1", "--eta0", "-1.5",
        "--output", str(out_path), *FAST,
    )
    assert code == 0
    assert out == ""
    assert json.loads(out_path.read_text())["result"]["lam"] == pytest.approx(0.5)