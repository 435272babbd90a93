"""Command line interface tests: exit codes, result documents, config
precedence, cache resolution.  Heavy subcommands run with tiny problem
sizes so the suite stays fast."""

import json
import math

import numpy as np
import pytest

from btspec.cli import EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, main

ABS_A1 = 2.3381074104597670


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_airy_json_document(capsys, tmp_path):
    out = tmp_path / "airy.json"
    code = main(["--out", str(out), "airy", "--bc", "D", "--n-report", "2"])
    assert code == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["schema"] == "btspec-result-v1"
    assert doc["command"] == "airy"
    assert doc["config"]["bc"] == "D"
    ev = doc["result"]["eigenvalues"][0]
    assert ev["re"] == pytest.approx(ABS_A1 * math.cos(math.pi / 3), abs=1e-6)
    assert ev["im"] == pytest.approx(ABS_A1 * math.sin(math.pi / 3), abs=1e-6)
    assert doc["result"]["converged"] is True
    assert doc["result"]["scaling_defect"] < 1e-8


def test_airy_usage_errors(capsys):
    code, _, err = run_cli(capsys, "airy", "--j", "-1")
    assert code == EXIT_USAGE
    assert "error:" in err


def test_oscillator(capsys):
    code, out, _ = run_cli(capsys, "oscillator", "--a", "1", "--n-report", "2")
    assert code == EXIT_OK
    doc = json.loads(out)
    ev = doc["result"]["eigenvalues"]
    exact = [math.cos(math.pi / 4), 3 * math.cos(math.pi / 4)]
    assert ev[0]["re"] == pytest.approx(exact[0], abs=1e-4)
    assert ev[1]["im"] == pytest.approx(exact[1], abs=1e-4)


def test_oscillator_rejects_bad_a(capsys):
    code, _, err = run_cli(capsys, "oscillator", "--a", "0")
    assert code == EXIT_USAGE


def test_basis_builds_cache(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "--cache-dir", str(tmp_path), "basis",
                           "--r-outer", "2", "--m-max", "2", "--n-max", "2")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["result"]["mode_count"] == 10  # 3 even m-values x2 + 2 odd x2
    assert list(tmp_path.glob("basis_R2_m2_n2.json"))


def test_cache_env_fallback(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("BTSPEC_CACHE", str(tmp_path / "envcache"))
    code, out, _ = run_cli(capsys, "basis", "--r-outer", "2",
                           "--m-max", "1", "--n-max", "1")
    assert code == EXIT_OK
    assert json.loads(out)["result"]["cache_dir"] == str(tmp_path / "envcache")
    assert list((tmp_path / "envcache").glob("*.json"))


def test_spectrum_small_system(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "--cache-dir", str(tmp_path), "spectrum",
                           "--h", "0.05", "--r-outer", "2",
                           "--m-max", "6", "--n-max", "4")
    assert code == EXIT_OK
    doc = json.loads(out)
    res = doc["result"]
    assert res["m_max"] == 6 and res["n_max"] == 4
    assert len(res["eigenvalues"]) == (7 + 6) * 4  # even + odd sectors
    assert set(res["sectors"]) == {"even", "odd"}
    # eigenvalues arrive sorted by real part
    reals = [z["re"] for z in res["eigenvalues"]]
    assert reals == sorted(reals)


def test_spectrum_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"h": 0.05, "r_outer": 2.0,
                               "m_max": 3, "n_max": 2, "sectors": "even"}))
    code, out, _ = run_cli(capsys, "--config", str(cfg),
                           "--cache-dir", str(tmp_path),
                           "spectrum", "--m-max", "2")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["config"]["m_max"] == 2      # flag wins
    assert doc["config"]["n_max"] == 2      # file wins over default
    assert doc["config"]["sectors"] == "even"
    assert len(doc["result"]["eigenvalues"]) == 3 * 2


def test_spectrum_bad_config(capsys, tmp_path):
    cfg = tmp_path / "broken.json"
    cfg.write_text("{not json")
    code, _, err = run_cli(capsys, "--config", str(cfg), "spectrum",
                           "--m-max", "2", "--n-max", "2")
    assert code == EXIT_USAGE


def test_spectrum_usage_error(capsys):
    code, _, err = run_cli(capsys, "spectrum", "--h", "-0.1")
    assert code == EXIT_USAGE


def test_resolvent_csv(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "--cache-dir", str(tmp_path),
                           "resolvent", "--h", "0.05", "--r-outer", "1.5",
                           "--epsilon", "0.5", "--n-re", "2", "--n-im", "2")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "re_z,im_z,smin,h23_over_smin"
    assert len(lines) == 1 + 4 + 1
    assert lines[-1].startswith("summary_max")
    # smin values are positive numbers
    for line in lines[1:-1]:
        smin = float(line.split(",")[2])
        assert smin > 0


def test_resolvent_epsilon_guard(capsys):
    code, _, err = run_cli(capsys, "resolvent", "--epsilon", "1.5")
    assert code == EXIT_USAGE


def test_margin_scan_guard_rejects_increasing(capsys):
    code, _, err = run_cli(capsys, "margin-scan", "--h-list", "0.004,0.008")
    assert code == EXIT_USAGE


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["frobnicate"])
    assert excinfo.value.code == EXIT_USAGE
