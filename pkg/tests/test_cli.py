"""CLI behavior: exit codes, JSON stability, certificates, reports."""

import json
import pathlib

from capelli import TowerCertificate, replay_certificate
from capelli.cli import main

DATA = pathlib.Path(__file__).parent / "data"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- exit codes -----------------------------------------------------------------


def test_exit_code_matrix(capsys):
    cases = [
        (["test", "-p", "2", "--poly", "x^2+x+1", "-d", "3"], 0),
        (["test", "-p", "3", "--poly", "x^2+x+2", "-d", "2"], 0),
        (["test", "-p", "3", "--poly", "x^2+1", "-d", "2"], 1),
        (["test", "-p", "7", "--poly", "x+1", "-d", "5"], 1),
        (["test", "-p", "7", "--poly", "x+1", "-d", "7"], 1),
        (["test", "-p", "5", "--poly", "x^2+1", "-d", "2"], 2),  # reducible input b
        (["test", "-p", "4", "--poly", "x+1", "-d", "2"], 2),  # composite p
        (["test", "-p", "3", "--poly", "5x", "-d", "2"], 2),  # unreduced coefficient
        (["test", "-p", "3", "--poly", "y", "-d", "2"], 2),  # parse error
        (["test", "-p", "3", "-d", "2"], 2),  # no polynomial at all
        (["prob", "-p", "7", "-k", "1", "-d", "3", "--exact"], 0),
        (["prob", "-d", "12", "--bound"], 0),
        (["prob", "-p", "7", "-k", "1", "-d", "3", "--exact", "--bound"], 2),
        (["prob", "-p", "7", "-k", "1", "-d", "3"], 2),  # no mode
        (["prob", "-d", "3", "--exact"], 2),  # exact needs p and k
        (["prob", "-p", "10007", "-k", "1", "-d", "2", "--census"], 2),  # census bound
        (["generate", "-p", "3", "--start", "x^2+1", "--schedule", "2"], 1),
        (["generate", "-p", "5", "--start", "x^2+2", "--schedule", "2,2"], 0),
        (["generate", "-p", "2", "--start", "x+1", "--target-degree", "8"], 1),  # no viable step
        (["generate", "-p", "2", "--start", "x^2+1", "--schedule", "3"], 2),  # reducible start
        (["generate", "-p", "2", "--start", "x^2+x+1", "--schedule", "3", "--paranoid"], 0),
        (["generate", "-p", "2", "--schedule", "3", "--target-degree", "9"], 2),  # both modes
        (["bench", "-p", "2", "--start", "x^2+x+1", "--schedule", "3,2"], 1),  # rejected step
        (["bench", "-p", "2", "--start", "x^2+x+1", "--schedule", "3"], 0),
    ]
    for argv, expected in cases:
        code, _, _ = run_cli(capsys, *argv)
        assert code == expected, (argv, code)


def test_coeffs_input(capsys):
    code, out, _ = run_cli(
        capsys, "test", "-p", "2", "--coeffs", "[1, 1, 1]", "-d", "3", "--json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["input"] == "x^2+x+1"
    assert report["verdict"] == "irreducible"


# --- json reports ---------------------------------------------------------------


def test_json_byte_identical_across_runs(capsys):
    argv = ["test", "-p", "3", "--poly", "x^2+1", "-d", "2", "--oracle", "--json"]
    _, out1, _ = run_cli(capsys, *argv)
    _, out2, _ = run_cli(capsys, *argv)
    assert out1 == out2
    argv = ["prob", "-p", "7", "-k", "1", "-d", "3", "--sample", "400", "--seed", "9", "--json"]
    _, out1, _ = run_cli(capsys, *argv)
    _, out2, _ = run_cli(capsys, *argv)
    assert out1 == out2


def test_json_report_golden(capsys):
    code, out, _ = run_cli(
        capsys, "test", "-p", "3", "--poly", "x^2+1", "-d", "2", "--oracle", "--json"
    )
    assert code == 1
    golden = (DATA / "golden_test_report.json").read_text()
    assert out == golden


def test_json_report_fields(capsys):
    _, out, _ = run_cli(
        capsys, "test", "-p", "7", "--poly", "x^2+x+3", "-d", "4", "--oracle", "--json"
    )
    report = json.loads(out)
    assert list(report) == ["p", "input", "d", "verdict", "reason", "evidence", "tests", "work", "oracle"]
    assert report["oracle"]["agrees"] is True
    # decimal-string discipline
    assert report["p"] == "7" and report["d"] == "4"
    int(report["work"]["criterion_mults"])
    int(report["oracle"]["oracle_mults"])


def test_prob_reports(capsys):
    _, out, _ = run_cli(capsys, "prob", "-p", "7", "-k", "1", "-d", "3", "--exact", "--json")
    r = json.loads(out)
    assert r["value"]["rational"] == "2/3"
    _, out, _ = run_cli(capsys, "prob", "-d", "12", "--bound", "--json")
    assert json.loads(out)["value"]["rational"] == "1/6"
    _, out, _ = run_cli(capsys, "prob", "-p", "7", "-k", "1", "-d", "6", "--census", "--json")
    r = json.loads(out)
    assert (r["census"]["irreducible_count"], r["census"]["total"]) == ("2", "6")
    _, out, _ = run_cli(
        capsys, "prob", "-p", "3", "-k", "1", "-d", "4", "--sample", "200", "--json"
    )
    assert json.loads(out)["sample"]["successes"] == "0"
    _, out, _ = run_cli(
        capsys, "prob", "-p", "5", "-k", "1", "-d", "2", "--census", "--include-zero", "--json"
    )
    r = json.loads(out)
    assert (r["census"]["irreducible_count"], r["census"]["total"]) == ("2", "5")


def test_generate_writes_replayable_certificate(tmp_path, capsys):
    cert_path = tmp_path / "tower.json"
    code, out, _ = run_cli(
        capsys,
        "generate",
        "-p",
        "2",
        "--start",
        "x^2+x+1",
        "--schedule",
        "3,3",
        "--cert-out",
        str(cert_path),
        "--json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["final"]["poly"] == "x^18+x^9+1"
    assert report["final"]["degree"] == "18"
    on_disk = json.loads(cert_path.read_text())
    assert on_disk == report["certificate"]
    cert = TowerCertificate.from_json_dict(on_disk)
    assert replay_certificate(cert)


def test_generate_auto_start(capsys):
    code, out, _ = run_cli(capsys, "generate", "-p", "3", "--target-degree", "16", "--json")
    assert code == 0
    report = json.loads(out)
    assert int(report["final"]["degree"]) >= 16
    cert = TowerCertificate.from_json_dict(report["certificate"])
    assert replay_certificate(cert)


def test_generate_rejected_step_report(capsys):
    code, out, _ = run_cli(
        capsys, "generate", "-p", "3", "--start", "x^2+1", "--schedule", "2", "--json"
    )
    assert code == 1
    report = json.loads(out)
    assert report["error"] == "step-rejected"
    assert report["reason"] == "alpha-is-dprime-power"


def test_bench_partial_table_on_rejection(capsys):
    code, out, _ = run_cli(
        capsys, "bench", "-p", "2", "--start", "x^2+x+1", "--schedule", "3,2,3", "--json"
    )
    assert code == 1
    report = json.loads(out)
    assert report["complete"] is False
    assert len(report["steps"]) == 2  # stopped at the rejected second step
    assert report["steps"][1]["verdict"] == "reducible"


def test_bench_degree_one_ratio_convention(capsys):
    code, out, _ = run_cli(
        capsys, "bench", "-p", "2", "--start", "x^2+x+1", "--schedule", "1,3", "--json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["steps"][0]["d"] == "1"
    assert report["steps"][0]["speedup"] == "1.000"


def test_bench_speedup_present(capsys):
    code, out, _ = run_cli(
        capsys, "bench", "-p", "2", "--start", "x^2+x+1", "--schedule", "3,3", "--json"
    )
    assert code == 0
    report = json.loads(out)
    last = report["steps"][-1]
    assert int(last["criterion_mults"]) < int(last["oracle_mults"])
