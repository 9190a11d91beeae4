import json
import math

import pytest

from capax.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_g_command(capsys):
    code, out, _ = run_cli(capsys, "g", "--p", "1/5")
    assert code == 0
    data = json.loads(out)
    assert data["gExact"] == "64/63"
    assert data["g"] == pytest.approx(64 / 63, rel=1e-12)


def test_threshold_command(capsys):
    code, out, _ = run_cli(capsys, "threshold")
    assert code == 0
    data = json.loads(out)
    assert data["kStarLeqKnown"] is True
    assert data["knownSufficientK"] == 62460059
    assert data["kStar"] <= data["knownSufficientK"]


def test_capacity_ellipsoid(capsys):
    code, out, _ = run_cli(capsys, "capacity", "--ellipsoid", "1,5",
                           "--kmax", "6")
    assert code == 0
    data = json.loads(out)
    assert data["capacities"] == [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 5.0]
    assert data["truncationBound"] == 0.0


def test_capacity_pball_reports_truncation(capsys):
    code, out, _ = run_cli(capsys, "capacity", "--pball", "1/2",
                           "--kmax", "4", "--budget", "80")
    assert code == 0
    data = json.loads(out)
    assert data["capacities"][1] == pytest.approx(0.5, abs=1e-10)
    assert data["truncationBound"] > 0


def test_weights_command(capsys):
    code, out, _ = run_cli(capsys, "weights", "--ellipsoid", "1,2",
                           "--max-count", "10")
    assert code == 0
    data = json.loads(out)
    assert data["weights"] == [1.0, 1.0]
    assert data["complete"] is True


def test_dc_bound_command(capsys):
    code, out, _ = run_cli(capsys, "dc-bound", "--p", "1/62460059")
    assert code == 0
    data = json.loads(out)
    assert data["notSymplecticallyConvex"] is True
    assert data["lowerBound"] > math.log(2)


def test_linearized_command(capsys):
    code, out, _ = run_cli(capsys, "linearized", "--p", "1/3")
    assert code == 0
    data = json.loads(out)
    assert data["dcUpperBound"] == pytest.approx(0.5 * math.log(3.0))


def test_construct_strangulation(capsys):
    code, out, _ = run_cli(capsys, "construct", "strangulation",
                           "--delta", "1/1000")
    assert code == 0
    data = json.loads(out)
    assert data["truncation"]["beta"] == 250.0
    assert data["truncation"]["affineImageVerified"] is True
    assert data["innerBallFitsLobe"] is True


def test_construct_strain(capsys):
    code, out, _ = run_cli(capsys, "construct", "strain", "--k", "99")
    assert code == 0
    data = json.loads(out)
    assert data["area"] == [9999, 2]
    assert data["weights"]["weights"][0] == 99.0


def test_construct_packing(capsys):
    code, out, _ = run_cli(capsys, "construct", "packing")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 199


def test_john_command(tmp_path, capsys):
    polytope = {"normals": [[1, 0, 0, 0], [-1, 0, 0, 0], [0, 1, 0, 0],
                            [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, -1, 0],
                            [0, 0, 0, 1], [0, 0, 0, -1]],
                "offsets": [1] * 8}
    path = tmp_path / "cube.json"
    path.write_text(json.dumps(polytope))
    code, out, _ = run_cli(capsys, "john", "--polytope", str(path))
    assert code == 0
    data = json.loads(out)
    assert data["certificate"]["dcUpperBound"] <= math.log(2) + 1e-5


def test_sweep_csv_and_idempotence(capsys):
    args = ("sweep", "--p-list", "1/6,1/100", "--format", "csv",
            "--threads", "2")
    code, first, _ = run_cli(capsys, *args)
    assert code == 0
    lines = first.strip().splitlines()
    assert lines[0].startswith("p,logG,conditionRatioLog")
    assert len(lines) == 3
    code, second, _ = run_cli(capsys, *args)
    assert first == second  # byte-identical reports


def test_json_report_idempotence(capsys):
    code, first, _ = run_cli(capsys, "g", "--p", "1/7")
    code, second, _ = run_cli(capsys, "g", "--p", "1/7")
    assert first == second


def test_sweep_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("CAPAX_THREADS", "1")
    code, out, _ = run_cli(capsys, "sweep", "--p-list", "1/6,1/8")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [row["p"] for row in rows] == ["1/6", "1/8"]  # input order kept


def test_region_file_roundtrip(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "construct", "strain", "--k", "99")
    region_data = json.loads(out)["region"]
    path = tmp_path / "strain.json"
    path.write_text(json.dumps(region_data))
    code, out, _ = run_cli(capsys, "weights", "--region", str(path),
                           "--max-count", "250")
    assert code == 0
    data = json.loads(out)
    assert data["weights"][0] == 99.0
    assert len(data["weights"]) == 199


def test_contract_error_exit_code(capsys):
    code, out, err = run_cli(capsys, "dc-bound", "--p", "1/4")
    assert code == 2
    assert out == ""
    assert json.loads(err)["error"] == "ContractError"


def test_missing_file_exit_code(capsys):
    code, _, err = run_cli(capsys, "john", "--polytope", "/nonexistent.json")
    assert code == 2


def test_unknown_option_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["g", "--p", "1/5", "--bogus", "1"])


def test_verify_all_subset(capsys):
    code, out, _ = run_cli(capsys, "verify-all", "--only", "1,4")
    assert code == 0
    assert "criterion  1" in out and "criterion  4" in out


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "g", "--p", "1/5", "--output", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["gExact"] == "64/63"
