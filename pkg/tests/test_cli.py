import json
import subprocess
import sys

import pytest

from bcsep import source_binary
from bcsep.cli import main
from bcsep.infotheory import binary_entropy


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_region_json_corner(capsys):
    code, out, _ = run(capsys, "region", "--bsbc", "0.1", "0.1", "--mode", "none")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1
    assert data["corners"][0] == pytest.approx(1 - binary_entropy(0.1), abs=1e-12)
    assert data["meta"]["corner_capacities"][0] == pytest.approx(1 - binary_entropy(0.1), abs=1e-12)


def test_region_csv(capsys):
    code, out, _ = run(capsys, "region", "--bscbec", "0.3", "0.87", "--mode", "c2", "--format", "csv",
                       "--points", "64")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "r1,r2"
    rows = [tuple(map(float, line.split(","))) for line in lines[1:]]
    assert rows[-1][0] == pytest.approx(1 - binary_entropy(0.3), abs=1e-12)
    assert all(b[0] >= a[0] for a, b in zip(rows, rows[1:]))


def test_region_gaussian(capsys):
    code, out, _ = run(capsys, "region", "--gbc", "1", "1", "1", "--mode", "c2")
    assert code == 0
    assert json.loads(out)["corners"] == pytest.approx([0.5, 0.5])


@pytest.mark.parametrize("argv", [
    ["region", "--bsbc", "0.6", "0.1"],
    ["region", "--bsbc", "0.1", "0.2", "--points", "1"],
    ["kappa", "0.5", "0.1", "--bsbc", "0.1", "0.2"],
    ["gaussian", "pstar", "--scalar", "1", "-0.5", "0.5", "--n1", "1", "--n2", "2"],
    ["gaussian", "partitioned", "--scalar", "1", "0.5", "0.5", "--n1", "1", "--n2", "2"],
])
def test_input_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err.startswith("bcsep: error:") and len(err.strip().splitlines()) == 1


def test_psd_error_names_eigenvalue(capsys):
    _, _, err = run(capsys, "gaussian", "pstar", "--scalar", "1", "-0.5", "0.5", "--n1", "1", "--n2", "2")
    assert "-0.5" in err


def test_unknown_flag_rejected():
    with pytest.raises(SystemExit) as exc:
        main(["region", "--bsbc", "0.1", "0.2", "--bogus"])
    assert exc.value.code == 2


def test_kappa_gap_instance(capsys):
    code, out, _ = run(capsys, "kappa", "0.035", "0.095", "--bsbc", "0.15", "0.2")
    data = json.loads(out)
    assert code == 0
    assert data["branch"] == "nontrivial_gap"
    assert data["kappa_star"] > data["kappa_dagger"]


def test_kappa_equal_distortions(capsys):
    _, out, _ = run(capsys, "kappa", "0.1", "0.1", "--bebc", "0.2", "0.5")
    data = json.loads(out)
    assert data["kappa_star"] == pytest.approx(data["kappa_dagger"], abs=1e-9)
    assert data["closed_form_delta"] < 1e-6


def test_gaussian_scalar(capsys):
    _, out, _ = run(capsys, "gaussian", "pstar", "--scalar", "1", "0.5", "0.5", "--kappa", "1",
                    "--n1", "1", "--n2", "2")
    data = json.loads(out)
    assert data["p_star"] == pytest.approx(2.0, abs=1e-9)
    assert set(data) >= {"p_star", "optimizer_sigma_z", "endpoint_values"}
    _, out, _ = run(capsys, "gaussian", "pstar", "--scalar", "1", "1", "1", "--n1", "1", "--n2", "2")
    assert json.loads(out)["p_star"] == 0.0


def test_gaussian_matrix_file(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"sigma_s": [[1.0, 0.0], [0.0, 2.0]], "lambda1": [[1.0]], "lambda2": [[2.0]]}))
    code, out, _ = run(capsys, "gaussian", "partitioned", "--matrix-file", str(path), "--n1", "1", "--n2", "2")
    assert code == 0
    data = json.loads(out)
    assert data["p_star"] == pytest.approx(0.0, abs=1e-9)
    assert "restricted_value" in data
    path.write_text(json.dumps({"sigma_s": [[1.0]]}))
    code, _, err = run(capsys, "gaussian", "rect", "--matrix-file", str(path), "--n1", "1", "--n2", "2")
    assert code == 2 and "theta1" in err


def test_output_is_byte_identical(capsys):
    argv = ["kappa", "0.05", "0.2", "--bscbec", "0.1", "0.4"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


def test_verify_core(capsys):
    code, out, _ = run(capsys, "verify", "core")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert all(c["error"] <= c["tol"] for c in data["checks"])


def test_verify_detects_flipped_slope(capsys, monkeypatch):
    real = source_binary.boundary_slopes
    monkeypatch.setattr(source_binary, "boundary_slopes", lambda d: tuple(-s for s in real(d)))
    code, out, _ = run(capsys, "verify", "binary")
    assert code == 1
    failed = [c["name"] for c in json.loads(out)["checks"] if not c["passed"]]
    assert "slope_formulas" in failed


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "bcsep", "region", "--bebc", "0.2", "0.5", "--points", "4"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["schema"] == 1
    bad = subprocess.run([sys.executable, "-m", "bcsep", "kappa", "0.5", "0.1", "--bsbc", "0.1", "0.2"],
                         capture_output=True, text=True, check=False)
    assert bad.returncode == 2
