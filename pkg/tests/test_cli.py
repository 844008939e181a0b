import json

import numpy as np
import pytest

from eplab.cli import main
from eplab.matio import read_matrix, write_matrix
from eplab.zoo import haar_unitary


@pytest.fixture()
def diag120(tmp_path):
    path = tmp_path / "d120.mtx"
    write_matrix(path, np.diag([1.0, 2.0, 0.0]).astype(complex))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_fixture(capsys, diag120):
    code, out, _ = run(capsys, "classify", diag120)
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "classification"
    assert doc["report"]["is_ep"] is True
    assert doc["report"]["rank"] == 2


def test_classify_rectangular_exits_2(capsys, tmp_path):
    path = tmp_path / "rect.mtx"
    write_matrix(path, np.ones((2, 3), dtype=complex))
    code, _, err = run(capsys, "classify", str(path))
    assert code == 2
    assert "NotSquare" in err


def test_classify_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "classify", "/nonexistent/matrix.mtx")
    assert code == 2 and err


def test_classify_tolerance_contrast(capsys, tmp_path):
    # near-EP matrix: adjoint range tilted by 1e-5, rank kept clean
    rng = np.random.default_rng(0)
    n, r, eps = 5, 3, 1e-5
    u = haar_unitary(n, rng)[:, :r]
    w = rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))
    v, _ = np.linalg.qr(u + eps * w)
    path = tmp_path / "near_ep.mtx"
    write_matrix(path, u @ v.conj().T)

    code, out, _ = run(capsys, "classify", str(path))
    assert code == 0 and json.loads(out)["report"]["is_ep"] is False
    code, out, _ = run(capsys, "classify", str(path), "--tol-subspace", "1e-3")
    assert code == 0 and json.loads(out)["report"]["is_ep"] is True


def test_classify_env_var_default(capsys, tmp_path, monkeypatch):
    rng = np.random.default_rng(0)
    n, r, eps = 5, 3, 1e-5
    u = haar_unitary(n, rng)[:, :r]
    w = rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))
    v, _ = np.linalg.qr(u + eps * w)
    path = tmp_path / "near_ep.mtx"
    write_matrix(path, u @ v.conj().T)

    monkeypatch.setenv("EPLAB_TOL_SUBSPACE", "1e-3")
    code, out, _ = run(capsys, "classify", str(path))
    assert json.loads(out)["report"]["is_ep"] is True
    # explicit flag wins over the environment
    code, out, _ = run(capsys, "classify", str(path), "--tol-subspace", "1e-8")
    assert json.loads(out)["report"]["is_ep"] is False


def test_pinv_writes_matrix_and_report(capsys, diag120, tmp_path):
    out_path = tmp_path / "dagger.mtx"
    code, out, _ = run(capsys, "pinv", diag120, "--out", str(out_path))
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "penrose" and doc["report"]["passed"] is True
    np.testing.assert_allclose(read_matrix(out_path), np.diag([1.0, 0.5, 0.0]),
                               atol=1e-14)


def test_douglas_command(capsys, tmp_path):
    rng = np.random.default_rng(1)
    b = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
    a = b @ (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    a_path, b_path = tmp_path / "a.mtx", tmp_path / "b.mtx"
    write_matrix(a_path, a)
    write_matrix(b_path, b)
    code, out, _ = run(capsys, "douglas", str(a_path), str(b_path))
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["range_included"] is True
    assert doc["report"]["residual_bc_a"] < 1e-9


def test_douglas_not_included_still_exits_0(capsys, tmp_path):
    a_path, b_path = tmp_path / "a.mtx", tmp_path / "b.mtx"
    write_matrix(a_path, np.diag([0.0, 1.0]).astype(complex))
    write_matrix(b_path, np.diag([1.0, 0.0]).astype(complex))
    code, out, _ = run(capsys, "douglas", str(a_path), str(b_path))
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["range_included"] is False
    assert doc["report"]["factor_c"] is None


def test_perturb_command(capsys, tmp_path):
    a_path, b_path = tmp_path / "a.mtx", tmp_path / "b.mtx"
    write_matrix(a_path, np.diag([2.0, 2.0, 0.0]).astype(complex))
    write_matrix(b_path, np.diag([0.5, 0.0, 0.0]).astype(complex))
    code, out, _ = run(capsys, "perturb", str(a_path), str(b_path))
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["hypotheses_pass"] is True
    assert doc["report"]["concl_ep"] is True


def test_perturb_non_ep_base_exits_2(capsys, tmp_path):
    a_path, b_path = tmp_path / "a.mtx", tmp_path / "b.mtx"
    write_matrix(a_path, np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))
    write_matrix(b_path, np.zeros((2, 2), dtype=complex))
    code, _, err = run(capsys, "perturb", str(a_path), str(b_path))
    assert code == 2 and "SourceNotEP" in err


def test_zoo_command(capsys, tmp_path):
    out_path = tmp_path / "h4.mtx"
    code, out, _ = run(capsys, "zoo", '{"family":"DiagHarmonic","n":4}',
                       "--out", str(out_path))
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["expected"]["ep"] == "Yes"
    matrix = read_matrix(out_path)
    np.testing.assert_array_equal(matrix, np.diag([1, 2, 3, 4]).astype(complex))


def test_zoo_bad_spec_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "zoo", '{"family":"NoSuchFamily","n":4}',
                       "--out", str(tmp_path / "x.mtx"))
    assert code == 2 and "BadSpec" in err


def test_sweep_rows(capsys):
    code, out, _ = run(capsys, "sweep", "DiagAlternating", "--sizes", "3,5,7")
    assert code == 0
    assert out.splitlines() == ["n,gamma,rank", "3,0.3333333333,3",
                                "5,0.2,5", "7,0.1428571429,7"]


def test_sweep_to_file(capsys, tmp_path):
    out_path = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, "sweep", "DiagHarmonic", "--sizes", "2,4",
                       "--out", str(out_path))
    assert code == 0 and out == ""
    assert out_path.read_text().splitlines() == ["n,gamma,rank", "2,1,2", "4,1,4"]


def test_propsuite_clean(capsys):
    code, out, _ = run(capsys, "propsuite", "--seed", "42", "--count", "100")
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["disagreement_count"] == 0
    assert doc["report"]["checks_run"]["seven_way"] == 100


def test_propsuite_count_zero_is_usage_error(capsys):
    code, _, err = run(capsys, "propsuite", "--count", "0")
    assert code == 64 and "usage error" in err


def test_propsuite_overtight_tolerance_fails_loud(capsys):
    code, out, _ = run(capsys, "propsuite", "--seed", "42", "--count", "20",
                       "--tol-subspace", "1e-30")
    assert code == 1
    doc = json.loads(out)
    assert doc["report"]["disagreement_count"] > 0
    first = doc["report"]["disagreements"][0]
    # counterexamples carry the offending matrix verbatim
    assert "matrix" in first and first["matrix"]["rows"] >= 1
    assert "residual" in first["detail"] or "exceeds" in first["detail"]


def test_reports_byte_identical_across_runs(capsys, diag120):
    code1, out1, _ = run(capsys, "classify", diag120)
    code2, out2, _ = run(capsys, "classify", diag120)
    assert code1 == code2 == 0 and out1 == out2
