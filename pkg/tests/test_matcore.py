import json

import numpy as np
import pytest

from otk.matcore import (
    DEFAULT_TOL,
    MatrixFormatError,
    ToleranceConfig,
    ensure_matrix,
    inner,
    load_matrix,
    matrix_from_json,
    matrix_to_json,
    op_norm,
    op_norm_witness,
    psd_sqrt,
    qform,
    save_matrix,
)


def test_ensure_matrix_accepts_lists_and_casts():
    A = ensure_matrix([[1, 2], [3, 4]])
    assert A.dtype == np.complex128
    assert A.shape == (2, 2)


def test_ensure_matrix_rejects_bad_shapes():
    with pytest.raises(MatrixFormatError):
        ensure_matrix(np.zeros(3))
    with pytest.raises(MatrixFormatError):
        ensure_matrix(np.zeros((0, 2)))
    with pytest.raises(MatrixFormatError):
        ensure_matrix(np.zeros((2, 3)), square=True)


def test_ensure_matrix_rejects_non_finite():
    with pytest.raises(MatrixFormatError):
        ensure_matrix(np.array([[np.nan, 0], [0, 1]]))
    with pytest.raises(MatrixFormatError):
        ensure_matrix(np.array([[1j * np.inf, 0], [0, 1]]))


def test_ensure_matrix_handles_non_contiguous_views():
    # conj().T is a lazy view; the finiteness check must not need contiguity
    A = (np.arange(9).reshape(3, 3) + 1j).conj().T
    out = ensure_matrix(A)
    assert np.array_equal(out, A)


def test_inner_is_linear_in_first_argument():
    u = np.array([1.0 + 1j, 0.0])
    v = np.array([2.0, 1j])
    # <u, v> = v^H u
    assert inner(u, v) == pytest.approx(np.vdot(v, u))
    assert inner(2j * u, v) == pytest.approx(2j * inner(u, v))


def test_qform_matches_definition():
    B = np.array([[1.0, 2.0], [0.0, 1j]])
    x = np.array([1.0, 1j])
    assert qform(B, x) == pytest.approx(x.conj() @ B @ x)


def test_op_norm_and_witness():
    A = np.diag([3.0, 1.0, 2.0]).astype(complex)
    n, v = op_norm_witness(A)
    assert n == pytest.approx(3.0)
    assert np.linalg.norm(A @ v) == pytest.approx(3.0)
    assert op_norm(A) == pytest.approx(3.0)


def test_psd_sqrt_squares_back():
    rng = np.random.default_rng(0)
    B = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    P = B @ B.conj().T
    R = psd_sqrt(P, DEFAULT_TOL)
    assert np.linalg.norm(R @ R - P, 2) < 1e-10 * max(1.0, op_norm(P))
    assert np.linalg.norm(R - R.conj().T, 2) < 1e-12


def test_psd_sqrt_rejects_indefinite():
    with pytest.raises(ValueError):
        psd_sqrt(np.diag([1.0, -0.5]).astype(complex), DEFAULT_TOL)


def test_matrix_json_round_trip():
    rng = np.random.default_rng(1)
    A = rng.normal(size=(3, 5)) + 1j * rng.normal(size=(3, 5))
    B = matrix_from_json(matrix_to_json(A))
    assert np.array_equal(A, B)


def test_matrix_from_json_validates():
    with pytest.raises(MatrixFormatError):
        matrix_from_json({"rows": 2, "cols": 2, "data": [[0, 0]]})
    with pytest.raises(MatrixFormatError):
        matrix_from_json([1, 2, 3])
    with pytest.raises(MatrixFormatError):
        matrix_from_json({"rows": 0, "cols": 1, "data": []})


def test_save_load_matrix(tmp_path):
    A = np.array([[1.5, -2j], [0.25, 1 + 1j]])
    p = tmp_path / "m.json"
    save_matrix(str(p), A)
    assert np.array_equal(load_matrix(str(p)), A)
    # file is valid sorted-key JSON
    obj = json.loads(p.read_text())
    assert list(obj) == sorted(obj)


def test_load_matrix_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(MatrixFormatError):
        load_matrix(str(p))


def test_tolerance_config_validates():
    with pytest.raises(ValueError):
        ToleranceConfig(eig_tol=0.0)
    with pytest.raises(ValueError):
        ToleranceConfig(verdict_tol=1.0)
    t = ToleranceConfig()
    assert t.eig_tol == 1e-10 and t.structural_tol == 1e-8 and t.verdict_tol == 1e-7
