import numpy as np
import pytest

from otk.bjorth import (
    GridOracleConfig,
    approx_grid_oracle,
    bj_grid_oracle,
    epsilon_min,
    is_approx_orthogonal,
    is_bj_orthogonal,
    norm_attainment_basis,
    norm_preserving_extension,
)
from otk.matcore import inner, op_norm
from otk.rand import orthogonal_pair, rng_for


def test_norm_attainment_basis_simple_gap():
    nab = norm_attainment_basis(np.diag([2.0, 1.0]).astype(complex))
    assert nab.norm == pytest.approx(2.0)
    assert nab.dim == 1
    assert abs(nab.basis[0, 0]) == pytest.approx(1.0)
    assert nab.gap > 0


def test_norm_attainment_basis_cluster():
    # doubly attained norm: two-dimensional attainment space
    nab = norm_attainment_basis(np.diag([1.0, 1.0, 0.5]).astype(complex))
    assert nab.dim == 2


def test_norm_attainment_zero_matrix_rejected():
    with pytest.raises(ValueError):
        norm_attainment_basis(np.zeros((2, 2)))


def test_orthogonal_diag_pair():
    T = np.diag([1.0, 0.0]).astype(complex)
    A = np.diag([0.0, 1.0]).astype(complex)
    v = is_bj_orthogonal(T, A)
    assert v.orthogonal.is_true
    assert v.epsilon_min == pytest.approx(0.0, abs=1e-12)
    # witness certificate: x norms T and <Tx, Ax> ~ 0
    x = v.witness
    assert np.linalg.norm(T @ x) == pytest.approx(op_norm(T), abs=1e-9)
    assert abs(v.inner_product_at_witness) <= 1e-9


def test_proportional_pair_maximally_non_orthogonal():
    T = np.eye(2, dtype=complex)
    v = is_bj_orthogonal(T, 2 * T)
    assert v.orthogonal.is_false
    assert v.epsilon_min == pytest.approx(1.0)


def test_hermitian_balance_gives_orthogonality():
    # W of the compression of A^* T on M_T is [-1, 1], so 0 lies inside
    T = np.eye(2, dtype=complex)
    A = np.diag([1.0, -1.0]).astype(complex)
    v = is_bj_orthogonal(T, A)
    assert v.orthogonal.is_true


def test_verdict_method_field():
    v = is_bj_orthogonal(np.eye(2, dtype=complex), np.diag([1.0, -1.0]).astype(complex))
    assert v.method == "compression"
    d = v.to_json_dict()
    assert d["orthogonal"] == "true"
    assert "epsilon_min" in d


def test_epsilon_min_bounds_and_scaling():
    rng = rng_for(11)
    T = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    e = epsilon_min(T, A)
    assert 0.0 <= e <= 1.0
    assert epsilon_min(3j * T, -2 * A) == pytest.approx(e, abs=1e-12)


def test_epsilon_min_rank_one_attainment():
    T = np.diag([1.0, 0.5]).astype(complex)
    A = np.eye(2, dtype=complex)
    # M_T = e1, W(C) = {<Te1, Ae1>} = {1}, scale = 1 * 1
    assert epsilon_min(T, A) == pytest.approx(1.0)


def test_is_approx_orthogonal_band():
    T = np.diag([1.0, 0.5]).astype(complex)
    A = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
    e = epsilon_min(T, A)
    assert is_approx_orthogonal(T, A, min(e + 0.05, 0.999)).is_true
    if e > 0.06:
        assert is_approx_orthogonal(T, A, e - 0.05).is_false


def test_is_approx_orthogonal_validates_eps():
    T = np.eye(2, dtype=complex)
    for bad in (-0.1, 1.0, 1.5):
        with pytest.raises(ValueError):
            is_approx_orthogonal(T, T, bad)


def test_grid_oracle_on_orthogonal_pair():
    rng = rng_for(12)
    T, A = orthogonal_pair(rng, 3)
    min_norm, argmin = bj_grid_oracle(T, A)
    # lambda = 0 is sampled, so the minimum never beats ||T|| on orthogonal pairs
    assert min_norm >= op_norm(T) - 1e-12
    assert min_norm <= op_norm(T) + 1e-12


def test_grid_oracle_finds_deficit():
    T = np.eye(2, dtype=complex)
    A = np.eye(2, dtype=complex)
    min_norm, argmin = bj_grid_oracle(T, A)
    assert min_norm < 0.05  # lambda = -1 kills T + lambda A entirely
    assert abs(argmin + 1.0) < 0.05


def test_approx_grid_oracle_matches_epsilon_min():
    rng = rng_for(13)
    for _ in range(3):
        T = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        assert approx_grid_oracle(T, A) == pytest.approx(epsilon_min(T, A), abs=1e-4)


def test_grid_config_validation():
    with pytest.raises(ValueError):
        GridOracleConfig(coarse_points=64)


def test_norm_preserving_extension():
    T = np.array([[0.5, 0.25], [0.0, 0.5]], dtype=complex)
    Te = norm_preserving_extension(T, 2)
    assert Te.shape == (4, 4)
    assert op_norm(Te) == pytest.approx(op_norm(T))
    assert np.array_equal(Te[:2, :2], T)
    assert np.count_nonzero(Te[2:, :]) == 0 and np.count_nonzero(Te[:, 2:]) == 0


def test_extension_preserves_verdict_and_epsilon():
    rng = rng_for(14)
    T, A = orthogonal_pair(rng, 3)
    v0 = is_bj_orthogonal(T, A)
    v1 = is_bj_orthogonal(norm_preserving_extension(T, 2), norm_preserving_extension(A, 2))
    assert v0.orthogonal is v1.orthogonal
    assert v1.epsilon_min == pytest.approx(v0.epsilon_min, abs=1e-9)
