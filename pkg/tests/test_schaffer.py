import numpy as np
import pytest

from otk.bjorth import epsilon_min, is_bj_orthogonal
from otk.matcore import inner, op_norm
from otk.numrange import zero_margin
from otk.rand import orthogonal_pair, random_contraction, random_unitary, rng_for
from otk.schaffer import (
    DilationWindow,
    GeneralizedParams,
    adjoint_trick_pair,
    defect_pair,
    forced_orthogonal_pair,
    generalized_schaffer,
    halmos_block,
    halmos_orth_criterion,
    hat_pair,
    schaffer_window,
    verify_power_dilation,
)

RNG = rng_for(21)
I2 = np.eye(2, dtype=complex)


def test_defect_pair_identities():
    T = random_contraction(RNG, 3)
    D_T, D_Ts = defect_pair(T)
    n = T.shape[0]
    assert np.linalg.norm(D_T @ D_T - (np.eye(n) - T.conj().T @ T), 2) < 1e-12
    assert np.linalg.norm(D_Ts @ D_Ts - (np.eye(n) - T @ T.conj().T), 2) < 1e-12
    # intertwining: T D_T = D_T* T
    assert np.linalg.norm(T @ D_T - D_Ts @ T, 2) < 1e-12


def test_defect_pair_exact_at_unit_norm():
    # the shared-SVD build keeps the intertwine tight even with a unit
    # singular value, where separate Hermitian square roots lose half the digits
    rng = rng_for(22)
    for trial in range(5):
        T, _ = orthogonal_pair(rng, 3, unit_norm=True)
        D_T, D_Ts = defect_pair(T)
        assert np.linalg.norm(T @ D_T - D_Ts @ T, 2) < 1e-13
        hb = halmos_block(T)
        d = T.shape[0]
        assert np.linalg.norm(hb.block.conj().T @ hb.block - np.eye(2 * d), 2) < 1e-12


def test_defect_pair_rejects_expansion():
    with pytest.raises(ValueError):
        defect_pair(2.0 * I2)


def test_halmos_block_unitary_both_signs():
    T = random_contraction(RNG, 2)
    for flipped in (False, True):
        hb = halmos_block(T, sign_flipped=flipped)
        assert np.linalg.norm(hb.block.conj().T @ hb.block - np.eye(4), 2) < 1e-10
        assert np.array_equal(hb.block[2:, :2], T)  # T sits in the lower-left corner


def test_schaffer_window_validation():
    T = 0.5 * I2
    with pytest.raises(ValueError):
        schaffer_window(T, 3)
    with pytest.raises(ValueError):
        schaffer_window(T, 8, rho=2.0)


def test_schaffer_window_unitary_and_powers():
    T = random_contraction(RNG, 3)
    m = 8
    w = schaffer_window(T, m)
    assert w.dim == 3 * m
    assert np.linalg.norm(w.operator.conj().T @ w.operator - np.eye(w.dim), 2) < 1e-12
    rep = verify_power_dilation(w, T, n_max=m - 2, tol=1e-9)
    assert rep.passed
    assert rep.residuals[0] <= 1e-12  # n = 0: P_H I |_H = I


def test_power_compression_matches_directly():
    T = random_contraction(RNG, 2)
    w = schaffer_window(T, 6)
    for n in range(1, 5):
        C = w.power_compression(n)
        assert np.linalg.norm(C - np.linalg.matrix_power(T, n), 2) < 1e-10


def test_verify_rejects_overlong_powers():
    T = 0.5 * I2
    w = schaffer_window(T, 6)
    with pytest.raises(ValueError):
        verify_power_dilation(w, T, n_max=7)


def test_window_json_round_trip():
    T = random_contraction(RNG, 2)
    w = schaffer_window(T, 6)
    w2 = DilationWindow.from_json_dict(w.to_json_dict())
    assert w2.slots == w.slots and w2.home == w.home and w2.slot_dim == w.slot_dim
    assert np.array_equal(w2.operator, w.operator)
    assert w2.rho == w.rho and w2.valid_powers == w.valid_powers
    r1 = verify_power_dilation(w, T, tol=1e-9)
    r2 = verify_power_dilation(w2, T, tol=1e-9)
    assert r1.residuals == r2.residuals


def test_embed_project_adjoint():
    T = random_contraction(RNG, 3)
    w = schaffer_window(T, 6)
    x = RNG.normal(size=3) + 1j * RNG.normal(size=3)
    y = RNG.normal(size=w.dim) + 1j * RNG.normal(size=w.dim)
    assert inner(w.embed(x), y) == pytest.approx(inner(x, w.project(y)), abs=1e-12)


def test_halmos_criterion_opposite_signs():
    lam = 1.0 / np.sqrt(2.0)
    v = halmos_orth_criterion(lam * I2, -lam * I2)
    assert v.orthogonal.is_true
    assert v.method == "halmos-block"
    # the only ray point of W(B) here is 0 itself
    assert v.witness is not None
    val = v.inner_product_at_witness
    assert abs(val) <= 1e-6


def test_halmos_criterion_equal_signs_false():
    lam = 1.0 / np.sqrt(2.0)
    v = halmos_orth_criterion(lam * I2, lam * I2)
    assert v.orthogonal.is_false
    assert v.epsilon_min > 0.1


def test_halmos_scalar_threshold():
    # lam mu < 0: criterion true exactly when lam^2 + mu^2 >= 1
    v = halmos_orth_criterion(0.9 * I2, -0.9 * I2)
    assert v.orthogonal.is_true
    v = halmos_orth_criterion(0.5 * I2, -0.5 * I2)
    assert v.orthogonal.is_false


def test_halmos_epsilon_floor_is_window_epsilon():
    # the criterion's floor equals the windowed epsilon at any window size
    rng = rng_for(23)
    T = random_contraction(rng, 2)
    A = random_contraction(rng, 2)
    v = halmos_orth_criterion(T, A)
    for m in (8, 12):
        wT = schaffer_window(T, m)
        wA = schaffer_window(A, m)
        assert epsilon_min(wT.operator, wA.operator) == pytest.approx(
            v.epsilon_min, abs=1e-8
        )


def test_generalized_schaffer_param_validation():
    T = 0.5 * I2
    with pytest.raises(ValueError):
        generalized_schaffer(T, GeneralizedParams(U1=I2, U2=I2, X_seq=(), Y_seq=()), 8)
    bad = GeneralizedParams(
        U1=2 * I2, U2=I2, X_seq=(I2, I2), Y_seq=(I2,) * 4
    )
    with pytest.raises(ValueError):
        generalized_schaffer(T, bad, 8)


def test_generalized_schaffer_identity_params_recover_window():
    T = random_contraction(RNG, 2)
    m, home = 8, 4
    params = GeneralizedParams(U1=I2, U2=I2, X_seq=(I2, I2), Y_seq=(I2,) * home)
    w = generalized_schaffer(T, params, m)
    w0 = schaffer_window(T, m)
    assert np.linalg.norm(w.operator - w0.operator, 2) < 1e-12


def test_generalized_schaffer_random_params_dilate():
    rng = rng_for(24)
    T = random_contraction(rng, 2)
    m, home = 8, 4
    params = GeneralizedParams(
        U1=random_unitary(rng, 2),
        U2=random_unitary(rng, 2),
        X_seq=tuple(random_unitary(rng, 2) for _ in range(2)),
        Y_seq=tuple(random_unitary(rng, 2) for _ in range(home)),
    )
    w = generalized_schaffer(T, params, m)
    assert verify_power_dilation(w, T, n_max=m - 2, tol=1e-9).passed


def test_forced_pair_orthogonal_even_for_equal_inputs():
    T = random_contraction(RNG, 2)
    wT, wA, h = forced_orthogonal_pair(T, T, 8, k0=1)
    assert abs(inner(wT.operator @ h, wA.operator @ h)) < 1e-14
    assert is_bj_orthogonal(wT.operator, wA.operator).orthogonal.is_true
    assert verify_power_dilation(wT, T, tol=1e-9).passed
    assert verify_power_dilation(wA, T, tol=1e-9).passed


def test_forced_pair_rejects_home_slot():
    T = 0.5 * I2
    with pytest.raises(ValueError):
        forced_orthogonal_pair(T, T, 8, k0=4)


def test_hat_pair_requires_orthogonality():
    with pytest.raises(ValueError, match="perp"):
        hat_pair(0.5 * I2, 0.5 * I2)


def test_hat_pair_on_orthogonal_inputs():
    rng = rng_for(25)
    T, A = orthogonal_pair(rng, 2)
    wT, wA, rep = hat_pair(T, A)
    assert abs(rep.value) <= 1e-7
    assert rep.prediction_residual <= 1e-9
    assert 0.0 <= rep.beta <= 1.0
    assert np.linalg.norm(rep.witness) == pytest.approx(1.0, abs=1e-10)
    # both hat windows are unitary
    for w in (wT, wA):
        assert np.linalg.norm(w.operator.conj().T @ w.operator - np.eye(w.dim), 2) < 1e-10


def test_adjoint_trick_any_pair():
    T = random_contraction(RNG, 3)
    A = random_contraction(RNG, 3)
    wT, wA, h = adjoint_trick_pair(T, A, 7)
    assert abs(inner(wT.operator @ h, wA.operator @ h)) < 1e-14
    assert verify_power_dilation(wT, T, n_max=3, tol=1e-9).passed
    assert verify_power_dilation(wA, A, n_max=3, tol=1e-9).passed


def test_adjoint_trick_window_too_small():
    with pytest.raises(ValueError):
        adjoint_trick_pair(0.5 * I2, 0.5 * I2, 5)


def test_window_orthogonal_to_identity():
    # a shift-slot basis vector maps to a disjoint slot, so <Uh, h> = 0
    T = random_contraction(RNG, 2)
    w = schaffer_window(T, 8)
    h = np.zeros(w.dim, dtype=complex)
    h[2 * w.slot_dim] = 1.0  # slot 2, away from home = 4 and home + 1
    assert inner(w.operator @ h, h) == 0
    assert is_bj_orthogonal(w.operator, np.eye(w.dim, dtype=complex)).orthogonal.is_true


def test_window_pair_margin_symmetry():
    rng = rng_for(26)
    T = random_contraction(rng, 2)
    A = random_contraction(rng, 2)
    wT = schaffer_window(T, 8)
    wA = schaffer_window(A, 8)
    m1 = zero_margin(wA.operator.conj().T @ wT.operator)
    m2 = zero_margin(wT.operator.conj().T @ wA.operator)
    assert m1 == pytest.approx(m2, abs=1e-9)
