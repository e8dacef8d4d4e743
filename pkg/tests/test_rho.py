import numpy as np
import pytest

from otk.matcore import op_norm
from otk.numrange import zero_margin
from otk.rand import orthogonal_pair, rng_for
from otk.rho import (
    PermutationSpec,
    kappa_bound,
    nilpotent_rho_example,
    permutation_window,
    rho_orth_transfer_check,
    shift_map_a,
    shift_map_b,
    unitary_from_permutation,
)
from otk.schaffer import schaffer_window, verify_power_dilation


def test_shift_map_a_table():
    # piecewise map with the six listed exceptions, m + 2 elsewhere
    table = {-1: 4, 0: 1, 1: 2, 2: 5, 3: 6, 4: 3}
    for k, v in table.items():
        assert shift_map_a(k) == v
    assert shift_map_a(7) == 9
    assert shift_map_a(-5) == -3


def test_shift_map_b_table():
    table = {-2: 4, -1: 3, 0: 1, 1: 2}
    for k, v in table.items():
        assert shift_map_b(k) == v
    assert shift_map_b(5) == 8
    assert shift_map_b(-7) == -4


def test_permutation_spec_requires_bijection():
    mapping = {i: 0 for i in range(-2, 3)}  # constant map, not injective
    with pytest.raises(ValueError):
        PermutationSpec(2, mapping, "broken")


def test_permutation_window_wraps_bijectively():
    for label in ("f", "g"):
        for window in (8, 16):
            spec = permutation_window(label, window)
            size = 2 * window + 1
            targets = {spec.mapping[i] for i in range(-window, window + 1)}
            assert len(targets) == size
            U = unitary_from_permutation(spec)
            assert np.linalg.norm(U.conj().T @ U - np.eye(size), 2) == 0.0
            assert np.all((U == 0) | (U == 1))


def test_kappa_bound_plane_rotation_values():
    T = np.eye(2, dtype=complex) / np.sqrt(2.0)
    A = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex) / np.sqrt(2.0)
    kb = kappa_bound(T, A, 1.0)
    assert kb.eta0 == pytest.approx(1.0 / np.sqrt(2.0), abs=1e-9)
    assert kb.kappa == pytest.approx(0.5, abs=1e-9)
    assert kb.eta1 == pytest.approx(kb.eta2, abs=1e-12)


def test_kappa_bound_rejects_large_norm():
    with pytest.raises(ValueError, match="rho"):
        kappa_bound(2.0 * np.eye(2, dtype=complex), np.eye(2, dtype=complex), 1.0)


def test_kappa_zero_when_norm_attains_rho():
    # ||T|| = rho makes the sqrt factor vanish regardless of eta
    rng = rng_for(31)
    T, A = orthogonal_pair(rng, 3, unit_norm=True)
    kb = kappa_bound(T, A, 1.0)
    assert kb.kappa == pytest.approx(0.0, abs=1e-6)


def test_nilpotent_example_window_floor():
    with pytest.raises(ValueError, match="window"):
        nilpotent_rho_example(rho=1.0, window=10)


@pytest.mark.parametrize("rho", [1.0, 2.0])
def test_nilpotent_example_bundle(rho):
    bundle = nilpotent_rho_example(rho=rho, window=16)
    rep = bundle.report
    assert rep.passed
    # nilpotent data: T^2 = A^2 = 0, single rho entries
    assert np.count_nonzero(bundle.T) == 1
    assert np.count_nonzero(bundle.A) == 2
    assert np.linalg.norm(bundle.T @ bundle.T) == 0.0
    assert np.linalg.norm(bundle.A @ bundle.A) == 0.0
    assert op_norm(bundle.T) == pytest.approx(rho)
    # A perp T with witness e4, T not perp A
    assert rep.a_orth_t.orthogonal.is_true
    assert rep.t_orth_a.orthogonal.is_false
    assert abs(rep.inner_te1_ae1 - rho * rho) <= 1e-10
    # power dilation residuals for both operators, n <= 4
    for key, val in rep.power_residuals.items():
        assert val <= 1e-10, key
    assert rep.zero_in_product_range
    assert rep.valid_powers_t >= 4 and rep.valid_powers_a >= 4


def test_nilpotent_example_dilation_identity_direct():
    bundle = nilpotent_rho_example(rho=2.0, window=16)
    for win, op in ((bundle.U_T, bundle.T), (bundle.U_A, bundle.A)):
        rep = verify_power_dilation(win, op, n_max=4, tol=1e-10)
        assert rep.passed


def test_first_power_identity_any_unit_vector():
    # ||Tx - rho U x~||^2 = rho^2 - ||Tx||^2 needs no norming of x
    bundle = nilpotent_rho_example(rho=2.0, window=12)
    rng = rng_for(32)
    win, T = bundle.U_T, bundle.T
    for _ in range(5):
        x = rng.normal(size=4) + 1j * rng.normal(size=4)
        x = x / np.linalg.norm(x)
        lhs = np.linalg.norm(win.embed(T @ x) - 2.0 * (win.operator @ win.embed(x))) ** 2
        rhs = 4.0 - np.linalg.norm(T @ x) ** 2
        assert lhs == pytest.approx(rhs, abs=1e-10)


def test_transfer_check_unit_norm_pair():
    rng = rng_for(33)
    T, A = orthogonal_pair(rng, 2, unit_norm=True)
    wT = schaffer_window(T, 8)
    wA = schaffer_window(A, 8)
    rep = rho_orth_transfer_check(T, A, 1.0, wT, wA)
    assert rep.norm_equals_rho
    assert max(rep.eq1_residuals) <= 1e-8
    assert rep.zero_membership.verdict.is_true
    assert rep.window_eps <= 1e-3
    assert rep.eps_within_kappa


def test_transfer_check_strict_contraction_kappa_gap():
    rng = rng_for(34)
    T, A = orthogonal_pair(rng, 2)  # norms strictly below 1
    wT = schaffer_window(T, 8)
    wA = schaffer_window(A, 8)
    rep = rho_orth_transfer_check(T, A, 1.0, wT, wA)
    assert rep.window_eps <= rep.kappa.kappa + 1e-3
    d = rep.to_json_dict()
    assert set(d) >= {"rho", "window_eps", "kappa", "zero_membership"}


def test_transfer_check_rejects_mismatched_windows():
    rng = rng_for(35)
    T, A = orthogonal_pair(rng, 2)
    wT = schaffer_window(T, 8)
    wA = schaffer_window(A, 6)
    with pytest.raises(ValueError):
        rho_orth_transfer_check(T, A, 1.0, wT, wA)


def test_product_window_contains_zero():
    # U_A^* U_T is a permutation unitary with nontrivial cycles
    bundle = nilpotent_rho_example(rho=1.0, window=16)
    B = bundle.U_A.operator.conj().T @ bundle.U_T.operator
    assert np.all((np.abs(B) < 1e-15) | (np.abs(np.abs(B) - 1.0) < 1e-15))
    assert zero_margin(B) >= -1e-9
