"""Acceptance gate: ten timed checks pinning the package's headline results.

Each test prints one "criterion NN: PASS" line with its elapsed time.  The
seeded suites reuse the property checkers so a failure here dumps the same
diagnostics a property-run would.
"""

import math
import time

import numpy as np
import pytest

from otk.ando import ando_pair, brehmer_check, regular_orth_predicate
from otk.bjorth import epsilon_min, is_bj_orthogonal
from otk.catalog import (
    commuting_negation_inputs,
    example_pair_plane_rotation,
    regular_diag_pair,
    scalar_pair,
)
from otk.numrange import nr_boundary
from otk.properties import (
    check_approx_oracle_agreement,
    check_bundle_residuals,
    check_criterion_agreement,
    check_defect_lemma,
    check_defect_power_orthogonality,
    check_even_power_transfer,
    check_extension_transfer,
    check_forced_pairs,
    check_generalized_params,
    check_grid_oracle_agreement,
    check_hat_pairs,
    check_mnr_containment,
    check_odd_power_transfer,
    check_selfadjoint_power_norms,
    check_st_implication,
    check_unit_norm_transfer,
)
from otk.rho import kappa_bound, nilpotent_rho_example
from otk.schaffer import halmos_block, halmos_orth_criterion, hat_pair

SEED = 7


def _done(n: int, t0: float, budget: float, detail: str) -> None:
    elapsed = time.monotonic() - t0
    assert elapsed < budget, f"criterion {n} took {elapsed:.2f}s, budget {budget}s"
    print(f"criterion {n:02d}: PASS ({elapsed:.2f}s) {detail}")


def _ok(res) -> None:
    assert res.passed, f"{res.name}: {res.failures[:3]}"


def test_criterion_01_plane_rotation_pair():
    t0 = time.monotonic()
    T, A = example_pair_plane_rotation()
    assert is_bj_orthogonal(T, A).orthogonal.is_true
    assert halmos_orth_criterion(T, A).orthogonal.is_false
    TU = halmos_block(T).block
    AU = halmos_block(A).block
    poly = nr_boundary(AU.conj().T @ TU)
    assert float(np.min(poly.vertices.real)) >= 0.5 - 1e-6
    assert epsilon_min(TU, AU) == pytest.approx(0.5, abs=1e-4)
    kb = kappa_bound(T, A, 1.0)
    assert kb.kappa == pytest.approx(0.5, abs=1e-9)
    assert kb.eta0 == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-9)
    _done(1, t0, 1.0, "orthogonal pair, non-orthogonal blocks, eps 1/2, kappa 1/2")


def test_criterion_02_opposite_sign_scalars():
    t0 = time.monotonic()
    lam = 1.0 / math.sqrt(2.0)
    v = halmos_orth_criterion(*scalar_pair(lam, -lam))
    assert v.orthogonal.is_true
    # the only reachable ray point of W(A_U^* T_U) is 0, so the witness
    # quadratic form vanishes there
    assert abs(v.inner_product_at_witness) <= 1e-6
    assert halmos_orth_criterion(*scalar_pair(lam, lam)).orthogonal.is_false
    _done(2, t0, 1.0, "opposite signs true with zero witness, equal signs false")


@pytest.mark.xfail(
    strict=True,
    reason="with positive-root defect blocks, W(A_U^* T_U) for lam = -mu = "
    "1/sqrt(2) is the segment i[-1,1]; no unit vector realizes real part "
    "2*lam*mu = -1, the witness value is 0",
)
def test_criterion_02_literal_witness_value():
    lam = 1.0 / math.sqrt(2.0)
    v = halmos_orth_criterion(*scalar_pair(lam, -lam))
    assert v.orthogonal.is_true
    assert v.inner_product_at_witness.real == pytest.approx(-1.0, abs=1e-6)


def test_criterion_03_nilpotent_converse_example():
    t0 = time.monotonic()
    for rho in (1.0, 2.0):
        rep = nilpotent_rho_example(rho, 16).report
        assert set(rep.power_residuals) == {f"{x}^{n}" for x in "TA" for n in range(1, 5)}
        assert all(r <= 1e-10 for r in rep.power_residuals.values())
        assert rep.a_orth_t.orthogonal.is_true
        w = np.asarray(rep.a_orth_t.witness)
        assert abs(w[3]) == pytest.approx(1.0, abs=1e-8)
        assert rep.t_orth_a.orthogonal.is_false
        assert rep.inner_te1_ae1 == pytest.approx(rho**2, abs=1e-10)
        assert rep.zero_in_product_range.verdict.is_true
    _done(3, t0, 5.0, "one-sided orthogonality at rho in {1, 2}, window 16")


def test_criterion_04_regular_diag_example():
    t0 = time.monotonic()
    D1, D2 = regular_diag_pair()
    rep = brehmer_check(D1, D2)
    r12 = rep.residual_matrices[2]
    eigs = np.sort(np.linalg.eigvalsh(0.5 * (r12 + r12.conj().T)))
    assert eigs[0] == pytest.approx(0.0, abs=1e-10)
    assert eigs[1] == pytest.approx(0.75, abs=1e-10)
    reg = regular_orth_predicate(D1, D2)
    assert reg.brehmer.passes
    assert reg.classical_zero.is_true
    w = np.asarray(reg.classical_witness)
    assert abs(w[1]) == pytest.approx(1.0, abs=1e-8)
    assert reg.bj.orthogonal.is_false
    assert reg.predicate
    _done(4, t0, 1.0, "residual eigs {0, 3/4}, predicate true, BJ false")


def test_criterion_05_criterion_agreement_suite():
    t0 = time.monotonic()
    res = check_criterion_agreement(200, SEED, dims=(2, 3, 4))
    _ok(res)
    assert res.extra["undecided"] < 10
    _done(5, t0, 120.0, f"200 pairs, {res.extra['undecided']} undecided, full agreement")


def test_criterion_06_unit_norm_transfer_suite():
    t0 = time.monotonic()
    _ok(check_unit_norm_transfer(100, SEED))
    _done(6, t0, 60.0, "100 unit-norm orthogonal pairs transfer")


def test_criterion_07_power_and_extension_suites():
    t0 = time.monotonic()
    _ok(check_extension_transfer(50, SEED))
    _ok(check_selfadjoint_power_norms(50, SEED))
    _ok(check_odd_power_transfer(50, SEED))
    _ok(check_even_power_transfer(50, SEED))
    _ok(check_defect_power_orthogonality(50, SEED))
    _done(7, t0, 60.0, "extension, power-norm, and power-transfer suites at 50 trials")


def test_criterion_08_window_construction_suites():
    t0 = time.monotonic()
    _ok(check_generalized_params(50, SEED))
    _ok(check_forced_pairs(50, SEED))
    _ok(check_hat_pairs(20, SEED))
    T, A = example_pair_plane_rotation()
    assert halmos_orth_criterion(T, A).orthogonal.is_false
    _, _, hrep = hat_pair(T, A)
    assert abs(hrep.value) <= 1e-7
    _done(8, t0, 120.0, "generalized/forced/hat constructions, hat beats plain blocks")


def test_criterion_09_commuting_dilation_suites():
    t0 = time.monotonic()
    _ok(check_bundle_residuals(20, SEED))
    T, S = commuting_negation_inputs()
    bundle = ando_pair(T, S, 13)
    assert bundle.passed
    assert bundle.witness is not None
    assert bundle.witness.zero_residual <= 1e-7
    assert is_bj_orthogonal(T, -T).orthogonal.is_false
    assert is_bj_orthogonal(-T, T).orthogonal.is_false
    _ok(check_defect_lemma(50, SEED))
    _ok(check_st_implication(50, SEED))
    _done(9, t0, 120.0, "commuting bundles, negated pair witness, defect lemma")


def test_criterion_10_oracle_cross_checks():
    t0 = time.monotonic()
    _ok(check_grid_oracle_agreement(100, SEED))
    res = check_approx_oracle_agreement(100, SEED)
    _ok(res)
    assert res.extra["worst_gap"] <= 1e-4
    _ok(check_mnr_containment(50, SEED))
    _done(10, t0, 180.0, "grid, approx, and sampling oracles agree")
