"""Named example pairs and scripted end-to-end reproductions.

Each scenario builds its inputs from scratch, runs the relevant checks,
and returns a JSON-ready report dict with a top-level "passed" flag and
one entry per sub-check.  The scenarios are deterministic: they embed
their matrices instead of reading files, so they double as regression
tests for the package.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .ando import ando_pair, regular_orth_predicate, schaffer_ST_criterion
from .bjorth import epsilon_min, is_approx_orthogonal, is_bj_orthogonal
from .matcore import inner
from .numrange import nr_boundary
from .rho import kappa_bound, nilpotent_rho_example
from .schaffer import (
    adjoint_trick_pair,
    halmos_block,
    halmos_orth_criterion,
    schaffer_window,
    verify_power_dilation,
)

__all__ = [
    "example_pair_plane_rotation",
    "scalar_pair",
    "regular_diag_pair",
    "commuting_negation_inputs",
    "adjoint_trick_inputs",
    "identity_orth_input",
    "SCENARIOS",
    "reproduce_scenario",
    "scenario_ids",
]

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def example_pair_plane_rotation() -> tuple[np.ndarray, np.ndarray]:
    """Scaled identity against a scaled plane rotation: orthogonal pair whose
    plain shift dilations are provably never orthogonal."""
    T = _INV_SQRT2 * np.eye(2, dtype=np.complex128)
    A = _INV_SQRT2 * np.array([[0.0, -1.0], [1.0, 0.0]], dtype=np.complex128)
    return T, A


def scalar_pair(lam: float, mu: float) -> tuple[np.ndarray, np.ndarray]:
    """Two real scalar contractions on C^2."""
    T = lam * np.eye(2, dtype=np.complex128)
    A = mu * np.eye(2, dtype=np.complex128)
    return T, A


def regular_diag_pair() -> tuple[np.ndarray, np.ndarray]:
    """diag(1, 0) and diag(1, 1/2): Brehmer-positive, 0 in W(T2^*T1), yet
    T1 is not BJ-orthogonal to T2."""
    T1 = np.diag([1.0, 0.0]).astype(np.complex128)
    T2 = np.diag([1.0, 0.5]).astype(np.complex128)
    return T1, T2


def commuting_negation_inputs() -> tuple[np.ndarray, np.ndarray]:
    """A diagonal contraction with S = -I: W(S) = {-1} forces beta = -1."""
    T = np.diag([0.9, 0.6]).astype(np.complex128)
    S = -np.eye(2, dtype=np.complex128)
    return T, S


def adjoint_trick_inputs() -> tuple[np.ndarray, np.ndarray]:
    """A fixed generic pair of strict contractions."""
    T = np.array([[0.6, 0.2], [0.0, 0.5]], dtype=np.complex128)
    A = np.array([[0.3, -0.4], [0.25, 0.1]], dtype=np.complex128)
    return T, A


def identity_orth_input() -> np.ndarray:
    """A fixed strict contraction for the window-vs-identity check."""
    return np.array([[0.8, 0.0], [0.1, 0.3]], dtype=np.complex128)


def _check(name: str, passed: bool, **values) -> dict:
    entry = {"name": name, "passed": bool(passed)}
    for k, v in values.items():
        if isinstance(v, complex):
            entry[k] = [v.real, v.imag]
        elif isinstance(v, (np.floating, np.integer)):
            entry[k] = float(v)
        else:
            entry[k] = v
    return entry


def _report(example: str, checks: list[dict]) -> dict:
    return {
        "example": example,
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
    }


def run_plane_rotation_pair() -> dict:
    """Orthogonal pair whose shift dilations stay at distance 1/2 from
    orthogonality: verdicts, range geometry, and the kappa bound."""
    T, A = example_pair_plane_rotation()
    checks = []

    v = is_bj_orthogonal(T, A)
    checks.append(
        _check(
            "pair_orthogonal",
            v.orthogonal.is_true,
            epsilon_min=v.epsilon_min,
            witness_inner=v.inner_product_at_witness,
        )
    )

    h = halmos_orth_criterion(T, A)
    checks.append(
        _check(
            "dilations_not_orthogonal",
            h.orthogonal.is_false,
            ray_margin=h.residuals["ray_margin"],
        )
    )
    checks.append(
        _check(
            "dilation_eps_floor_half",
            abs(h.epsilon_min - 0.5) <= 1e-4,
            epsilon_min=h.epsilon_min,
        )
    )

    B = halmos_block(A).block.conj().T @ halmos_block(T).block
    poly = nr_boundary(B)
    min_re = float(np.min(poly.vertices.real))
    checks.append(
        _check(
            "range_real_part_at_least_half",
            min_re >= 0.5 - 1e-6,
            min_real_part=min_re,
        )
    )

    kb = kappa_bound(T, A, 1.0)
    checks.append(
        _check(
            "kappa_half",
            abs(kb.kappa - 0.5) <= 1e-9 and abs(kb.eta0 - _INV_SQRT2) <= 1e-9,
            kappa=kb.kappa,
            eta0=kb.eta0,
        )
    )
    return _report("example-I", checks)


def run_opposite_signs() -> dict:
    """Scalar pairs: opposite signs make the shift dilations orthogonal,
    equal signs do not.  The certified witness realizes the ray point 0,
    the only admissible non-positive value for this pair."""
    lam = _INV_SQRT2
    checks = []

    T, A = scalar_pair(lam, -lam)
    v_neg = halmos_orth_criterion(T, A)
    val = v_neg.inner_product_at_witness
    checks.append(_check("opposite_signs_orthogonal", v_neg.orthogonal.is_true))
    checks.append(
        _check(
            "witness_on_nonpositive_ray",
            val is not None and val.real <= 1e-6 and abs(val.imag) <= 1e-6,
            witness_value=val if val is not None else 0.0j,
        )
    )

    Tp, Ap = scalar_pair(lam, lam)
    v_pos = halmos_orth_criterion(Tp, Ap)
    checks.append(
        _check(
            "equal_signs_not_orthogonal",
            v_pos.orthogonal.is_false,
            epsilon_min=v_pos.epsilon_min,
        )
    )
    return _report("opposite-signs", checks)


def run_converse_4x4() -> dict:
    """Nilpotent 4x4 pair at rho = 1 and rho = 2: dilations exist and are
    orthogonal although T is not orthogonal to A."""
    checks = []
    for rho in (1.0, 2.0):
        bundle = nilpotent_rho_example(rho, window=16)
        rep = bundle.report
        checks.append(
            _check(
                f"bundle_rho_{rho:g}",
                rep.passed,
                max_power_residual=max(rep.power_residuals.values()),
                inner_te1_ae1=rep.inner_te1_ae1,
                zero_margin=rep.zero_in_product_range.inner_distance,
            )
        )
        e4 = np.zeros(4, dtype=np.complex128)
        e4[3] = 1.0
        norm_ae4 = float(np.linalg.norm(bundle.A @ e4))
        val = inner(bundle.A @ e4, bundle.T @ e4)
        checks.append(
            _check(
                f"e4_norms_and_kills_rho_{rho:g}",
                abs(norm_ae4 - rho) <= 1e-12 and abs(val) <= 1e-12,
                norm_Ae4=norm_ae4,
                inner_Ae4_Te4=val,
            )
        )
    return _report("converse-4x4", checks)


def run_epsilon_sharp() -> dict:
    """The block unitaries of the plane-rotation pair are approximately
    orthogonal exactly for eps >= 1/2, and the windowed pairs inherit the
    same floor."""
    T, A = example_pair_plane_rotation()
    TU = halmos_block(T).block
    AU = halmos_block(A).block
    checks = []

    eps_val = epsilon_min(TU, AU)
    checks.append(
        _check("block_epsilon_half", abs(eps_val - 0.5) <= 1e-6, epsilon_min=eps_val)
    )

    for eps in (0.5, 0.6, 0.75, 0.9, 0.99):
        checks.append(_check(f"approx_true_at_{eps:g}", is_approx_orthogonal(TU, AU, eps).is_true))
    for eps in (0.0, 0.25, 0.45, 0.49):
        checks.append(_check(f"approx_false_at_{eps:g}", is_approx_orthogonal(TU, AU, eps).is_false))

    wT = schaffer_window(T, 16)
    wA = schaffer_window(A, 16)
    win_eps = epsilon_min(wT.operator, wA.operator)
    checks.append(
        _check(
            "window_epsilon_half",
            abs(win_eps - 0.5) <= 1e-3,
            window_epsilon=win_eps,
        )
    )
    return _report("epsilon-sharp", checks)


def run_regular_diag() -> dict:
    """diag(1,0) vs diag(1,1/2): the regular-dilation hypotheses hold with
    witness e2 even though the pair itself is not BJ-orthogonal."""
    T1, T2 = regular_diag_pair()
    rep = regular_orth_predicate(T1, T2)
    checks = []

    r12 = rep.brehmer.residual_matrices[2]
    eigs = np.linalg.eigvalsh(0.5 * (r12 + r12.conj().T))
    checks.append(
        _check(
            "brehmer_residual_eigs",
            rep.brehmer.passes
            and abs(eigs[0] - 0.0) <= 1e-10
            and abs(eigs[-1] - 0.75) <= 1e-10,
            eigenvalues=[float(e) for e in eigs],
        )
    )

    w = rep.classical_witness
    witness_is_e2 = w is not None and abs(abs(w[1]) - 1.0) <= 1e-6
    checks.append(
        _check(
            "zero_in_classical_range_witness_e2",
            rep.classical_zero.is_true and witness_is_e2,
            witness_overlap=0.0 if w is None else float(abs(w[1])),
        )
    )
    checks.append(_check("maximal_range_excludes_zero", rep.maximal_zero.verdict.is_false))
    checks.append(_check("pair_not_bj_orthogonal", rep.bj.orthogonal.is_false))
    checks.append(_check("predicate_holds", rep.predicate))
    return _report("regular-diag", checks)


def run_commuting_negation() -> dict:
    """S = -I: the commuting isometric dilations admit an exact orthogonality
    witness although neither direction of the pair (T, -T) is orthogonal."""
    T, S = commuting_negation_inputs()
    checks = []

    bundle = ando_pair(T, S, m=9)
    wit = bundle.witness
    checks.append(
        _check(
            "bundle_verified",
            bundle.passed,
            commutation=bundle.checks["commutation"],
            dilation_max=bundle.checks["dilation_max"],
        )
    )
    checks.append(
        _check(
            "witness_beta_minus_one",
            wit is not None
            and abs(wit.beta + 1.0) <= 1e-9
            and abs(wit.eta - _INV_SQRT2) <= 1e-9
            and abs(wit.zeta - _INV_SQRT2) <= 1e-9,
            beta=0.0 if wit is None else wit.beta,
        )
    )
    checks.append(
        _check(
            "witness_pairing_zero",
            wit is not None and wit.zero_residual <= 1e-7,
            zero_residual=0.0 if wit is None else wit.zero_residual,
        )
    )

    Aneg = S @ T
    v1 = is_bj_orthogonal(T, Aneg)
    v2 = is_bj_orthogonal(Aneg, T)
    checks.append(
        _check("neither_direction_orthogonal", v1.orthogonal.is_false and v2.orthogonal.is_false)
    )

    st = schaffer_ST_criterion(T, S)
    hal = halmos_orth_criterion(T, Aneg)
    checks.append(
        _check(
            "st_criterion_implies_halmos",
            st.orthogonal.is_true and hal.orthogonal.is_true,
        )
    )
    return _report("ando-negS", checks)


def run_adjoint_trick() -> dict:
    """Adjoint-window pairing: dilations of two arbitrary contractions made
    exactly orthogonal by dilating A through the window of A^*."""
    T, A = adjoint_trick_inputs()
    checks = []

    wT, wA, h = adjoint_trick_pair(T, A, m=8)
    val = inner(wT.operator @ h, wA.operator @ h)
    checks.append(_check("witness_inner_zero", abs(val) <= 1e-12, value=val))

    rep_t = verify_power_dilation(wT, T, n_max=3, tol=1e-9)
    rep_a = verify_power_dilation(wA, A, n_max=3, tol=1e-9)
    checks.append(
        _check(
            "both_windows_dilate",
            rep_t.passed and rep_a.passed,
            residual_T=max(rep_t.residuals),
            residual_A=max(rep_a.residuals),
        )
    )

    v = is_bj_orthogonal(wT.operator, wA.operator)
    checks.append(_check("window_pair_orthogonal", v.orthogonal.is_true))
    return _report("adjoint-trick", checks)


def run_identity_orth() -> dict:
    """Any cyclic window of a contraction is BJ-orthogonal to the identity:
    a basis vector on a pure shift slot is moved to a disjoint slot."""
    T = identity_orth_input()
    checks = []

    wT = schaffer_window(T, 8)
    d = wT.slot_dim
    h = np.zeros(wT.dim, dtype=np.complex128)
    h[1 * d] = 1.0
    val = inner(wT.operator @ h, h)
    checks.append(_check("shift_slot_witness_zero", abs(val) <= 1e-15, value=val))

    v = is_bj_orthogonal(wT.operator, np.eye(wT.dim, dtype=np.complex128))
    checks.append(_check("window_orthogonal_to_identity", v.orthogonal.is_true))
    return _report("identity-orth", checks)


SCENARIOS: dict[str, Callable[[], dict]] = {
    "example-I": run_plane_rotation_pair,
    "opposite-signs": run_opposite_signs,
    "converse-4x4": run_converse_4x4,
    "epsilon-sharp": run_epsilon_sharp,
    "regular-diag": run_regular_diag,
    "ando-negS": run_commuting_negation,
    "adjoint-trick": run_adjoint_trick,
    "identity-orth": run_identity_orth,
}


def scenario_ids() -> list[str]:
    return list(SCENARIOS)


def reproduce_scenario(example_id: str) -> dict:
    """Run one named scenario; raises KeyError listing valid ids."""
    if example_id not in SCENARIOS:
        raise KeyError(
            f"unknown example {example_id!r}; valid ids: {', '.join(SCENARIOS)}"
        )
    return SCENARIOS[example_id]()
