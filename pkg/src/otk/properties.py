"""Seeded property suites over random inputs.

Each property runs `trials` independent trials from a deterministic
per-trial generator and returns a PropertyResult; failures carry the
offending inputs as JSON matrix dicts so a trial can be replayed.  The
suites group the properties by the module they exercise and back both
the CLI property runner and the acceptance tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .ando import ando_pair, brehmer_check, schaffer_ST_criterion
from .bjorth import (
    approx_grid_oracle,
    bj_grid_oracle,
    epsilon_min,
    is_approx_orthogonal,
    is_bj_orthogonal,
    norm_attainment_basis,
    norm_preserving_extension,
)
from .matcore import inner, matrix_to_json, op_norm
from .numrange import (
    _convex_hull,
    _hull_signed_margin,
    maximal_numerical_range,
    mnr_sampling_oracle,
    zero_margin,
)
from .rand import (
    commuting_unitary_contraction,
    complex_gaussian,
    contraction_with_kernel,
    orthogonal_pair,
    random_contraction,
    random_hermitian_contraction,
    random_unitary,
    rng_for,
)
from .rho import kappa_bound, nilpotent_rho_example, rho_orth_transfer_check
from .schaffer import (
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

__all__ = ["PropertyResult", "SUITES", "run_suite", "suite_names"]


@dataclass
class PropertyResult:
    """Outcome of one property over its trials."""

    name: str
    trials: int
    passes: int
    failures: list[dict] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "passes": self.passes,
            "failures": self.failures,
            "extra": self.extra,
            "passed": self.passed,
        }


def _fail(trial: int, message: str, **mats: np.ndarray) -> dict:
    return {
        "trial": trial,
        "message": message,
        "inputs": {k: matrix_to_json(v) for k, v in mats.items()},
    }


def _dim(dims: Sequence[int], t: int) -> int:
    return dims[t % len(dims)]


def _mixed_pair(rng, n: int, t: int) -> tuple[np.ndarray, np.ndarray]:
    """Alternate constructed-orthogonal and generic pairs."""
    if t % 2 == 0:
        return orthogonal_pair(rng, n)
    return random_contraction(rng, n), random_contraction(rng, n)


def _project_out(base: np.ndarray, A: np.ndarray, x0: np.ndarray) -> np.ndarray:
    """Correct A so that <base x0, A x0> = 0 (rank-one update)."""
    u = base @ x0
    nu = float(np.linalg.norm(u))
    if nu < 1e-14:
        return A
    alpha = np.conj(inner(u, A @ x0)) / (nu * nu)
    return A - alpha * np.outer(u, x0.conj())


# ---------------------------------------------------------------------------
# bj suite
# ---------------------------------------------------------------------------


def check_scaling_invariance(trials: int, seed: int, dims=(2, 3, 4)) -> PropertyResult:
    """The orthogonality verdict is invariant under nonzero complex scaling."""
    res = PropertyResult("scaling-invariance", trials, 0)
    skipped = 0
    for t in range(trials):
        rng = rng_for(seed, t)
        T, A = _mixed_pair(rng, _dim(dims, t), t)
        c = rng.uniform(0.2, 2.0) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        d = rng.uniform(0.2, 2.0) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        v0 = is_bj_orthogonal(T, A).orthogonal
        v1 = is_bj_orthogonal(c * T, d * A).orthogonal
        if not (v0.decided and v1.decided):
            skipped += 1
            res.passes += 1
            continue
        if v0 is not v1:
            res.failures.append(_fail(t, f"verdict changed under scaling: {v0.value} -> {v1.value}", T=T, A=A))
        else:
            res.passes += 1
    res.extra["undecided"] = skipped
    return res


def check_grid_oracle_agreement(trials: int, seed: int, dims=(2, 3, 4)) -> PropertyResult:
    """The definitional lambda-grid minimum agrees with the range-based verdict."""
    res = PropertyResult("grid-oracle-agreement", trials, 0)
    undecided = 0
    for t in range(trials):
        rng = rng_for(seed, t)
        T, A = _mixed_pair(rng, _dim(dims, t), t)
        v = is_bj_orthogonal(T, A)
        if not v.orthogonal.decided:
            undecided += 1
            res.passes += 1
            continue
        min_norm, _ = bj_grid_oracle(T, A)
        deficit = op_norm(T) - min_norm
        scale = max(1.0, op_norm(T))
        if v.orthogonal.is_true:
            if deficit > 1e-8 * scale:
                res.failures.append(
                    _fail(t, f"oracle found norm deficit {deficit:.2e} on an orthogonal pair", T=T, A=A)
                )
                continue
        elif v.epsilon_min >= 1e-3 and deficit <= 1e-8 * scale:
            res.failures.append(
                _fail(t, f"oracle saw no deficit though epsilon_min = {v.epsilon_min:.3e}", T=T, A=A)
            )
            continue
        res.passes += 1
    res.extra["undecided"] = undecided
    return res


def check_approx_oracle_agreement(trials: int, seed: int, dims=(2, 3, 4)) -> PropertyResult:
    """Definitional epsilon search matches the compression epsilon within 1e-4."""
    res = PropertyResult("approx-oracle-agreement", trials, 0)
    worst = 0.0
    for t in range(trials):
        rng = rng_for(seed, t)
        T, A = _mixed_pair(rng, _dim(dims, t), t)
        e_range = epsilon_min(T, A)
        e_grid = approx_grid_oracle(T, A)
        gap = float(abs(e_range - e_grid))
        worst = max(worst, gap)
        if gap > 1e-4:
            res.failures.append(
                _fail(t, f"epsilon mismatch {e_range:.6f} vs grid {e_grid:.6f}", T=T, A=A)
            )
        else:
            res.passes += 1
    res.extra["worst_gap"] = worst
    return res


def check_extension_transfer(trials: int, seed: int, dims=(2, 3, 4)) -> PropertyResult:
    """Zero-padding both operators preserves verdict and epsilon."""
    res = PropertyResult("extension-transfer", trials, 0)
    for t in range(trials):
        rng = rng_for(seed, t)
        T, A = _mixed_pair(rng, _dim(dims, t), t)
        pad = 1 + t % 3
        Te, Ae = norm_preserving_extension(T, pad), norm_preserving_extension(A, pad)
        if abs(op_norm(Te) - op_norm(T)) > 1e-12:
            res.failures.append(_fail(t, "extension changed the norm", T=T))
            continue
        v0 = is_bj_orthogonal(T, A).orthogonal
        v1 = is_bj_orthogonal(Te, Ae).orthogonal
        if v0.decided and v1.decided and v0 is not v1:
            res.failures.append(_fail(t, f"extension changed verdict: {v0.value} -> {v1.value}", T=T, A=A))
            continue
        if abs(epsilon_min(T, A) - epsilon_min(Te, Ae)) > 1e-9:
            res.failures.append(_fail(t, "extension changed epsilon_min", T=T, A=A))
            continue
        res.passes += 1
    return res


def check_epsilon_band(trials: int, seed: int, dims=(2, 3, 4)) -> PropertyResult:
    """is_approx_orthogonal flips exactly around epsilon_min."""
    res = PropertyResult("epsilon-band", trials, 0)
    for t in range(trials):
        rng = rng_for(seed, t)
        T, A = _mixed_pair(rng, _dim(dims, t), t)
        e = epsilon_min(T, A)
        up = min(e + 0.01, 0.9999)
        if not is_approx_orthogonal(T, A, up).is_true:
            res.failures.append(_fail(t, f"not approx-orthogonal at eps = epsilon_min + 0.01 = {up:.4f}", T=T, A=A))
            continue
        if e >= 0.011 and not is_approx_orthogonal(T, A, e - 0.01).is_false:
            res.failures.append(_fail(t, f"approx-orthogonal below epsilon_min ({e:.4f})", T=T, A=A))
            continue
        res.passes += 1
    return res


def check_selfadjoint_power_norms(trials: int, seed: int, dims=(2, 3, 4)) -> PropertyResult:
    """||H^k|| = ||H||^k for self-adjoint H, k <= 5."""
    res = PropertyResult("selfadjoint-power-norms", trials, 0)
    for t in range(trials):
        rng = rng_for(seed, t)
        H = random_hermitian_contraction(rng, _dim(dims, t))
        nh = op_norm(H)
        bad = None
        for k in range(1, 6):
            lhs = op_norm(np.linalg.matrix_power(H, k))
            if abs(lhs - nh**k) > 1e-8 * nh**k:
                bad = k
                break
        if bad is not None:
            res.failures.append(_fail(t, f"||H^{bad}|| deviates from ||H||^{bad}", H=H))
        else:
            res.passes += 1
    return res


def check_odd_power_transfer(trials: int, seed: int, dims=(2, 3, 4)) -> PropertyResult:
    """Self-adjoint T orthogonal to A stays orthogonal at odd powers."""
    res = PropertyResult("odd-power-transfer", trials, 0)
    for t in range(trials):
        rng = rng_for(seed, t)
        n = _dim(dims, t)
        T = random_hermitian_contraction(rng, n)
        w, V = np.linalg.eigh(T @ T)
        x0 = V[:, -1]
        A = _project_out(T, random_contraction(rng, n), x0)
        if not is_bj_orthogonal(T, A).orthogonal.is_true:
            res.failures.append(_fail(t, "projected pair not orthogonal at power 1", T=T, A=A))
            continue
        bad = None
        for k in (3, 5):
            if not is_bj_orthogonal(np.linalg.matrix_power(T, k), A).orthogonal.is_true:
                bad = k
                break
        if bad is not None:
            res.failures.append(_fail(t, f"orthogonality lost at odd power {bad}", T=T, A=A))
        else:
            res.passes += 1
    return res


def check_even_power_transfer(trials: int, seed: int, dims=(2, 3, 4)) -> PropertyResult:
    """Self-adjoint T with T^2 orthogonal to A stays orthogonal at even powers."""
    res = PropertyResult("even-power-transfer", trials, 0)
    for t in range(trials):
        rng = rng_for(seed, t)
        n = _dim(dims, t)
        T = random_hermitian_contraction(rng, n)
        T2 = T @ T
        w, V = np.linalg.eigh(T2)
        x0 = V[:, -1]
        A = _project_out(T2, random_contraction(rng, n), x0)
        if not is_bj_orthogonal(T2, A).orthogonal.is_true:
            res.failures.append(_fail(t, "projected pair not orthogonal at power 2", T=T, A=A))
            continue
        eye = np.eye(n, dtype=np.complex128)
        bad = None
        for k, M in ((0, eye), (4, np.linalg.matrix_power(T, 4))):
            if not is_bj_orthogonal(M, A).orthogonal.is_true:
                bad = k
                break
        if bad is not None:
            res.failures.append(_fail(t, f"orthogonality lost at even power {bad}", T=T, A=A))
        else:
            res.passes += 1
    return res


def check_defect_power_orthogonality(trials: int, seed: int, dims=(2, 3, 4)) -> PropertyResult:
    """D_T^k orthogonal to T^j for singular contractions, k, j <= 3."""
    res = PropertyResult("defect-power-orthogonality", trials, 0)
    for t in range(trials):
        rng = rng_for(seed, t)
        T = contraction_with_kernel(rng, _dim(dims, t))
        D_T, _ = defect_pair(T)
        bad = None
        for k in (1, 2, 3):
            Dk = np.linalg.matrix_power(D_T, k)
            for j in (1, 2, 3):
                if not is_bj_orthogonal(Dk, np.linalg.matrix_power(T, j)).orthogonal.is_true:
                    bad = (k, j)
                    break
            if bad:
                break
        if bad:
            res.failures.append(_fail(t, f"defect power pair {bad} not orthogonal", T=T))
        else:
            res.passes += 1
    return res


def check_mnr_containment(trials: int, seed: int, dims=(3, 4, 5, 6)) -> PropertyResult:
    """Near-norming sample cloud sits inside the inflated compression polygon."""
    res = PropertyResult("mnr-cloud-containment", trials, 0)
    slack = 1e-3
    for t in range(trials):
        rng = rng_for(seed, t)
        n = _dim(dims, t)
        T = random_contraction(rng, n)
        poly = maximal_numerical_range(T)
        hull = poly.vertices[_convex_hull(poly.vertices)]
        cloud = mnr_sampling_oracle(T, slack=slack, samples=4000, seed=seed * 7919 + t)
        allowance = 10.0 * math.sqrt(slack) * op_norm(T)
        worst = min(
            (_hull_signed_margin(complex(z), hull) for z in cloud), default=0.0
        )
        if worst < -allowance:
            res.failures.append(
                _fail(t, f"cloud point escapes polygon by {-worst:.3e} > {allowance:.3e}", T=T)
            )
        else:
            res.passes += 1
    return res


# ---------------------------------------------------------------------------
# schaffer suite
# ---------------------------------------------------------------------------


def check_window_powers(trials: int, seed: int, dims=(2, 3, 4)) -> PropertyResult:
    """Windows are exactly unitary and satisfy the full power identity."""
    res = PropertyResult("window-unitarity-powers", trials, 0)
    for t in range(trials):
        rng = rng_for(seed, t)
        T = random_contraction(rng, _dim(dims, t))
        m = 6 if t % 2 == 0 else 8
        w = schaffer_window(T, m)
        u_res = float(np.linalg.norm(w.operator.conj().T @ w.operator - np.eye(w.dim), 2))
        if u_res > 1e-12:
            res.failures.append(_fail(t, f"window unitarity residual {u_res:.2e}", T=T))
            continue
        rep = verify_power_dilation(w, T, n_max=m - 2, tol=1e-9)
        if not rep.passed:
            res.failures.append(_fail(t, f"power identity residuals {max(rep.residuals):.2e}", T=T))
        else:
            res.passes += 1
    return res


def check_criterion_agreement(trials: int, seed: int, dims=(2, 3, 4)) -> PropertyResult:
    """Block-unitary orthogonality, the ray criterion, and windowed epsilons agree.

    For each pair: the direct BJ verdict on the Halmos blocks must match the
    ray criterion; a true verdict forces windowed epsilon ~ 0 at m = 16 and a
    false one keeps it at the criterion's positive floor.
    """
    res = PropertyResult("criterion-agreement", trials, 0)
    undecided = true_count = false_count = 0
    for t in range(trials):
        rng = rng_for(seed, t)
        n = _dim(dims, t)
        if t % 3 == 0:
            T, A = orthogonal_pair(rng, n, unit_norm=True)
        else:
            T, A = _mixed_pair(rng, n, t + 1)
        crit = halmos_orth_criterion(T, A)
        TU = halmos_block(T).block
        AU = halmos_block(A).block
        direct = is_bj_orthogonal(TU, AU)
        if not (crit.orthogonal.decided and direct.orthogonal.decided):
            undecided += 1
            res.passes += 1
            continue
        if crit.orthogonal is not direct.orthogonal:
            res.failures.append(
                _fail(
                    t,
                    f"criterion {crit.orthogonal.value} but block verdict {direct.orthogonal.value}",
                    T=T,
                    A=A,
                )
            )
            continue
        wT = schaffer_window(T, 16)
        wA = schaffer_window(A, 16)
        win_eps = epsilon_min(wT.operator, wA.operator)
        if crit.orthogonal.is_true:
            true_count += 1
            if win_eps > 1e-3:
                res.failures.append(
                    _fail(t, f"windowed epsilon {win_eps:.2e} though dilations orthogonal", T=T, A=A)
                )
                continue
        else:
            false_count += 1
            floor = crit.epsilon_min
            if win_eps < 0.5 * floor:
                res.failures.append(
                    _fail(t, f"windowed epsilon {win_eps:.3e} below half the floor {floor:.3e}", T=T, A=A)
                )
                continue
        res.passes += 1
    res.extra.update(undecided=undecided, true_count=true_count, false_count=false_count)
    return res


def check_unit_norm_transfer(trials: int, seed: int, dims=(2, 3, 4)) -> PropertyResult:
    """Unit-norm orthogonal pairs always produce orthogonal dilations, and the
    first-power defect identity holds on every attainment vector."""
    res = PropertyResult("unit-norm-transfer", trials, 0)
    undecided = 0
    for t in range(trials):
        rng = rng_for(seed, t)
        T, A = orthogonal_pair(rng, _dim(dims, t), unit_norm=True)
        crit = halmos_orth_criterion(T, A)
        if not crit.orthogonal.decided:
            undecided += 1
            res.passes += 1
            continue
        if not crit.orthogonal.is_true:
            res.failures.append(_fail(t, "criterion false for unit-norm orthogonal pair", T=T, A=A))
            continue
        w = schaffer_window(T, 6)
        nab = norm_attainment_basis(T)
        bad = 0.0
        for k in range(nab.dim):
            x = nab.basis[:, k]
            lhs = float(np.linalg.norm(w.embed(T @ x) - w.operator @ w.embed(x)) ** 2)
            rhs = 1.0 - float(np.linalg.norm(T @ x) ** 2)
            bad = max(bad, abs(lhs - rhs))
        if bad > 1e-8:
            res.failures.append(_fail(t, f"first-power identity residual {bad:.2e}", T=T))
        else:
            res.passes += 1
    res.extra["undecided"] = undecided
    return res


def check_generalized_params(trials: int, seed: int, dims=(2, 3)) -> PropertyResult:
    """Random unitary twists keep the window a verified power dilation."""
    res = PropertyResult("generalized-window-params", trials, 0)
    for t in range(trials):
        rng = rng_for(seed, t)
        n = _dim(dims, t)
        T = random_contraction(rng, n)
        m = 6 if t % 2 == 0 else 8
        home = m // 2
        params = GeneralizedParams(
            U1=random_unitary(rng, n),
            U2=random_unitary(rng, n),
            X_seq=tuple(random_unitary(rng, n) for _ in range(m - home - 2)),
            Y_seq=tuple(random_unitary(rng, n) for _ in range(home)),
        )
        w = generalized_schaffer(T, params, m)
        rep = verify_power_dilation(w, T, n_max=m - 2, tol=1e-9)
        if not rep.passed:
            res.failures.append(_fail(t, f"twisted window residual {max(rep.residuals):.2e}", T=T))
        else:
            res.passes += 1
    return res


def check_forced_pairs(trials: int, seed: int, dims=(2, 3, 4)) -> PropertyResult:
    """The swap-slot construction yields exactly orthogonal windows, T = A included."""
    res = PropertyResult("forced-orthogonal-pairs", trials, 0)
    m = 8
    slots = [0, 1, 2, 3, 6, 7]
    for t in range(trials):
        rng = rng_for(seed, t)
        n = max(2, _dim(dims, t))
        T = random_contraction(rng, n)
        A = T if t % 3 == 0 else random_contraction(rng, n)
        wT, wA, h = forced_orthogonal_pair(T, A, m, k0=slots[t % len(slots)])
        val = inner(wT.operator @ h, wA.operator @ h)
        if abs(val) > 1e-12:
            res.failures.append(_fail(t, f"forced witness pairing {abs(val):.2e}", T=T, A=A))
            continue
        if not is_bj_orthogonal(wT.operator, wA.operator).orthogonal.is_true:
            res.failures.append(_fail(t, "forced windows not certified orthogonal", T=T, A=A))
            continue
        res.passes += 1
    return res


def check_hat_pairs(trials: int, seed: int, dims=(2, 3)) -> PropertyResult:
    """The nested sign-flipped windows certify orthogonality for every
    BJ-orthogonal input pair."""
    res = PropertyResult("hat-pairs", trials, 0)
    for t in range(trials):
        rng = rng_for(seed, t)
        T, A = orthogonal_pair(rng, _dim(dims, t))
        try:
            _, _, rep = hat_pair(T, A)
        except ValueError as exc:
            res.failures.append(_fail(t, f"hat construction rejected input: {exc}", T=T, A=A))
            continue
        if abs(rep.value) > 1e-7:
            res.failures.append(_fail(t, f"hat witness pairing {abs(rep.value):.2e}", T=T, A=A))
        elif rep.prediction_residual > 1e-9:
            res.failures.append(_fail(t, f"hat closed form off by {rep.prediction_residual:.2e}", T=T, A=A))
        else:
            res.passes += 1
    return res


def check_adjoint_trick(trials: int, seed: int, dims=(2, 3, 4)) -> PropertyResult:
    """The adjoint-window pairing is exactly orthogonal for arbitrary pairs."""
    res = PropertyResult("adjoint-window-pairs", trials, 0)
    for t in range(trials):
        rng = rng_for(seed, t)
        n = _dim(dims, t)
        T = random_contraction(rng, n)
        A = random_contraction(rng, n)
        wT, wA, h = adjoint_trick_pair(T, A, m=7)
        val = inner(wT.operator @ h, wA.operator @ h)
        rep_t = verify_power_dilation(wT, T, n_max=2, tol=1e-9)
        rep_a = verify_power_dilation(wA, A, n_max=2, tol=1e-9)
        if abs(val) > 1e-12:
            res.failures.append(_fail(t, f"adjoint witness pairing {abs(val):.2e}", T=T, A=A))
        elif not (rep_t.passed and rep_a.passed):
            res.failures.append(_fail(t, "adjoint windows fail the power identity", T=T, A=A))
        else:
            res.passes += 1
    return res


def check_right_symmetry(trials: int, seed: int, dims=(2, 3)) -> PropertyResult:
    """Zero-membership of W(U_A^* U_T) is symmetric in the two windows."""
    res = PropertyResult("window-right-symmetry", trials, 0)
    for t in range(trials):
        rng = rng_for(seed, t)
        T, A = _mixed_pair(rng, _dim(dims, t), t)
        wT = schaffer_window(T, 8)
        wA = schaffer_window(A, 8)
        m1 = zero_margin(wA.operator.conj().T @ wT.operator)
        m2 = zero_margin(wT.operator.conj().T @ wA.operator)
        if abs(m1 - m2) > 1e-9:
            res.failures.append(_fail(t, f"asymmetric zero margins {m1:.3e} vs {m2:.3e}", T=T, A=A))
        else:
            res.passes += 1
    return res


def check_scalar_threshold(trials: int, seed: int, dims=(2,)) -> PropertyResult:
    """For scalar pairs lam, mu with lam*mu < 0 the ray criterion holds exactly
    when lam^2 + mu^2 >= 1."""
    res = PropertyResult("scalar-pair-threshold", trials, 0)
    skipped = 0
    for t in range(trials):
        rng = rng_for(seed, t)
        lam = float(rng.uniform(0.2, 0.99))
        mu = -float(rng.uniform(0.2, 0.99))
        s = lam * lam + mu * mu
        if abs(s - 1.0) < 1e-3:
            skipped += 1
            res.passes += 1
            continue
        T = lam * np.eye(2, dtype=np.complex128)
        A = mu * np.eye(2, dtype=np.complex128)
        v = halmos_orth_criterion(T, A).orthogonal
        expected = s >= 1.0
        if v.is_true is not expected or not v.decided:
            res.failures.append(
                _fail(t, f"scalar criterion {v.value} but lam^2+mu^2 = {s:.4f}", T=T, A=A)
            )
        else:
            res.passes += 1
    res.extra["near_threshold_skipped"] = skipped
    return res


# ---------------------------------------------------------------------------
# rho suite
# ---------------------------------------------------------------------------


def check_first_power_identity(trials: int, seed: int, dims=(2, 3, 4)) -> PropertyResult:
    """||Tx - rho U x||^2 = rho^2 - ||Tx||^2 for any unit home vector x."""
    res = PropertyResult("first-power-identity", trials, 0)
    for t in range(trials):
        rng = rng_for(seed, t)
        if t % 3 == 2:
            bundle = nilpotent_rho_example(rho=2.0, window=12)
            win, op, rho = bundle.U_T, bundle.T, 2.0
        else:
            op = random_contraction(rng, _dim(dims, t))
            win, rho = schaffer_window(op, 8), 1.0
        x = complex_gaussian(rng, win.home_dim, 1).ravel()
        x = x / np.linalg.norm(x)
        lhs = float(np.linalg.norm(win.embed(op @ x) - rho * (win.operator @ win.embed(x))) ** 2)
        rhs = rho * rho - float(np.linalg.norm(op @ x) ** 2)
        if abs(lhs - rhs) > 1e-8:
            res.failures.append(_fail(t, f"first-power identity residual {abs(lhs - rhs):.2e}", T=op))
        else:
            res.passes += 1
    return res


def check_eta_sampling(trials: int, seed: int, dims=(3,)) -> PropertyResult:
    """eta1 from the attainment eigenproblem matches brute-force sphere sampling."""
    res = PropertyResult("eta-sampling-oracle", trials, 0)
    rho = 2.0
    for t in range(trials):
        rng = rng_for(seed, t)
        n = _dim(dims, t)
        if t % 2 == 0:
            T = random_contraction(rng, n)
        else:
            U, V = random_unitary(rng, n), random_unitary(rng, n)
            svals = np.concatenate([[0.9, 0.9], rng.uniform(0.1, 0.5, size=n - 2)])
            T = U @ np.diag(svals) @ V.conj().T
        A = random_contraction(rng, n)
        kb = kappa_bound(T, A, rho)
        M = norm_attainment_basis(T).basis
        k = M.shape[1]
        coords = complex_gaussian(rng, k, 200000)
        coords = coords / np.linalg.norm(coords, axis=0, keepdims=True)
        norms = np.linalg.norm(A @ (M @ coords), axis=0)
        est = math.sqrt(max(0.0, 1.0 - float(np.min(norms)) ** 2 / (rho * rho)))
        if abs(kb.eta1 - est) > 1e-4:
            res.failures.append(
                _fail(t, f"eta1 {kb.eta1:.6f} vs sampled {est:.6f} (attainment dim {k})", T=T, A=A)
            )
        else:
            res.passes += 1
    return res


def check_transfer_reports(trials: int, seed: int, dims=(2, 3)) -> PropertyResult:
    """Unit-norm orthogonal pairs: the window pair is certified orthogonal and
    the transfer report's identities all hold."""
    res = PropertyResult("transfer-reports", trials, 0)
    undecided = 0
    for t in range(trials):
        rng = rng_for(seed, t)
        T, A = orthogonal_pair(rng, _dim(dims, t), unit_norm=True)
        wT = schaffer_window(T, 8)
        wA = schaffer_window(A, 8)
        rep = rho_orth_transfer_check(T, A, 1.0, wT, wA)
        if not rep.zero_membership.verdict.decided:
            undecided += 1
            res.passes += 1
            continue
        if not rep.zero_membership.verdict.is_true:
            res.failures.append(_fail(t, "dilation pair not orthogonal at unit norm", T=T, A=A))
            continue
        if max(rep.eq1_residuals) > 1e-8:
            res.failures.append(_fail(t, f"first-power residual {max(rep.eq1_residuals):.2e}", T=T, A=A))
            continue
        if not (rep.norm_equals_rho and rep.eps_within_kappa):
            res.failures.append(_fail(t, "transfer report flags inconsistent", T=T, A=A))
            continue
        res.passes += 1
    res.extra["undecided"] = undecided
    return res


def check_nilpotent_bundles(trials: int, seed: int, dims=()) -> PropertyResult:
    """The permutation-shift bundle verifies at several rho values."""
    res = PropertyResult("nilpotent-bundles", trials, 0)
    rhos = (0.5, 1.0, 2.0, 3.0)
    for t in range(trials):
        rho = rhos[t % len(rhos)]
        window = 12 + 2 * (t % 3)
        bundle = nilpotent_rho_example(rho=rho, window=window)
        if not bundle.report.passed:
            res.failures.append(_fail(t, f"bundle failed at rho = {rho}, window = {window}", T=bundle.T, A=bundle.A))
        else:
            res.passes += 1
    return res


def check_kappa_dominates_window(trials: int, seed: int, dims=(2, 3)) -> PropertyResult:
    """Windowed epsilon never exceeds the kappa bound for orthogonal pairs."""
    res = PropertyResult("kappa-dominates-window", trials, 0)
    for t in range(trials):
        rng = rng_for(seed, t)
        T, A = orthogonal_pair(rng, _dim(dims, t))
        wT = schaffer_window(T, 8)
        wA = schaffer_window(A, 8)
        rep = rho_orth_transfer_check(T, A, 1.0, wT, wA)
        kb = rep.kappa
        if not (0.0 <= kb.kappa <= 1.0 and 0.0 <= kb.eta0 <= 1.0):
            res.failures.append(_fail(t, "kappa report out of range", T=T, A=A))
            continue
        if not rep.eps_within_kappa:
            res.failures.append(
                _fail(t, f"window epsilon {rep.window_eps:.4f} above kappa {kb.kappa:.4f}", T=T, A=A)
            )
            continue
        res.passes += 1
    return res


# ---------------------------------------------------------------------------
# ando suite
# ---------------------------------------------------------------------------


def check_defect_lemma(trials: int, seed: int, dims=(2, 3, 4)) -> PropertyResult:
    """D_T and D_{ST} coincide for unitary S commuting with T."""
    res = PropertyResult("defect-invariance", trials, 0)
    for t in range(trials):
        rng = rng_for(seed, t)
        T, S = commuting_unitary_contraction(rng, _dim(dims, t))
        D_T, _ = defect_pair(T)
        D_ST, _ = defect_pair(S @ T)
        gap = float(np.linalg.norm(D_T - D_ST, 2))
        if gap > 1e-9:
            res.failures.append(_fail(t, f"defects differ by {gap:.2e}", T=T, S=S))
        else:
            res.passes += 1
    return res


def check_bundle_residuals(trials: int, seed: int, dims=(2, 3)) -> PropertyResult:
    """Commuting dilation bundles verify at m = 13."""
    res = PropertyResult("commuting-bundle-residuals", trials, 0)
    witnessed = 0
    for t in range(trials):
        rng = rng_for(seed, t)
        T, S = commuting_unitary_contraction(rng, _dim(dims, t))
        bundle = ando_pair(T, S, m=13)
        hard = max(
            bundle.checks["isometry_v_t"],
            bundle.checks["isometry_v_a"],
            bundle.checks["commutation"],
            bundle.checks["dilation_max"],
        )
        if hard > 1e-8:
            res.failures.append(_fail(t, f"bundle residual {hard:.2e}", T=T, S=S))
            continue
        if bundle.witness is not None:
            witnessed += 1
            if bundle.witness.zero_residual > 1e-7:
                res.failures.append(
                    _fail(t, f"witness pairing {bundle.witness.zero_residual:.2e}", T=T, S=S)
                )
                continue
        res.passes += 1
    res.extra["witnessed"] = witnessed
    return res


def check_st_implication(trials: int, seed: int, dims=(2, 3)) -> PropertyResult:
    """A true quadratic-form criterion forces the ray criterion for (T, ST)."""
    res = PropertyResult("st-criterion-implication", trials, 0)
    fired = 0
    for t in range(trials):
        rng = rng_for(seed, t)
        n = _dim(dims, t)
        if t % 2 == 0:
            T = random_contraction(rng, n, norm=0.9)
            S = -np.eye(n, dtype=np.complex128)
        else:
            T, S = commuting_unitary_contraction(rng, n)
        st = schaffer_ST_criterion(T, S)
        if not st.orthogonal.is_true:
            res.passes += 1
            continue
        fired += 1
        hal = halmos_orth_criterion(T, S @ T)
        if hal.orthogonal.is_false:
            res.failures.append(_fail(t, "criterion true but ray criterion false", T=T, S=S))
        else:
            res.passes += 1
    res.extra["criterion_true_count"] = fired
    return res


def check_brehmer_families(trials: int, seed: int, dims=(2, 3, 4)) -> PropertyResult:
    """Positivity passes on the families it must: doubly commuting pairs,
    norm-square-sum pairs, and pairs with a zero partner."""
    res = PropertyResult("brehmer-families", trials, 0)
    for t in range(trials):
        rng = rng_for(seed, t)
        n = _dim(dims, t)
        V = random_unitary(rng, n)
        kind = t % 3
        if kind == 0:
            d1 = rng.uniform(0.1, 0.95, n) * np.exp(1j * rng.uniform(0, 2 * np.pi, n))
            d2 = rng.uniform(0.1, 0.95, n) * np.exp(1j * rng.uniform(0, 2 * np.pi, n))
            T1 = V @ np.diag(d1) @ V.conj().T
            T2 = V @ np.diag(d2) @ V.conj().T
        elif kind == 1:
            a = rng.uniform(0.1, 0.7)
            b = math.sqrt(max(0.0, 0.98 - a * a))
            T1 = V @ np.diag(rng.uniform(0.1, 1.0, n) * a) @ V.conj().T
            T2 = V @ np.diag(rng.uniform(0.1, 1.0, n) * b) @ V.conj().T
        else:
            T1 = random_contraction(rng, n)
            T2 = np.zeros((n, n), dtype=np.complex128)
        rep = brehmer_check(T1, T2)
        if not rep.passes:
            res.failures.append(
                _fail(t, f"family {kind} rejected (min eigs {rep.min_eigenvalues})", T1=T1, T2=T2)
            )
        else:
            res.passes += 1
    return res


def check_negation_witness(trials: int, seed: int, dims=(2, 3)) -> PropertyResult:
    """S = -I: the bundle always carries a zero witness while neither BJ
    direction between T and -T holds."""
    res = PropertyResult("negation-witness", trials, 0)
    for t in range(trials):
        rng = rng_for(seed, t)
        n = _dim(dims, t)
        T = random_contraction(rng, n)
        S = -np.eye(n, dtype=np.complex128)
        bundle = ando_pair(T, S, m=9)
        wit = bundle.witness
        if wit is None or wit.zero_residual > 1e-7 or abs(wit.beta + 1.0) > 1e-9:
            res.failures.append(_fail(t, "missing or inexact witness for S = -I", T=T))
            continue
        if not (
            is_bj_orthogonal(T, -T).orthogonal.is_false
            and is_bj_orthogonal(-T, T).orthogonal.is_false
        ):
            res.failures.append(_fail(t, "BJ verdict unexpectedly true for (T, -T)", T=T))
            continue
        res.passes += 1
    return res


def check_phase_witness(trials: int, seed: int, dims=(2,)) -> PropertyResult:
    """S with eigenvalue phases +-3pi/4 crosses the non-positive axis; the
    witness pairing vanishes."""
    res = PropertyResult("phase-pair-witness", trials, 0)
    for t in range(trials):
        rng = rng_for(seed, t)
        V = random_unitary(rng, 2)
        S = V @ np.diag(np.exp(1j * np.array([3 * np.pi / 4, -3 * np.pi / 4]))) @ V.conj().T
        tvals = rng.uniform(0.2, 0.9, 2) * np.exp(1j * rng.uniform(0, 2 * np.pi, 2))
        T = V @ np.diag(tvals) @ V.conj().T
        bundle = ando_pair(T, S, m=9)
        wit = bundle.witness
        if wit is None:
            res.failures.append(_fail(t, "no witness though W(S) crosses the axis", T=T, S=S))
            continue
        if wit.zero_residual > 1e-7 or wit.prediction_residual > 1e-9:
            res.failures.append(
                _fail(
                    t,
                    f"witness residuals {wit.zero_residual:.2e} / {wit.prediction_residual:.2e}",
                    T=T,
                    S=S,
                )
            )
            continue
        res.passes += 1
    return res


# ---------------------------------------------------------------------------
# suite registry
# ---------------------------------------------------------------------------


SUITES: dict[str, list[Callable[..., PropertyResult]]] = {
    "bj": [
        check_scaling_invariance,
        check_grid_oracle_agreement,
        check_approx_oracle_agreement,
        check_extension_transfer,
        check_epsilon_band,
        check_selfadjoint_power_norms,
        check_odd_power_transfer,
        check_even_power_transfer,
        check_defect_power_orthogonality,
        check_mnr_containment,
    ],
    "schaffer": [
        check_window_powers,
        check_criterion_agreement,
        check_unit_norm_transfer,
        check_generalized_params,
        check_forced_pairs,
        check_hat_pairs,
        check_adjoint_trick,
        check_right_symmetry,
        check_scalar_threshold,
    ],
    "rho": [
        check_first_power_identity,
        check_eta_sampling,
        check_transfer_reports,
        check_nilpotent_bundles,
        check_kappa_dominates_window,
    ],
    "ando": [
        check_defect_lemma,
        check_bundle_residuals,
        check_st_implication,
        check_brehmer_families,
        check_negation_witness,
        check_phase_witness,
    ],
}


def suite_names() -> list[str]:
    return ["all", *SUITES]


def run_suite(
    suite: str, trials: int, seed: int, dims: Sequence[int] | None = None
) -> list[PropertyResult]:
    """Run one suite (or all) with the given trial count and master seed."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    names = list(SUITES) if suite == "all" else [suite]
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; use one of {suite_names()}")
    results = []
    for name in names:
        for prop in SUITES[name]:
            if dims is None:
                results.append(prop(trials, seed))
            else:
                results.append(prop(trials, seed, dims=tuple(dims)))
    return results
