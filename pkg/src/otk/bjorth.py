"""Birkhoff-James orthogonality of matrix pairs.

T is BJ-orthogonal to A when ||T + lambda A|| >= ||T|| for every complex
lambda.  For matrices this is equivalent to the existence of a norming unit
vector x0 (||T x0|| = ||T||) with <T x0, A x0> = 0, which in turn reduces to
membership of 0 in the numerical range of the compression C = M^* A^* T M,
where the columns of M span the top eigenspace of T^*T.  The decision
functions here run that compression route; the grid oracles minimize the
definitional quantity over lambda directly and exist to keep the compression
route honest.

The approximate variant relaxes the requirement to
||T + lambda A||^2 >= ||T||^2 - 2 eps ||T|| ||lambda A||; the least feasible
eps equals dist(0, W(C)) / (||T|| ||A||).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .matcore import (
    DEFAULT_TOL,
    MatrixFormatError,
    ToleranceConfig,
    complex_to_pair,
    ensure_matrix,
    herm_eig,
    inner,
    op_norm,
)
from .numrange import (
    Verdict,
    nr_witness,
    zero_margin,
)

__all__ = [
    "NormAttainmentBasis",
    "OrthVerdict",
    "GridOracleConfig",
    "norm_attainment_basis",
    "is_bj_orthogonal",
    "epsilon_min",
    "is_approx_orthogonal",
    "bj_grid_oracle",
    "approx_grid_oracle",
    "norm_preserving_extension",
]


@dataclass(frozen=True)
class NormAttainmentBasis:
    """Orthonormal basis of the subspace where T attains its norm.

    basis columns span the clustered top eigenspace of T^*T; every unit
    vector in their span is norming for T.  gap measures the spectral
    distance from ||T||^2 to the largest excluded eigenvalue of T^*T (equal
    to ||T||^2 itself when nothing is excluded).
    """

    basis: np.ndarray
    norm: float
    gap: float

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def norm_attainment_basis(T, tol: ToleranceConfig = DEFAULT_TOL) -> NormAttainmentBasis:
    A = ensure_matrix(T, name="T")
    G = A.conj().T @ A
    w, V = herm_eig(G, tol)
    lam1 = float(w[0])
    if lam1 <= 0.0 or np.sqrt(lam1) <= 1e-14 * max(1.0, float(np.max(np.abs(A)))):
        raise ValueError("norm attainment basis is undefined for the zero matrix")
    cutoff = lam1 - tol.eig_tol * lam1
    keep = w >= cutoff
    excluded = w[~keep]
    gap = lam1 - float(excluded[0]) if excluded.size else lam1
    return NormAttainmentBasis(basis=V[:, keep], norm=float(np.sqrt(lam1)), gap=gap)


@dataclass(frozen=True)
class OrthVerdict:
    """Outcome of a BJ-orthogonality decision.

    When orthogonal is true the witness is a norming unit vector with
    <T witness, A witness> ~ 0; epsilon_min is the least eps making the pair
    approximately orthogonal (0 exactly when orthogonal).
    """

    orthogonal: Verdict
    epsilon_min: float
    witness: np.ndarray | None = None
    inner_product_at_witness: complex | None = None
    method: str = "compression"
    residuals: dict[str, float] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "orthogonal": self.orthogonal.value,
            "epsilon_min": float(self.epsilon_min),
            "witness": None
            if self.witness is None
            else [complex_to_pair(z) for z in np.asarray(self.witness).ravel()],
            "method": self.method,
            "residuals": {k: float(v) for k, v in sorted(self.residuals.items())},
        }


def _trivial_verdict(dim: int, reason: str) -> OrthVerdict:
    w = np.zeros(dim, dtype=np.complex128)
    w[0] = 1.0
    return OrthVerdict(
        orthogonal=Verdict.TRUE,
        epsilon_min=0.0,
        witness=w,
        inner_product_at_witness=0.0 + 0.0j,
        method="compression",
        residuals={reason: 0.0},
    )


def _compression(T: np.ndarray, A: np.ndarray, tol: ToleranceConfig):
    """(C, nab, scale): C = M^* A^* T M on the attainment basis, scale = ||T|| ||A||."""
    nab = norm_attainment_basis(T, tol)
    M = nab.basis
    C = M.conj().T @ (A.conj().T @ (T @ M))
    scale = nab.norm * op_norm(A)
    return C, nab, scale


def is_bj_orthogonal(T, A, tol: ToleranceConfig = DEFAULT_TOL) -> OrthVerdict:
    """Decide T perp_B A via the norm-attainment compression.

    True is certified by a norming witness with vanishing inner product;
    false by a uniform separation of 0 from the compression's numerical
    range.  A narrow band in between returns inconclusive.
    """
    Tm = ensure_matrix(T, name="T")
    Am = ensure_matrix(A, name="A")
    if Tm.shape != Am.shape:
        raise MatrixFormatError(f"shape mismatch: T is {Tm.shape}, A is {Am.shape}")
    if op_norm(Tm) <= 1e-14 * max(1.0, float(np.max(np.abs(Tm)))) or op_norm(Tm) == 0.0:
        return _trivial_verdict(Tm.shape[1], "zero_T")
    if op_norm(Am) == 0.0:
        return _trivial_verdict(Tm.shape[1], "zero_A")

    C, nab, scale = _compression(Tm, Am, tol)
    margin = zero_margin(C, tol)
    eps = max(0.0, -margin) / scale
    vt = tol.verdict_tol * scale

    if margin >= -vt:
        rw = nr_witness(C, 0.0, tol=max(vt, 1e-12 * scale))
        x0 = nab.basis @ rw.vector
        x0 = x0 / np.linalg.norm(x0)
        ip = inner(Tm @ x0, Am @ x0)
        return OrthVerdict(
            orthogonal=Verdict.TRUE,
            epsilon_min=eps,
            witness=x0,
            inner_product_at_witness=ip,
            method="compression",
            residuals={
                "range_margin": margin,
                "witness_inner_product": abs(ip),
                "witness_norming_defect": nab.norm - float(np.linalg.norm(Tm @ x0)),
            },
        )
    verdict = Verdict.FALSE if margin < -3.0 * vt else Verdict.INCONCLUSIVE
    return OrthVerdict(
        orthogonal=verdict,
        epsilon_min=eps,
        witness=None,
        inner_product_at_witness=None,
        method="compression",
        residuals={"range_margin": margin},
    )


def epsilon_min(T, A, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Least eps in [0, 1) with T approximately BJ-orthogonal to A.

    Equals dist(0, W(M^* A^* T M)) / (||T|| ||A||); zero exactly when the
    pair is orthogonal.  Zero operators give 0 by convention.
    """
    Tm = ensure_matrix(T, name="T")
    Am = ensure_matrix(A, name="A")
    if Tm.shape != Am.shape:
        raise MatrixFormatError(f"shape mismatch: T is {Tm.shape}, A is {Am.shape}")
    if op_norm(Tm) == 0.0 or op_norm(Am) == 0.0:
        return 0.0
    C, _, scale = _compression(Tm, Am, tol)
    margin = zero_margin(C, tol)
    return min(max(0.0, -margin) / scale, 1.0)


def is_approx_orthogonal(
    T, A, eps: float, tol: ToleranceConfig = DEFAULT_TOL
) -> Verdict:
    """Three-valued test of eps-approximate BJ orthogonality."""
    eps = float(eps)
    if not (0.0 <= eps < 1.0):
        raise ValueError(f"eps must lie in [0, 1), got {eps}")
    e_min = epsilon_min(T, A, tol)
    if eps >= e_min - tol.verdict_tol:
        return Verdict.TRUE
    if eps < e_min - 2.0 * tol.verdict_tol:
        return Verdict.FALSE
    return Verdict.INCONCLUSIVE


# ---------------------------------------------------------------------------
# grid oracles: definitional lambda-minimization, independent of the
# compression machinery above
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridOracleConfig:
    """Search configuration for the lambda-grid oracles.

    radius defaults to 4 ||T|| / ||A||: outside half that radius the reverse
    triangle inequality already forces ||T + lambda A|| >= ||T||, so the
    minimizer is interior.
    """

    radius: float | None = None
    coarse_points: int = 4096
    refine_iters: int = 40

    def __post_init__(self) -> None:
        if self.radius is not None and not self.radius > 0.0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if self.coarse_points < 256:
            raise ValueError(f"coarse_points must be at least 256, got {self.coarse_points}")
        if self.refine_iters < 0:
            raise ValueError("refine_iters must be nonnegative")


def _resolve_radius(cfg: GridOracleConfig, T: np.ndarray, A: np.ndarray) -> float:
    if cfg.radius is not None:
        return cfg.radius
    nt, na = op_norm(T), op_norm(A)
    if na == 0.0:
        return 1.0
    return max(4.0 * nt / na, 1e-6)


def _batch_opnorm(T: np.ndarray, A: np.ndarray, lams: np.ndarray) -> np.ndarray:
    stack = T[None, :, :] + lams[:, None, None] * A[None, :, :]
    return np.linalg.svd(stack, compute_uv=False)[:, 0]


def bj_grid_oracle(
    T, A, cfg: GridOracleConfig = GridOracleConfig()
) -> tuple[float, complex]:
    """min over complex lambda of ||T + lambda A||, with its argmin.

    Coarse polar grid (lambda = 0 included) followed by compass-search
    refinement; the objective is convex in lambda, so the refinement
    converges to the global minimum.  T perp_B A exactly when the returned
    minimum is ||T|| (up to tolerance).
    """
    Tm = ensure_matrix(T, name="T")
    Am = ensure_matrix(A, name="A")
    if Tm.shape != Am.shape:
        raise MatrixFormatError(f"shape mismatch: T is {Tm.shape}, A is {Am.shape}")
    if op_norm(Am) == 0.0:
        return op_norm(Tm), 0.0 + 0.0j

    radius = _resolve_radius(cfg, Tm, Am)
    n_phi = 64
    n_r = max(cfg.coarse_points // n_phi, 4)
    radii = np.linspace(0.0, radius, n_r + 1)[1:]
    phis = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    lams = np.concatenate([[0.0 + 0.0j], (radii[:, None] * np.exp(1j * phis)[None, :]).ravel()])
    vals = _batch_opnorm(Tm, Am, lams)
    k = int(np.argmin(vals))
    best_lam, best_val = complex(lams[k]), float(vals[k])

    step = radius / n_r
    for _ in range(cfg.refine_iters):
        offs = np.array([step, -step, 1j * step, -1j * step])
        cand = best_lam + offs
        cv = _batch_opnorm(Tm, Am, cand)
        j = int(np.argmin(cv))
        if cv[j] < best_val:
            best_val, best_lam = float(cv[j]), complex(cand[j])
        else:
            step *= 0.5
    return best_val, best_lam


def approx_grid_oracle(T, A, cfg: GridOracleConfig = GridOracleConfig()) -> float:
    """Definitional least eps: sup over lambda != 0 of
    (||T||^2 - ||T + lambda A||^2) / (2 ||T|| ||lambda A||), clamped to [0, 1).

    The supremum can be attained in the limit lambda -> 0, so the grid mixes
    logarithmically small radii with the coarse search region before a local
    refinement in (log radius, phase) coordinates.
    """
    Tm = ensure_matrix(T, name="T")
    Am = ensure_matrix(A, name="A")
    if Tm.shape != Am.shape:
        raise MatrixFormatError(f"shape mismatch: T is {Tm.shape}, A is {Am.shape}")
    nt, na = op_norm(Tm), op_norm(Am)
    if nt == 0.0 or na == 0.0:
        return 0.0

    radius = _resolve_radius(cfg, Tm, Am)
    n_phi = 64
    n_r = max(cfg.coarse_points // n_phi, 8)
    radii = np.geomspace(radius * 1e-6, radius, n_r)
    phis = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    lams = (radii[:, None] * np.exp(1j * phis)[None, :]).ravel()

    def g_batch(ls: np.ndarray) -> np.ndarray:
        norms = _batch_opnorm(Tm, Am, ls)
        return (nt * nt - norms * norms) / (2.0 * nt * na * np.abs(ls))

    vals = g_batch(lams)
    k = int(np.argmax(vals))
    best_val = float(vals[k])
    best_logr, best_phi = float(np.log(np.abs(lams[k]))), float(np.angle(lams[k]))

    dlr, dphi = np.log(radii[1] / radii[0]), phis[1] - phis[0]
    for _ in range(cfg.refine_iters):
        cand = [
            (best_logr + dlr, best_phi),
            (best_logr - dlr, best_phi),
            (best_logr, best_phi + dphi),
            (best_logr, best_phi - dphi),
        ]
        ls = np.array([np.exp(lr) * np.exp(1j * ph) for lr, ph in cand])
        cv = g_batch(ls)
        j = int(np.argmax(cv))
        if cv[j] > best_val:
            best_val = float(cv[j])
            best_logr, best_phi = cand[j]
        else:
            dlr *= 0.5
            dphi *= 0.5
    return float(np.clip(best_val, 0.0, np.nextafter(1.0, 0.0)))


def norm_preserving_extension(T, pad: int) -> np.ndarray:
    """Block extension T (+) 0_pad: same norm, compresses back to T."""
    Tm = ensure_matrix(T, name="T")
    pad = int(pad)
    if pad < 0:
        raise ValueError(f"pad must be nonnegative, got {pad}")
    m, n = Tm.shape
    out = np.zeros((m + pad, n + pad), dtype=np.complex128)
    out[:m, :n] = Tm
    return out
