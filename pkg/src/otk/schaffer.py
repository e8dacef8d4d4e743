"""Unitary dilation windows of Schaffer type.

A contraction T embeds in the unitary Halmos block [[D_T, -T^*], [T, D_T*]];
stacking that block into a cyclic shift on m slot copies of the ground space
gives a finite window onto the doubly-infinite Schaffer dilation.  Cyclic
closure keeps the window operator exactly unitary at the price of the power
identity T^n = P_H U^n|_H holding only for n <= m - 2, before the shift wraps
back into the home block; every window records that bound.

Orthogonality of the infinite dilations is decided without any window at all:
it is equivalent to the numerical range of the 2d x 2d product A_U^* T_U
meeting the non-positive real axis, which is finite, exact, and checked here
by the ray probe.  Windowed pairs serve as convergence evidence; the inner
product of windowed dilations at any unit vector equals a convex mix of 1 and
a Halmos-block form value, so their epsilon_min is constant in m.

The remaining constructions force orthogonality of dilations when the
contractions themselves are not orthogonal: free unitary parameters on the
shift band, a sign-flipped block pairing, and the adjoint trick.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .matcore import (
    DEFAULT_TOL,
    MatrixFormatError,
    ToleranceConfig,
    block_grid,
    ensure_matrix,
    inner,
    matrix_from_json,
    matrix_to_json,
    op_norm,
)
from .bjorth import OrthVerdict, is_bj_orthogonal
from .numrange import (
    Verdict,
    _convex_hull,
    _hull_signed_margin,
    _normal_eigs,
    nr_witness,
    ray_probe,
)

__all__ = [
    "HalmosBlock",
    "DilationWindow",
    "GeneralizedParams",
    "PowerDilationReport",
    "HatWitnessReport",
    "defect_pair",
    "halmos_block",
    "schaffer_window",
    "verify_power_dilation",
    "halmos_orth_criterion",
    "generalized_schaffer",
    "forced_orthogonal_pair",
    "hat_pair",
    "adjoint_trick_pair",
]


def _require_contraction(T: np.ndarray, tol: ToleranceConfig, name: str) -> float:
    nt = op_norm(T)
    if nt > 1.0 + tol.structural_tol:
        raise ValueError(f"{name} is not a contraction: norm {nt:.12g} exceeds 1")
    return nt


def defect_pair(T, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Defect operators (D_T, D_T*) = (sqrt(I - T^*T), sqrt(I - TT^*)).

    Both square roots are assembled from one SVD of T, so the intertwining
    identity T D_T = D_T* T holds to machine precision even at unit norm.
    Separate Hermitian square roots lose half the digits there: an eigenvalue
    error of order eps under the sqrt becomes sqrt(eps) next to a zero of
    I - T^*T.  Norms up to 1 + structural_tol are tolerated; the clip below
    absorbs the slack.
    """
    A = ensure_matrix(T, name="T")
    _require_contraction(A, tol, "T")
    m, n = A.shape
    U, s, Vh = np.linalg.svd(A)
    vals = np.sqrt(np.clip(1.0 - s * s, 0.0, None))
    right = np.ones(n)
    right[: len(vals)] = vals
    left = np.ones(m)
    left[: len(vals)] = vals
    D_T = (Vh.conj().T * right) @ Vh
    D_Tstar = (U * left) @ U.conj().T
    return D_T, D_Tstar


@dataclass(frozen=True)
class HalmosBlock:
    """2d x 2d unitary [[D_T, -T^*], [T, D_T*]] built on a contraction T.

    sign_flipped selects the variant [[-D_T, T^*], [T, D_T*]], which is
    unitary by the same intertwining identity T D_T = D_T* T.
    """

    T: np.ndarray
    D_T: np.ndarray
    D_Tstar: np.ndarray
    block: np.ndarray
    sign_flipped: bool = False

    @property
    def dim(self) -> int:
        return self.T.shape[0]


def halmos_block(T, sign_flipped: bool = False, tol: ToleranceConfig = DEFAULT_TOL) -> HalmosBlock:
    A = ensure_matrix(T, square=True, name="T")
    D_T, D_Tstar = defect_pair(A, tol)
    d = A.shape[0]
    sgn = -1.0 if sign_flipped else 1.0
    block = np.block([[sgn * D_T, -sgn * A.conj().T], [A, D_Tstar]])
    res = np.linalg.norm(block.conj().T @ block - np.eye(2 * d), 2)
    if res > tol.structural_tol:
        raise ValueError(f"Halmos block failed unitarity check (residual {res:.3e})")
    return HalmosBlock(T=A, D_T=D_T, D_Tstar=D_Tstar, block=block, sign_flipped=sign_flipped)


@dataclass(frozen=True)
class DilationWindow:
    """Finite unitary window onto a dilation.

    The ground space H sits at rows home_start .. home_start + home_dim - 1 of
    the md-dimensional window space (for standard windows that is slot `home`
    and home_dim = slot_dim).  rho scales the compression: the contraction
    satisfies T^n = rho * P_H operator^n |_H for 1 <= n <= valid_powers.
    """

    slot_dim: int
    slots: int
    home: int
    operator: np.ndarray
    rho: float = 1.0
    valid_powers: int = 0
    home_dim: int | None = None
    home_start: int | None = None

    def __post_init__(self) -> None:
        if self.home_dim is None:
            object.__setattr__(self, "home_dim", self.slot_dim)
        if self.home_start is None:
            object.__setattr__(self, "home_start", self.home * self.slot_dim)

    @property
    def dim(self) -> int:
        return self.slot_dim * self.slots

    def embed(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.complex128).ravel()
        if x.size != self.home_dim:
            raise ValueError(f"vector length {x.size} does not match home dimension {self.home_dim}")
        out = np.zeros(self.dim, dtype=np.complex128)
        out[self.home_start : self.home_start + self.home_dim] = x
        return out

    def project(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.complex128).ravel()
        return v[self.home_start : self.home_start + self.home_dim]

    def power_compression(self, n: int) -> np.ndarray:
        """P_H operator^n |_H as a home_dim x home_dim matrix (no rho factor)."""
        if n < 0:
            raise ValueError("power must be nonnegative")
        U = np.linalg.matrix_power(self.operator, n)
        sl = slice(self.home_start, self.home_start + self.home_dim)
        return U[sl, sl]

    def to_json_dict(self) -> dict:
        return {
            "slot_dim": self.slot_dim,
            "slots": self.slots,
            "home": self.home,
            "rho": float(self.rho),
            "operator": matrix_to_json(self.operator),
            "valid_powers": self.valid_powers,
            "home_dim": self.home_dim,
            "home_start": self.home_start,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "DilationWindow":
        try:
            op = matrix_from_json(data["operator"])
            w = cls(
                slot_dim=int(data["slot_dim"]),
                slots=int(data["slots"]),
                home=int(data["home"]),
                operator=op,
                rho=float(data["rho"]),
                valid_powers=int(data.get("valid_powers", 0)),
                home_dim=int(data["home_dim"]) if "home_dim" in data else None,
                home_start=int(data["home_start"]) if "home_start" in data else None,
            )
        except KeyError as exc:
            raise MatrixFormatError(f"window JSON missing key {exc}") from exc
        if op.shape != (w.dim, w.dim):
            raise MatrixFormatError(
                f"operator shape {op.shape} does not match slot_dim*slots = {w.dim}"
            )
        return w


def _assemble_cyclic(
    home_block: np.ndarray,
    d: int,
    m: int,
    home: int,
    shift_cells: dict[int, np.ndarray] | None = None,
) -> np.ndarray:
    """Cyclic shift window with a 2d x 2d block at columns (home, home+1).

    The block occupies rows (home-1, home); every other column j carries a
    d x d unitary (identity by default) at row (j-1) mod m, so the matrix
    stays exactly unitary and content re-enters the home block only after
    m - 2 applications.
    """
    cells: dict[tuple[int, int], np.ndarray] = {
        ((home - 1) % m, home): home_block[:d, :d],
        ((home - 1) % m, (home + 1) % m): home_block[:d, d:],
        (home, home): home_block[d:, :d],
        (home, (home + 1) % m): home_block[d:, d:],
    }
    eye = np.eye(d, dtype=np.complex128)
    for j in range(m):
        if j in (home, (home + 1) % m):
            continue
        cell = eye if shift_cells is None or j not in shift_cells else shift_cells[j]
        cells[((j - 1) % m, j)] = cell
    return block_grid(m, cells)


def schaffer_window(
    T, m: int, rho: float = 1.0, tol: ToleranceConfig = DEFAULT_TOL
) -> DilationWindow:
    """Cyclically closed Schaffer window of a contraction on m slots.

    Only rho = 1 admits this closed form (the defect square root needs
    ||T|| <= rho = 1); rho-dilations beyond that come from the permutation
    construction in the rho module.
    """
    A = ensure_matrix(T, square=True, name="T")
    if m < 4:
        raise ValueError(f"window needs at least 4 slots, got m = {m}")
    if abs(rho - 1.0) > 1e-12:
        raise ValueError("schaffer_window only constructs rho = 1 dilations")
    hb = halmos_block(A, sign_flipped=False, tol=tol)
    d = A.shape[0]
    home = m // 2
    op = _assemble_cyclic(hb.block, d, m, home)
    return DilationWindow(
        slot_dim=d, slots=m, home=home, operator=op, rho=1.0, valid_powers=m - 2
    )


@dataclass(frozen=True)
class PowerDilationReport:
    residuals: tuple[float, ...]
    n_max: int
    tol: float
    passed: bool


def verify_power_dilation(
    window: DilationWindow, T, n_max: int | None = None, tol: float = 1e-7
) -> PowerDilationReport:
    """Check T^n = rho * P_H U^n |_H for n = 0..n_max (n = 0 compares I to I)."""
    A = ensure_matrix(T, square=True, name="T")
    if A.shape[0] != window.home_dim:
        raise ValueError(
            f"T has dimension {A.shape[0]} but the window home is {window.home_dim}"
        )
    if n_max is None:
        n_max = window.valid_powers
    if n_max > window.valid_powers:
        raise ValueError(
            f"window too small: power {n_max} needs at least m = {n_max + 2} slots, "
            f"this window guarantees {window.valid_powers}"
        )
    residuals = []
    sl = slice(window.home_start, window.home_start + window.home_dim)
    U = np.eye(window.dim, dtype=np.complex128)
    Tn = np.eye(window.home_dim, dtype=np.complex128)
    for n in range(n_max + 1):
        factor = 1.0 if n == 0 else window.rho
        residuals.append(float(np.linalg.norm(Tn - factor * U[sl, sl], 2)))
        U = window.operator @ U
        Tn = A @ Tn
    passed = all(r <= tol for r in residuals)
    return PowerDilationReport(
        residuals=tuple(residuals), n_max=n_max, tol=tol, passed=passed
    )


def halmos_orth_criterion(T, A, tol: ToleranceConfig = DEFAULT_TOL) -> OrthVerdict:
    """Decide orthogonality of the infinite Schaffer dilations of T and A.

    The dilations are orthogonal exactly when W(A_U^* T_U) of the Halmos
    blocks meets the non-positive real axis.  The block product is unitary,
    so its range is the eigenvalue hull and the probe is exact.  The reported
    epsilon_min is dist(0, conv({1} union W(A_U^* T_U))), which equals the
    epsilon_min of every cyclically closed window pair (their inner products
    are convex mixes of 1 with block form values) and is the approximate-
    orthogonality floor of the dilation pair.
    """
    Tm = ensure_matrix(T, square=True, name="T")
    Am = ensure_matrix(A, square=True, name="A")
    if Tm.shape != Am.shape:
        raise MatrixFormatError(f"shape mismatch: T is {Tm.shape}, A is {Am.shape}")
    _require_contraction(Tm, tol, "T")
    _require_contraction(Am, tol, "A")
    TU = halmos_block(Tm, tol=tol).block
    AU = halmos_block(Am, tol=tol).block
    B = AU.conj().T @ TU

    probe = ray_probe(B, tol)
    eigs, _ = _normal_eigs(B)
    pts = np.concatenate([eigs, [1.0 + 0.0j]])
    hull = pts[_convex_hull(pts)]
    eps_floor = max(0.0, -_hull_signed_margin(0.0, hull))

    vt = tol.verdict_tol
    residuals = {"ray_margin": probe.margin, "dilation_eps_floor": eps_floor}
    if probe.margin >= -vt:
        target = probe.leftmost if probe.leftmost is not None else min(probe.witness_point, 0.0)
        rw = nr_witness(B, complex(target), tol=max(vt, 1e-9))
        residuals["witness_imag"] = abs(rw.point.imag)
        residuals["witness_positive_part"] = max(0.0, rw.point.real)
        return OrthVerdict(
            orthogonal=Verdict.TRUE,
            epsilon_min=eps_floor,
            witness=rw.vector,
            inner_product_at_witness=rw.point,
            method="halmos-block",
            residuals=residuals,
        )
    verdict = Verdict.FALSE if probe.margin < -3.0 * vt else Verdict.INCONCLUSIVE
    return OrthVerdict(
        orthogonal=verdict,
        epsilon_min=eps_floor,
        witness=None,
        inner_product_at_witness=None,
        method="halmos-block",
        residuals=residuals,
    )


@dataclass(frozen=True)
class GeneralizedParams:
    """Free unitary parameters of the generalized Schaffer construction.

    U1, U2 twist the home block; Y_seq rides the shift band before the home
    slot (paper offsets -1 .. -home), X_seq after it (offsets 2 .. m-home-1).
    Lengths must match the window exactly: len(Y_seq) = home and
    len(X_seq) = m - home - 2.
    """

    U1: np.ndarray
    U2: np.ndarray
    X_seq: tuple[np.ndarray, ...] = ()
    Y_seq: tuple[np.ndarray, ...] = ()


def _check_unitary(M: np.ndarray, name: str, tol: ToleranceConfig) -> np.ndarray:
    M = ensure_matrix(M, square=True, name=name)
    res = float(np.linalg.norm(M.conj().T @ M - np.eye(M.shape[0]), 2))
    if res > tol.structural_tol:
        raise ValueError(f"{name} is not unitary (residual {res:.3e})")
    return M


def generalized_schaffer(
    T, params: GeneralizedParams, m: int, tol: ToleranceConfig = DEFAULT_TOL
) -> DilationWindow:
    """Schaffer-type window with free unitaries on the home block and shift band.

    Home 2x2 block [[U2 D_T, -U2 T^* U1], [T, D_T* U1]]; column home+1+k
    carries X_seq[k-1] and column home-k carries Y_seq[k-1] (cyclically).
    Any unitary choices keep the window unitary and the power identity intact.
    """
    A = ensure_matrix(T, square=True, name="T")
    if m < 4:
        raise ValueError(f"window needs at least 4 slots, got m = {m}")
    d = A.shape[0]
    home = m // 2
    U1 = _check_unitary(params.U1, "U1", tol)
    U2 = _check_unitary(params.U2, "U2", tol)
    if U1.shape[0] != d or U2.shape[0] != d:
        raise ValueError("U1/U2 dimension does not match T")
    if len(params.Y_seq) != home:
        raise ValueError(f"Y_seq must have length {home} (home slots), got {len(params.Y_seq)}")
    if len(params.X_seq) != m - home - 2:
        raise ValueError(
            f"X_seq must have length {m - home - 2} (post-home slots), got {len(params.X_seq)}"
        )

    D_T, D_Tstar = defect_pair(A, tol)
    block = np.block(
        [[U2 @ D_T, -U2 @ A.conj().T @ U1], [A, D_Tstar @ U1]]
    )
    res = np.linalg.norm(block.conj().T @ block - np.eye(2 * d), 2)
    if res > tol.structural_tol:
        raise ValueError(f"generalized home block failed unitarity (residual {res:.3e})")

    shift_cells: dict[int, np.ndarray] = {}
    for k, Y in enumerate(params.Y_seq):
        col = (home - 1 - k) % m
        shift_cells[col] = _check_unitary(Y, f"Y_seq[{k}]", tol)
        if shift_cells[col].shape[0] != d:
            raise ValueError(f"Y_seq[{k}] dimension does not match T")
    for k, X in enumerate(params.X_seq):
        col = (home + 2 + k) % m
        shift_cells[col] = _check_unitary(X, f"X_seq[{k}]", tol)
        if shift_cells[col].shape[0] != d:
            raise ValueError(f"X_seq[{k}] dimension does not match T")

    op = _assemble_cyclic(block, d, m, home, shift_cells)
    return DilationWindow(
        slot_dim=d, slots=m, home=home, operator=op, rho=1.0, valid_powers=m - 2
    )


def _identity_params(d: int, m: int) -> GeneralizedParams:
    home = m // 2
    eye = np.eye(d, dtype=np.complex128)
    return GeneralizedParams(
        U1=eye,
        U2=eye,
        X_seq=tuple(eye for _ in range(m - home - 2)),
        Y_seq=tuple(eye for _ in range(home)),
    )


def forced_orthogonal_pair(
    T, A, m: int, k0: int, tol: ToleranceConfig = DEFAULT_TOL
) -> tuple[DilationWindow, DilationWindow, np.ndarray]:
    """Window pair that is orthogonal regardless of whether T perp A.

    The T window keeps the identity at shift slot k0 while the A window gets
    the e1/e2 swap there; the unit vector h = e1 at slot k0 then satisfies
    <U_T h, U_A h> = <e1, e2> = 0 exactly, so the unitary windows are
    BJ-orthogonal with h as witness.
    """
    Tm = ensure_matrix(T, square=True, name="T")
    Am = ensure_matrix(A, square=True, name="A")
    if Tm.shape != Am.shape:
        raise MatrixFormatError(f"shape mismatch: T is {Tm.shape}, A is {Am.shape}")
    d = Tm.shape[0]
    if d < 2:
        raise ValueError("the swap construction needs slot dimension >= 2")
    home = m // 2
    if not 0 <= k0 < m:
        raise ValueError(f"k0 must be a slot index in [0, {m}), got {k0}")
    if k0 in (home, (home + 1) % m):
        raise ValueError(f"k0 = {k0} is a home slot; pick a shift slot")

    params_T = _identity_params(d, m)
    swap = np.eye(d, dtype=np.complex128)
    swap[[0, 1]] = swap[[1, 0]]
    y_seq = list(params_T.Y_seq)
    x_seq = list(params_T.X_seq)
    if k0 < home:
        y_seq[home - 1 - k0] = swap
    else:
        x_seq[k0 - home - 2] = swap
    params_A = GeneralizedParams(
        U1=params_T.U1, U2=params_T.U2, X_seq=tuple(x_seq), Y_seq=tuple(y_seq)
    )

    wT = generalized_schaffer(Tm, params_T, m, tol)
    wA = generalized_schaffer(Am, params_A, m, tol)
    h = np.zeros(wT.dim, dtype=np.complex128)
    h[k0 * d] = 1.0
    return wT, wA, h


@dataclass(frozen=True)
class HatWitnessReport:
    """Witness data for the sign-flipped nested-window construction.

    value is the achieved <U_T h, U_A h> on the combined witness; predicted is
    the closed form <N_T X, N_A X> / (1 + beta) evaluated directly.  For a
    BJ-orthogonal input pair both vanish, certifying orthogonality of the
    nested windows even where the plain Schaffer dilations fail to be
    orthogonal.
    """

    beta: float
    value: complex
    predicted: complex
    prediction_residual: float
    witness: np.ndarray
    inner_witness: np.ndarray


def hat_pair(
    T,
    A,
    inner_m: int = 6,
    outer_m: int = 6,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> tuple[DilationWindow, DilationWindow, HatWitnessReport]:
    """Orthogonal dilation pair for any BJ-orthogonal contractions T, A.

    Normalizes each contraction, dilates it on an inner window, and rescales:
    N_T = ||T|| * window(T/||T||) has exactly scalar defect sqrt(1-||T||^2) I.
    The outer windows stack the standard block of N_T against the sign-flipped
    block of N_A.  With beta = sqrt(1-||T||^2) sqrt(1-||A||^2), the witness
    mixes a shift-slot unit vector with the embedded BJ witness of (T, A);
    the block cross terms then cancel the shift contribution, leaving only
    <N_T X, N_A X> / (1 + beta), which vanishes because the BJ witness is
    norming (killing the inner defect) and has orthogonal images.
    """
    Tm = ensure_matrix(T, square=True, name="T")
    Am = ensure_matrix(A, square=True, name="A")
    if Tm.shape != Am.shape:
        raise MatrixFormatError(f"shape mismatch: T is {Tm.shape}, A is {Am.shape}")
    if inner_m < 4 or outer_m < 4:
        raise ValueError("inner_m and outer_m must be at least 4")
    nt = _require_contraction(Tm, tol, "T")
    na = _require_contraction(Am, tol, "A")
    if nt <= 1e-14 or na <= 1e-14:
        raise ValueError("hat_pair needs nonzero contractions")
    verdict = is_bj_orthogonal(Tm, Am, tol)
    if verdict.orthogonal is not Verdict.TRUE:
        raise ValueError(
            "hat_pair needs T perp_B A; is_bj_orthogonal returned "
            f"{verdict.orthogonal.value} (epsilon_min {verdict.epsilon_min:.3e})"
        )

    VT = schaffer_window(Tm / nt, inner_m, tol=tol)
    VA = schaffer_window(Am / na, inner_m, tol=tol)
    N_T = nt * VT.operator
    N_A = na * VA.operator
    nd = N_T.shape[0]
    dT = math.sqrt(max(0.0, 1.0 - nt * nt))
    dA = math.sqrt(max(0.0, 1.0 - na * na))
    for N, dval, name in ((N_T, dT, "N_T"), (N_A, dA, "N_A")):
        res = np.linalg.norm(
            (np.eye(nd) - N.conj().T @ N) - (dval * dval) * np.eye(nd), 2
        )
        if res > tol.structural_tol:
            raise ValueError(f"{name} defect is not scalar (residual {res:.3e})")

    block_T = np.block([[dT * np.eye(nd), -N_T.conj().T], [N_T, dT * np.eye(nd)]])
    block_A = np.block([[-dA * np.eye(nd), N_A.conj().T], [N_A, dA * np.eye(nd)]])
    for blk, name in ((block_T, "hat block of N_T"), (block_A, "hat block of N_A")):
        res = np.linalg.norm(blk.conj().T @ blk - np.eye(2 * nd), 2)
        if res > tol.structural_tol:
            raise ValueError(f"{name} failed unitarity (residual {res:.3e})")

    home = outer_m // 2
    opT = _assemble_cyclic(block_T, nd, outer_m, home)
    opA = _assemble_cyclic(block_A, nd, outer_m, home)
    wT = DilationWindow(
        slot_dim=nd, slots=outer_m, home=home, operator=opT, rho=1.0, valid_powers=outer_m - 2
    )
    wA = DilationWindow(
        slot_dim=nd, slots=outer_m, home=home, operator=opA, rho=1.0, valid_powers=outer_m - 2
    )

    x = verdict.witness
    X = VT.embed(x)
    beta = dT * dA
    h_prime = wT.embed(X)
    h_shift = np.zeros(wT.dim, dtype=np.complex128)
    h_shift[((home - 1) % outer_m) * nd] = 1.0
    h_tilde = math.sqrt(beta / (1.0 + beta)) * h_shift + math.sqrt(1.0 / (1.0 + beta)) * h_prime
    h_tilde = h_tilde / np.linalg.norm(h_tilde)

    value = inner(opT @ h_tilde, opA @ h_tilde)
    predicted = inner(N_T @ X, N_A @ X) / (1.0 + beta)
    report = HatWitnessReport(
        beta=beta,
        value=value,
        predicted=predicted,
        prediction_residual=abs(value - predicted),
        witness=h_tilde,
        inner_witness=x,
    )
    return wT, wA, report


def adjoint_trick_pair(
    T, A, m: int, x: np.ndarray | None = None, tol: ToleranceConfig = DEFAULT_TOL
) -> tuple[DilationWindow, DilationWindow, np.ndarray]:
    """Dilation pair orthogonal for ANY contractions T, A: U_T = window(T),
    U_A = adjoint of window(A^*).

    The adjoint window still dilates A.  For unit x the vector h carrying
    D_T x at the home slot and -T x at home+1 satisfies U_T h = x at slot
    home-1 (defect identities), while U_A h keeps its support away from that
    slot, so <U_T h, U_A h> = 0 exactly.
    """
    Tm = ensure_matrix(T, square=True, name="T")
    Am = ensure_matrix(A, square=True, name="A")
    if Tm.shape != Am.shape:
        raise MatrixFormatError(f"shape mismatch: T is {Tm.shape}, A is {Am.shape}")
    if m < 6:
        raise ValueError(
            f"need m >= 6 so the witness slots home-2 .. home+1 avoid wrap, got {m}"
        )
    d = Tm.shape[0]
    wT = schaffer_window(Tm, m, tol=tol)
    w_star = schaffer_window(Am.conj().T, m, tol=tol)
    wA = DilationWindow(
        slot_dim=d,
        slots=m,
        home=w_star.home,
        operator=w_star.operator.conj().T,
        rho=1.0,
        valid_powers=m - 2,
    )

    if x is None:
        x = np.zeros(d, dtype=np.complex128)
        x[0] = 1.0
    x = np.asarray(x, dtype=np.complex128).ravel()
    if x.size != d:
        raise ValueError(f"witness seed has length {x.size}, expected {d}")
    x = x / np.linalg.norm(x)

    D_T, _ = defect_pair(Tm, tol)
    home = wT.home
    h = np.zeros(wT.dim, dtype=np.complex128)
    h[home * d : (home + 1) * d] = D_T @ x
    h[(home + 1) * d : (home + 2) * d] = -(Tm @ x)
    h = h / np.linalg.norm(h)
    return wT, wA, h
