"""Unitary rho-dilations on finite index windows.

A rho-dilation of X on a window is a unitary U with
rho * P_H U^n |_H = X^n for n in the window's valid power range.  For
rho = 1 this is the usual power dilation; larger rho trades the scalar
factor for extra freedom in U.

Contents:

* permutation-shift dilations of a nilpotent 4x4 pair built from two
  explicit bijections of the integers, truncated to a symmetric index
  window with cyclic wrap-around,
* the approximation bound kappa = eta0 * sqrt(1 - ||T||^2 / rho^2)
  that controls how nearly orthogonal a dilation pair can be made when
  the compressed pair is orthogonal, and
* a transfer report checking orthogonality of T against A, the exact
  first-power identity ||Tx - rho*U x||^2 = rho^2 - ||Tx||^2 on norming
  vectors, and zero-membership for the numerical range of U_A* U_T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bjorth import OrthVerdict, epsilon_min, is_bj_orthogonal, norm_attainment_basis
from .matcore import DEFAULT_TOL, ToleranceConfig, ensure_matrix, inner, matrix_to_json, op_norm
from .numrange import Verdict, ZeroVerdict, nr_boundary, nr_contains_zero
from .schaffer import DilationWindow, PowerDilationReport, verify_power_dilation

__all__ = [
    "PermutationSpec",
    "KappaReport",
    "RhoExampleReport",
    "RhoExampleBundle",
    "TransferReport",
    "shift_map_a",
    "shift_map_b",
    "permutation_window",
    "unitary_from_permutation",
    "kappa_bound",
    "nilpotent_rho_example",
    "rho_orth_transfer_check",
]


def shift_map_a(m: int) -> int:
    """Bijection of the integers: m + 2 outside a finite rearranged block."""
    table = {-1: 4, 0: 1, 1: 2, 2: 5, 3: 6, 4: 3}
    if m in table:
        return table[m]
    return m + 2


def shift_map_b(m: int) -> int:
    """Bijection of the integers: m + 3 outside a finite rearranged block."""
    table = {-2: 4, -1: 3, 0: 1, 1: 2}
    if m in table:
        return table[m]
    return m + 3


_BASE_MAPS: dict[str, Callable[[int], int]] = {"f": shift_map_a, "g": shift_map_b}


@dataclass(frozen=True)
class PermutationSpec:
    """A bijection of the index window [-W, W], wrap-closed.

    ``mapping`` sends each retained index to another retained index;
    indices pushed past the window edge by the underlying integer map
    re-enter cyclically.  ``label`` names the underlying map ("f" or
    "g").  Bijectivity is checked exhaustively on construction.
    """

    window: int
    mapping: dict[int, int]
    label: str

    def __post_init__(self) -> None:
        w = self.window
        idx = range(-w, w + 1)
        if sorted(self.mapping) != list(idx):
            raise ValueError("permutation domain must be the full index window")
        if sorted(self.mapping.values()) != list(idx):
            raise ValueError(f"map {self.label} is not a bijection on the window")

    @property
    def size(self) -> int:
        return 2 * self.window + 1

    def position(self, index: int) -> int:
        """Array position of a window index (index -W sits at 0)."""
        if not -self.window <= index <= self.window:
            raise ValueError(f"index {index} outside window [{-self.window}, {self.window}]")
        return index + self.window

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "window": self.window,
            "map": {str(i): self.mapping[i] for i in sorted(self.mapping)},
        }


def permutation_window(label: str, window: int) -> PermutationSpec:
    """Truncate one of the integer bijections to [-W, W] with wrap-around."""
    if label not in _BASE_MAPS:
        raise ValueError(f"unknown permutation label {label!r}; use 'f' or 'g'")
    if window < 1:
        raise ValueError("window must be a positive integer")
    base = _BASE_MAPS[label]
    size = 2 * window + 1

    def wrap(i: int) -> int:
        return (i + window) % size - window

    mapping = {i: wrap(base(i)) for i in range(-window, window + 1)}
    return PermutationSpec(window=window, mapping=mapping, label=label)


def unitary_from_permutation(spec: PermutationSpec) -> np.ndarray:
    """Permutation matrix U with U e_{pos(i)} = e_{pos(map(i))}."""
    n = spec.size
    u = np.zeros((n, n), dtype=np.complex128)
    for i, j in spec.mapping.items():
        u[spec.position(j), spec.position(i)] = 1.0
    return u


def _orbit_valid_powers(base: Callable[[int], int], window: int, seeds: range) -> int:
    """Largest n such that every k <= n keeps the unwrapped orbit of the
    seed indices inside [-window, window]."""
    current = list(seeds)
    n = 0
    while n < 2 * window + 1:
        current = [base(i) for i in current]
        if any(abs(i) > window for i in current):
            break
        n += 1
    return n


@dataclass(frozen=True)
class KappaReport:
    """Approximate-orthogonality bound for a dilation pair.

    eta1 is sup over norming vectors x of T of sqrt(1 - ||Ax||^2/rho^2),
    computed exactly on the attainment subspace; eta2 is the same with
    both operators replaced by their adjoints.  kappa bounds from above
    the epsilon at which any unitary rho-dilation pair of (T, A) can be
    made approximately orthogonal once T is orthogonal to A.
    """

    rho: float
    eta1: float
    eta2: float
    eta0: float
    kappa: float
    attaining_vectors: tuple[np.ndarray, np.ndarray]

    def to_json_dict(self) -> dict:
        x1, x2 = self.attaining_vectors
        return {
            "rho": self.rho,
            "eta1": self.eta1,
            "eta2": self.eta2,
            "eta0": self.eta0,
            "kappa": self.kappa,
            "attaining_vectors": [
                [[z.real, z.imag] for z in x1],
                [[z.real, z.imag] for z in x2],
            ],
        }


def _eta_on_attainment(
    base_op: np.ndarray, other: np.ndarray, rho: float, tol: ToleranceConfig
) -> tuple[float, np.ndarray]:
    """(eta, attaining unit vector) for one orientation of the bound."""
    n = base_op.shape[0]
    if op_norm(base_op) <= 0.0:
        basis = np.eye(n, dtype=np.complex128)
    else:
        basis = norm_attainment_basis(base_op, tol).basis
    gram = basis.conj().T @ (other.conj().T @ other) @ basis
    gram = 0.5 * (gram + gram.conj().T)
    vals, vecs = np.linalg.eigh(gram)
    lam = float(min(max(vals[0], 0.0), rho * rho))
    eta = math.sqrt(max(0.0, 1.0 - lam / (rho * rho)))
    x = basis @ vecs[:, 0]
    nx = np.linalg.norm(x)
    if nx > 0:
        x = x / nx
    return min(eta, 1.0), x


def kappa_bound(
    T: np.ndarray, A: np.ndarray, rho: float = 1.0, tol: ToleranceConfig = DEFAULT_TOL
) -> KappaReport:
    """Bound kappa = eta0 * sqrt(1 - ||T||^2/rho^2) with eta0 = min(eta1, eta2).

    Requires ||T|| <= rho and ||A|| <= rho; these are necessary for the
    operators to admit unitary rho-dilations at all.
    """
    T = ensure_matrix(T, square=True)
    A = ensure_matrix(A, square=True)
    if T.shape != A.shape:
        raise ValueError("operators must act on the same space")
    if rho <= 0:
        raise ValueError("rho must be positive")
    slack = 1.0 + tol.structural_tol
    if op_norm(T) > rho * slack:
        raise ValueError("||T|| > rho: outside the rho-class necessary condition")
    if op_norm(A) > rho * slack:
        raise ValueError("||A|| > rho: outside the rho-class necessary condition")

    eta1, x1 = _eta_on_attainment(T, A, rho, tol)
    eta2, x2 = _eta_on_attainment(T.conj().T, A.conj().T, rho, tol)
    eta0 = min(eta1, eta2)
    ratio = min(op_norm(T) / rho, 1.0)
    kappa = min(1.0, eta0 * math.sqrt(max(0.0, 1.0 - ratio * ratio)))
    return KappaReport(
        rho=float(rho), eta1=eta1, eta2=eta2, eta0=eta0, kappa=kappa,
        attaining_vectors=(x1, x2),
    )


@dataclass(frozen=True)
class RhoExampleReport:
    """Verification record for the nilpotent permutation-shift pair."""

    rho: float
    power_residuals: dict[str, float]
    a_orth_t: OrthVerdict
    t_orth_a: OrthVerdict
    inner_te1_ae1: complex
    zero_in_product_range: ZeroVerdict
    valid_powers_t: int
    valid_powers_a: int

    @property
    def passed(self) -> bool:
        return (
            all(r <= 1e-10 for r in self.power_residuals.values())
            and self.a_orth_t.orthogonal.is_true
            and self.t_orth_a.orthogonal.is_false
            and abs(self.inner_te1_ae1 - self.rho * self.rho) <= 1e-10
            and self.zero_in_product_range.verdict.is_true
        )


@dataclass(frozen=True)
class RhoExampleBundle:
    T: np.ndarray
    A: np.ndarray
    U_T: DilationWindow
    U_A: DilationWindow
    perm_a: PermutationSpec
    perm_b: PermutationSpec
    report: RhoExampleReport

    def to_json_dict(self) -> dict:
        rep = self.report
        return {
            "rho": rep.rho,
            "T": matrix_to_json(self.T),
            "A": matrix_to_json(self.A),
            "U_T": self.U_T.to_json_dict(),
            "U_A": self.U_A.to_json_dict(),
            "perm_f": self.perm_a.to_json_dict(),
            "perm_g": self.perm_b.to_json_dict(),
            "report": {
                "power_residuals": dict(sorted(rep.power_residuals.items())),
                "a_orth_t": rep.a_orth_t.to_json_dict(),
                "t_orth_a": rep.t_orth_a.to_json_dict(),
                "inner_te1_ae1": [rep.inner_te1_ae1.real, rep.inner_te1_ae1.imag],
                "zero_in_product_range": rep.zero_in_product_range.verdict.value,
                "valid_powers_t": rep.valid_powers_t,
                "valid_powers_a": rep.valid_powers_a,
                "passed": rep.passed,
            },
        }


def nilpotent_rho_example(
    rho: float = 1.0, window: int = 16, tol: ToleranceConfig = DEFAULT_TOL
) -> RhoExampleBundle:
    """Nilpotent 4x4 pair with permutation-shift unitary rho-dilations.

    T maps e1 to rho*e2 and kills the rest; A additionally maps e4 to
    rho*e3.  Both square to zero.  A is orthogonal to T (witness e4,
    which norms A while Ae4 is orthogonal to Te4 = 0), but T is not
    orthogonal to A: the only norming direction of T is e1 and
    <Te1, Ae1> = rho^2.  The dilations are carried by two permutations
    of the index window [-W, W]; the home space is the four indices
    1..4.  The report verifies the dilation identities, both
    orthogonality verdicts, and that 0 lies in the numerical range of
    U_A* U_T, so the dilations themselves are mutually orthogonal.
    """
    if rho <= 0:
        raise ValueError("rho must be positive")
    if window < 12:
        raise ValueError("window too small: need window >= 12 to hold the home indices and their low-power orbits")

    r = float(rho)
    T = np.zeros((4, 4), dtype=np.complex128)
    T[1, 0] = r
    A = np.zeros((4, 4), dtype=np.complex128)
    A[1, 0] = r
    A[2, 3] = r

    perm_a = permutation_window("f", window)  # dilates A
    perm_b = permutation_window("g", window)  # dilates T
    size = 2 * window + 1
    home_start = perm_a.position(1)

    valid_a = _orbit_valid_powers(shift_map_a, window, range(1, 5))
    valid_b = _orbit_valid_powers(shift_map_b, window, range(1, 5))

    U_A = DilationWindow(
        slot_dim=1, slots=size, home=home_start, operator=unitary_from_permutation(perm_a),
        rho=r, valid_powers=valid_a, home_dim=4, home_start=home_start,
    )
    U_T = DilationWindow(
        slot_dim=1, slots=size, home=home_start, operator=unitary_from_permutation(perm_b),
        rho=r, valid_powers=valid_b, home_dim=4, home_start=home_start,
    )

    residuals: dict[str, float] = {}
    for name, win, op, valid in (("T", U_T, T, valid_b), ("A", U_A, A, valid_a)):
        n_max = min(4, valid)
        rep = verify_power_dilation(win, op, n_max=n_max, tol=1e-10)
        for n, res in enumerate(rep.residuals):
            if n >= 1:
                residuals[f"{name}^{n}"] = res

    a_orth_t = is_bj_orthogonal(A, T, tol)
    t_orth_a = is_bj_orthogonal(T, A, tol)
    e1 = np.zeros(4, dtype=np.complex128)
    e1[0] = 1.0
    inner_te1_ae1 = inner(T @ e1, A @ e1)

    product = U_A.operator.conj().T @ U_T.operator
    zero = nr_contains_zero(nr_boundary(product), tol=1e-6)

    report = RhoExampleReport(
        rho=r,
        power_residuals=residuals,
        a_orth_t=a_orth_t,
        t_orth_a=t_orth_a,
        inner_te1_ae1=inner_te1_ae1,
        zero_in_product_range=zero,
        valid_powers_t=valid_b,
        valid_powers_a=valid_a,
    )
    return RhoExampleBundle(T=T, A=A, U_T=U_T, U_A=U_A, perm_a=perm_a, perm_b=perm_b, report=report)


@dataclass(frozen=True)
class TransferReport:
    """Does orthogonality of T against A transfer to a rho-dilation pair?

    The transfer is guaranteed when T norms at rho (||T|| = rho); the
    kappa bound controls the failure mode otherwise.  eq1_residuals
    records |  ||Tx - rho*U_T x||^2 - (rho^2 - ||Tx||^2)  | on each
    attainment basis vector x of T, an identity that is exact whenever
    the window has a valid first power.
    """

    rho: float
    t_orth_a: OrthVerdict
    norm_equals_rho: bool
    eq1_residuals: tuple[float, ...]
    zero_membership: ZeroVerdict
    window_eps: float
    kappa: KappaReport
    eps_within_kappa: bool
    dilation_reports: tuple[PowerDilationReport, PowerDilationReport]

    def to_json_dict(self) -> dict:
        return {
            "rho": self.rho,
            "t_orth_a": self.t_orth_a.to_json_dict(),
            "norm_equals_rho": self.norm_equals_rho,
            "eq1_residuals": list(self.eq1_residuals),
            "zero_membership": self.zero_membership.verdict.value,
            "zero_margin": self.zero_membership.inner_distance,
            "window_eps": self.window_eps,
            "kappa": self.kappa.to_json_dict(),
            "eps_within_kappa": self.eps_within_kappa,
        }


def rho_orth_transfer_check(
    T: np.ndarray,
    A: np.ndarray,
    rho: float,
    U_T: DilationWindow,
    U_A: DilationWindow,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> TransferReport:
    """Check how BJ orthogonality of (T, A) transfers to a dilation pair."""
    T = ensure_matrix(T, square=True)
    A = ensure_matrix(A, square=True)
    same_geometry = (
        U_T.slot_dim == U_A.slot_dim
        and U_T.slots == U_A.slots
        and U_T.home_start == U_A.home_start
        and U_T.home_dim == U_A.home_dim
        and abs(U_T.rho - U_A.rho) <= 1e-12
    )
    if not same_geometry:
        raise ValueError("window geometry mismatch between the two dilations")
    if abs(U_T.rho - rho) > 1e-12:
        raise ValueError("windows were built for a different rho")

    n_check_t = max(1, min(3, U_T.valid_powers))
    n_check_a = max(1, min(3, U_A.valid_powers))
    rep_t = verify_power_dilation(U_T, T, n_max=n_check_t, tol=1e-8)
    rep_a = verify_power_dilation(U_A, A, n_max=n_check_a, tol=1e-8)
    if not (rep_t.passed and rep_a.passed):
        raise ValueError("windows do not dilate the given operators")

    t_orth_a = is_bj_orthogonal(T, A, tol)
    norm_equals_rho = abs(op_norm(T) - rho) <= tol.structural_tol

    nab = norm_attainment_basis(T, tol)
    eq1 = []
    op_t = U_T.operator
    for k in range(nab.dim):
        x = nab.basis[:, k]
        lifted = U_T.embed(x)
        target = U_T.embed(T @ x)
        lhs = float(np.linalg.norm(target - rho * (op_t @ lifted)) ** 2)
        rhs = rho * rho - float(np.linalg.norm(T @ x) ** 2)
        eq1.append(abs(lhs - rhs))

    product = U_A.operator.conj().T @ U_T.operator
    zero = nr_contains_zero(nr_boundary(product), tol=tol.verdict_tol)

    window_eps = epsilon_min(U_T.operator, U_A.operator, tol)
    kappa = kappa_bound(T, A, rho, tol)
    eps_within = window_eps <= kappa.kappa + 1e-3

    return TransferReport(
        rho=float(rho),
        t_orth_a=t_orth_a,
        norm_equals_rho=norm_equals_rho,
        eq1_residuals=tuple(eq1),
        zero_membership=zero,
        window_eps=window_eps,
        kappa=kappa,
        eps_within_kappa=eps_within,
        dilation_reports=(rep_t, rep_a),
    )
