"""Commuting isometric dilations for pairs (T, ST) with S unitary.

For a contraction T and a unitary S commuting with T, the pair
(T, A = ST) admits a pair of commuting isometric dilations built from
three ingredients on a growing slot space:

* a shift-insert map W_X(x0, x1, ...) = (X x0, D_T x0, 0, x1, ...),
  which is isometric because X^*X + D_T^2 = I (the defects of T and ST
  coincide: D_{ST} = D_T since S is unitary),
* a block twist G that applies S^* to the first coordinate of each
  4-group of slots after slot 0, and
* the compositions V_T = G W_T and V_A = W_A G^*.

These commute, dilate the pair (P_H V_T^{n1} V_A^{n2} |_H = T^{n1} A^{n2}),
and whenever the numerical range of S contains a non-positive real beta
there is a unit vector y in the slot space with <V_T y, V_A y> = 0, even
for pairs where neither T nor A is BJ-orthogonal to the other.

The module also houses the sufficient quadratic-form criterion
1 - ||Ty||^2 + <Ty, STy> <= 0 for orthogonality of the infinite
shift dilations, the two-operator Brehmer positivity check, and the
predicate bundle for orthogonal regular unitary dilations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bjorth import OrthVerdict, is_bj_orthogonal
from .matcore import DEFAULT_TOL, ToleranceConfig, ensure_matrix, inner, matrix_to_json, op_norm, qform
from .numrange import (
    Verdict,
    ZeroVerdict,
    maximal_numerical_range,
    nr_boundary,
    nr_contains_zero,
    nr_witness,
    ray_probe,
    zero_margin,
)
from .schaffer import defect_pair

__all__ = [
    "GrowingMap",
    "AndoWitness",
    "AndoBundle",
    "BrehmerReport",
    "RegularOrthReport",
    "shift_insert_map",
    "group_twist",
    "ando_pair",
    "schaffer_ST_criterion",
    "brehmer_check",
    "regular_orth_predicate",
]

_ISOMETRY_LABELS = {"W_T", "W_A", "V_T", "V_A"}
_UNITARY_LABELS = {"G", "Gstar"}


@dataclass(frozen=True)
class GrowingMap:
    """A slot-structured map between spaces of different slot counts.

    operator is an (out_slots*d) x (in_slots*d) matrix.  Maps labelled
    W_T, W_A, V_T, V_A must be isometries; G and Gstar are square
    unitaries.  Validation happens at construction.
    """

    slot_dim: int
    in_slots: int
    out_slots: int
    operator: np.ndarray
    label: str

    def __post_init__(self) -> None:
        d = self.slot_dim
        expected = (self.out_slots * d, self.in_slots * d)
        if self.operator.shape != expected:
            raise ValueError(
                f"{self.label}: operator shape {self.operator.shape} does not match {expected}"
            )
        if self.out_slots < self.in_slots:
            raise ValueError(f"{self.label}: slot count must not shrink")
        gram = self.operator.conj().T @ self.operator
        res = float(np.linalg.norm(gram - np.eye(gram.shape[0]), 2))
        if self.label in _ISOMETRY_LABELS and res > DEFAULT_TOL.structural_tol:
            raise ValueError(f"{self.label}: not an isometry (residual {res:.2e})")
        if self.label in _UNITARY_LABELS:
            if self.in_slots != self.out_slots:
                raise ValueError(f"{self.label}: twist maps must be square")
            if res > DEFAULT_TOL.structural_tol:
                raise ValueError(f"{self.label}: not unitary (residual {res:.2e})")

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "slot_dim": self.slot_dim,
            "in_slots": self.in_slots,
            "out_slots": self.out_slots,
            "operator": matrix_to_json(self.operator),
        }


def _shift_insert_matrix(top: np.ndarray, defect: np.ndarray, m: int) -> np.ndarray:
    """(m+2)d x md matrix of (x0, ..., x_{m-1}) -> (top x0, defect x0, 0, x1, ...)."""
    d = top.shape[0]
    out = np.zeros(((m + 2) * d, m * d), dtype=np.complex128)
    out[0:d, 0:d] = top
    out[d : 2 * d, 0:d] = defect
    for k in range(1, m):
        out[(k + 2) * d : (k + 3) * d, k * d : (k + 1) * d] = np.eye(d)
    return out


def shift_insert_map(top, defect, m: int, label: str) -> GrowingMap:
    """Isometric shift-insert map with `top` and `defect` acting on slot 0."""
    top = ensure_matrix(top, square=True, name="top")
    defect = ensure_matrix(defect, square=True, name="defect")
    if top.shape != defect.shape:
        raise ValueError("top and defect blocks must have equal dimensions")
    if m < 1:
        raise ValueError("need at least one input slot")
    return GrowingMap(
        slot_dim=top.shape[0],
        in_slots=m,
        out_slots=m + 2,
        operator=_shift_insert_matrix(top, defect, m),
        label=label,
    )


def _group_twist_matrix(S: np.ndarray, n: int, adjoint: bool) -> np.ndarray:
    d = S.shape[0]
    block = S if adjoint else S.conj().T
    out = np.eye(n * d, dtype=np.complex128)
    for j in range(1, n, 4):
        out[j * d : (j + 1) * d, j * d : (j + 1) * d] = block
    return out


def group_twist(S, n: int, adjoint: bool = False) -> GrowingMap:
    """Block-diagonal twist: S^* (or S when adjoint) at slots 1, 5, 9, ...

    Slot 0 stands alone; every following 4-group gets the twist on its
    first coordinate.  Defined for any slot count by truncating the
    infinite pattern.
    """
    S = ensure_matrix(S, square=True, name="S")
    if n < 1:
        raise ValueError("need at least one slot")
    return GrowingMap(
        slot_dim=S.shape[0],
        in_slots=n,
        out_slots=n,
        operator=_group_twist_matrix(S, n, adjoint),
        label="Gstar" if adjoint else "G",
    )


def _v_matrices(
    T: np.ndarray, A: np.ndarray, defect: np.ndarray, S: np.ndarray, m: int
) -> tuple[np.ndarray, np.ndarray]:
    """Matrices of V_T = G W_T and V_A = W_A G^* at input slot count m."""
    wt = _shift_insert_matrix(T, defect, m)
    wa = _shift_insert_matrix(A, defect, m)
    g_out = _group_twist_matrix(S, m + 2, adjoint=False)
    g_in_star = _group_twist_matrix(S, m, adjoint=True)
    return g_out @ wt, wa @ g_in_star


@dataclass(frozen=True)
class AndoWitness:
    """Unit witness y = (eta*x, 0, zeta*x, 0, ...) built from beta in W(S).

    The mixing weights satisfy eta^2 * beta + zeta^2 = 0 exactly, so the
    computed pairing <V_T y, V_A y> collapses to eta^2(<x, Sx> - beta),
    which vanishes up to the witness residual of x.
    """

    x: np.ndarray
    beta: float
    eta: float
    zeta: float
    value: complex
    predicted: complex
    prediction_residual: float
    zero_residual: float
    mixing_identity: float


@dataclass(frozen=True)
class AndoBundle:
    """Commuting isometric dilation pair for (T, A = ST) on m slots.

    V_T and V_A are families keyed by input slot count (m and m + 2; the
    larger size is what commutation is checked with).  checks carries
    the verification residuals; witness is present whenever W(S) meets
    the non-positive reals.
    """

    T: np.ndarray
    S: np.ndarray
    A: np.ndarray
    m: int
    V_T: dict[int, GrowingMap]
    V_A: dict[int, GrowingMap]
    witness: AndoWitness | None
    checks: dict[str, float]

    @property
    def passed(self) -> bool:
        keys = ("isometry_v_t", "isometry_v_a", "commutation", "dilation_max")
        ok = all(self.checks[k] <= 1e-8 for k in keys)
        ok = ok and self.checks["defect_intertwine"] <= 1e-9
        ok = ok and self.checks["defect_match"] <= 1e-9
        if self.witness is not None:
            ok = ok and self.witness.zero_residual <= 1e-7
        return ok

    def to_json_dict(self) -> dict:
        wit = None
        if self.witness is not None:
            w = self.witness
            wit = {
                "beta": w.beta,
                "eta": w.eta,
                "zeta": w.zeta,
                "value": [w.value.real, w.value.imag],
                "predicted": [w.predicted.real, w.predicted.imag],
                "prediction_residual": w.prediction_residual,
                "zero_residual": w.zero_residual,
            }
        return {
            "m": self.m,
            "T": matrix_to_json(self.T),
            "S": matrix_to_json(self.S),
            "A": matrix_to_json(self.A),
            "V_T": {str(k): v.to_json_dict() for k, v in sorted(self.V_T.items())},
            "V_A": {str(k): v.to_json_dict() for k, v in sorted(self.V_A.items())},
            "witness": wit,
            "checks": {k: float(v) for k, v in sorted(self.checks.items())},
            "passed": self.passed,
        }


def _require_unitary(S: np.ndarray, tol: ToleranceConfig) -> None:
    res = float(np.linalg.norm(S.conj().T @ S - np.eye(S.shape[0]), 2))
    if res > tol.structural_tol:
        raise ValueError(f"S must be unitary (residual {res:.2e})")


def ando_pair(T, S, m: int = 13, tol: ToleranceConfig = DEFAULT_TOL) -> AndoBundle:
    """Commuting isometric dilations of (T, ST) with an orthogonality witness.

    Requires S unitary with ST = TS (residual <= 1e-10), T a contraction,
    and m = 1 (mod 4), m >= 9 so the twist groups align.  Verifies
    isometry, commutation V_T V_A = V_A V_T as maps into m + 4 slots, the
    defect intertwining S D_T = D_T S, and the dilation identity
    P_H V_T^{n1} V_A^{n2} |_H = T^{n1} A^{n2} for n1 + n2 <= (m - 1) / 2.
    When W(S) meets (-inf, 0] the bundle carries the explicit unit vector
    y with <V_T y, V_A y> = 0.
    """
    T = ensure_matrix(T, square=True, name="T")
    S = ensure_matrix(S, square=True, name="S")
    if T.shape != S.shape:
        raise ValueError("T and S must act on the same space")
    _require_unitary(S, tol)
    commute = float(np.linalg.norm(S @ T - T @ S, 2))
    if commute > 1e-10:
        raise ValueError(f"S must commute with T (residual {commute:.2e})")
    if op_norm(T) > 1.0 + tol.structural_tol:
        raise ValueError("T must be a contraction")
    if m < 9 or m % 4 != 1:
        raise ValueError("slot count m must satisfy m >= 9 and m = 1 (mod 4)")

    d = T.shape[0]
    A = S @ T
    D_T, _ = defect_pair(T, tol)
    D_A, _ = defect_pair(A, tol)
    checks: dict[str, float] = {
        "commute": commute,
        "defect_match": float(np.linalg.norm(D_A - D_T, 2)),
        "defect_intertwine": float(np.linalg.norm(S @ D_T - D_T @ S, 2)),
    }

    v_t: dict[int, GrowingMap] = {}
    v_a: dict[int, GrowingMap] = {}
    for size in (m, m + 2):
        mt, ma = _v_matrices(T, A, D_T, S, size)
        v_t[size] = GrowingMap(d, size, size + 2, mt, "V_T")
        v_a[size] = GrowingMap(d, size, size + 2, ma, "V_A")

    eye_m = np.eye(m * d)
    checks["isometry_v_t"] = float(
        np.linalg.norm(v_t[m].operator.conj().T @ v_t[m].operator - eye_m, 2)
    )
    checks["isometry_v_a"] = float(
        np.linalg.norm(v_a[m].operator.conj().T @ v_a[m].operator - eye_m, 2)
    )
    checks["commutation"] = float(
        np.linalg.norm(
            v_t[m + 2].operator @ v_a[m].operator - v_a[m + 2].operator @ v_t[m].operator, 2
        )
    )

    n_budget = (m - 1) // 2
    cache: dict[tuple[int, int], np.ndarray] = {(0, 0): np.eye(m * d, dtype=np.complex128)}

    def product(n1: int, n2: int) -> np.ndarray:
        if (n1, n2) in cache:
            return cache[(n1, n2)]
        size = m + 2 * (n1 + n2 - 1)
        if n1 > 0:
            base = product(n1 - 1, n2)
            mt, _ = _v_matrices(T, A, D_T, S, size)
            out = mt @ base
        else:
            base = product(0, n2 - 1)
            _, ma = _v_matrices(T, A, D_T, S, size)
            out = ma @ base
        cache[(n1, n2)] = out
        return out

    dil_max = 0.0
    for total in range(1, n_budget + 1):
        for n1 in range(total + 1):
            n2 = total - n1
            comp = product(n1, n2)[0:d, 0:d]
            target = np.linalg.matrix_power(T, n1) @ np.linalg.matrix_power(A, n2)
            dil_max = max(dil_max, float(np.linalg.norm(comp - target, 2)))
    checks["dilation_max"] = dil_max

    witness = None
    probe = ray_probe(S, tol)
    if probe.margin >= -tol.verdict_tol:
        beta = float(min(probe.leftmost if probe.leftmost is not None else probe.witness_point, 0.0))
        rw = nr_witness(S, complex(beta), tol=max(tol.verdict_tol, 1e-9))
        x = rw.vector
        eta = 1.0 / math.sqrt(1.0 - beta)
        zeta = math.sqrt(-beta / (1.0 - beta))
        y = np.zeros(m * d, dtype=np.complex128)
        y[0:d] = eta * x
        y[2 * d : 3 * d] = zeta * x
        value = inner(v_t[m].operator @ y, v_a[m].operator @ y)
        predicted = eta * eta * inner(x, S @ x) + zeta * zeta
        witness = AndoWitness(
            x=x,
            beta=beta,
            eta=eta,
            zeta=zeta,
            value=value,
            predicted=predicted,
            prediction_residual=abs(value - predicted),
            zero_residual=abs(value),
            mixing_identity=abs(eta * eta * beta + zeta * zeta),
        )

    return AndoBundle(T=T, S=S, A=A, m=m, V_T=v_t, V_A=v_a, witness=witness, checks=checks)


def schaffer_ST_criterion(T, S, tol: ToleranceConfig = DEFAULT_TOL) -> OrthVerdict:
    """Sufficient test for orthogonality of the shift dilations of T and ST.

    Decides whether some unit y makes 1 - ||Ty||^2 + <Ty, STy> land on
    the non-positive reals, i.e. whether W(B) with B = I - T^*T + (ST)^*T
    meets (-inf, 0].  A true verdict implies the infinite shift dilations
    of T and ST are orthogonal (the converse need not hold: the criterion
    scans only window vectors supported on the home slot).  epsilon_min
    reports the normalized deficit of the criterion itself - the distance
    from W(B) to the ray over ||B|| - not a BJ epsilon for the pair.
    Commutation of S with T is not required here.
    """
    T = ensure_matrix(T, square=True, name="T")
    S = ensure_matrix(S, square=True, name="S")
    if T.shape != S.shape:
        raise ValueError("T and S must act on the same space")
    _require_unitary(S, tol)
    if op_norm(T) > 1.0 + tol.structural_tol:
        raise ValueError("T must be a contraction")

    n = T.shape[0]
    B = np.eye(n) - T.conj().T @ T + (S @ T).conj().T @ T
    probe = ray_probe(B, tol)
    vt = tol.verdict_tol
    residuals = {"ray_margin": probe.margin}

    if probe.margin >= -vt:
        target = probe.leftmost if probe.leftmost is not None else min(probe.witness_point, 0.0)
        rw = nr_witness(B, complex(target), tol=max(vt, 1e-9))
        val = qform(B, rw.vector)
        residuals["witness_imag"] = abs(val.imag)
        residuals["witness_positive_part"] = max(val.real, 0.0)
        return OrthVerdict(
            orthogonal=Verdict.TRUE,
            epsilon_min=0.0,
            witness=rw.vector,
            inner_product_at_witness=val,
            method="st-criterion",
            residuals=residuals,
        )
    deficit = min(1.0, -probe.margin / max(op_norm(B), 1e-300))
    verdict = Verdict.FALSE if probe.margin < -3.0 * vt else Verdict.INCONCLUSIVE
    return OrthVerdict(
        orthogonal=verdict,
        epsilon_min=deficit,
        witness=None,
        inner_product_at_witness=None,
        method="st-criterion",
        residuals=residuals,
    )


@dataclass(frozen=True)
class BrehmerReport:
    """Two-operator Brehmer positivity: the inclusion-exclusion residuals
    I - T1^*T1, I - T2^*T2, and I - T1^*T1 - T2^*T2 + (T1T2)^*(T1T2) must
    all be positive semidefinite for a commuting pair.  The empty index
    set contributes the identity, recorded for completeness."""

    commute_residual: float
    residual_matrices: tuple[np.ndarray, np.ndarray, np.ndarray]
    min_eigenvalues: tuple[float, float, float]
    passes: bool
    empty_set_min_eigenvalue: float = 1.0

    def to_json_dict(self) -> dict:
        return {
            "commute_residual": self.commute_residual,
            "residual_matrices": [matrix_to_json(R) for R in self.residual_matrices],
            "min_eigenvalues": list(self.min_eigenvalues),
            "empty_set_min_eigenvalue": self.empty_set_min_eigenvalue,
            "passes": self.passes,
        }


def brehmer_check(T1, T2, tol: ToleranceConfig = DEFAULT_TOL) -> BrehmerReport:
    """Brehmer positivity condition for a pair of commuting contractions."""
    T1 = ensure_matrix(T1, square=True, name="T1")
    T2 = ensure_matrix(T2, square=True, name="T2")
    if T1.shape != T2.shape:
        raise ValueError("T1 and T2 must act on the same space")
    n = T1.shape[0]
    eye = np.eye(n)
    commute_residual = float(np.linalg.norm(T1 @ T2 - T2 @ T1, 2))
    r1 = eye - T1.conj().T @ T1
    r2 = eye - T2.conj().T @ T2
    t12 = T1 @ T2
    r12 = eye - T1.conj().T @ T1 - T2.conj().T @ T2 + t12.conj().T @ t12
    mins = tuple(
        float(np.linalg.eigvalsh(0.5 * (R + R.conj().T))[0]) for R in (r1, r2, r12)
    )
    empty_min = float(np.linalg.eigvalsh(eye)[0])
    passes = all(v >= -tol.structural_tol for v in mins) and commute_residual <= tol.structural_tol
    return BrehmerReport(
        commute_residual=commute_residual,
        residual_matrices=(r1, r2, r12),
        min_eigenvalues=mins,
        passes=passes,
        empty_set_min_eigenvalue=empty_min,
    )


@dataclass(frozen=True)
class RegularOrthReport:
    """Hypothesis bundle for an orthogonal regular unitary dilation.

    predicate = brehmer.passes and zero-membership of the classical
    numerical range of T2^*T1; under it an orthogonal regular unitary
    dilation pair exists (the dilation itself is not constructed).  The
    maximal-range variant is reported separately as the stricter reading;
    the direct BJ verdict shows the predicate can hold without it.
    """

    brehmer: BrehmerReport
    classical_zero: Verdict
    classical_margin: float
    classical_witness: np.ndarray | None
    maximal_zero: ZeroVerdict
    bj: OrthVerdict
    predicate: bool

    def to_json_dict(self) -> dict:
        return {
            "brehmer": self.brehmer.to_json_dict(),
            "classical_zero": self.classical_zero.value,
            "classical_margin": self.classical_margin,
            "maximal_zero": self.maximal_zero.verdict.value,
            "bj": self.bj.to_json_dict(),
            "predicate": self.predicate,
        }


def regular_orth_predicate(
    T1, T2, tol: ToleranceConfig = DEFAULT_TOL
) -> RegularOrthReport:
    """Check the hypotheses under which a regular unitary dilation pair of
    (T1, T2) can be chosen mutually BJ-orthogonal."""
    T1 = ensure_matrix(T1, square=True, name="T1")
    T2 = ensure_matrix(T2, square=True, name="T2")
    if T1.shape != T2.shape:
        raise ValueError("T1 and T2 must act on the same space")

    brehmer = brehmer_check(T1, T2, tol)
    B = T2.conj().T @ T1
    scale = max(op_norm(T1) * op_norm(T2), 1e-300)
    vt = tol.verdict_tol
    margin = zero_margin(B, tol)
    if margin >= -vt * scale:
        classical = Verdict.TRUE
        witness = nr_witness(B, 0.0, tol=max(vt * scale, 1e-12)).vector
    elif margin < -3.0 * vt * scale:
        classical = Verdict.FALSE
        witness = None
    else:
        classical = Verdict.INCONCLUSIVE
        witness = None

    if op_norm(B) <= 1e-300:
        maximal = ZeroVerdict(Verdict.TRUE, 0.0, 0.0)
    else:
        maximal = nr_contains_zero(maximal_numerical_range(B, tol=tol), tol=max(vt * scale, 1e-12))
    bj = is_bj_orthogonal(T1, T2, tol)
    predicate = brehmer.passes and classical == Verdict.TRUE
    return RegularOrthReport(
        brehmer=brehmer,
        classical_zero=classical,
        classical_margin=margin,
        classical_witness=witness,
        maximal_zero=maximal,
        bj=bj,
        predicate=predicate,
    )
