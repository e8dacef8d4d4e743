"""Dense complex-matrix plumbing shared by every other module.

Matrices are plain ``numpy.ndarray`` objects with dtype complex128.  The
helpers here pin down the conventions the rest of the package relies on:

* inner products are linear in the *first* argument, ``inner(u, v) == v^H u``;
* eigenvalues of Hermitian matrices come back in descending order;
* principal PSD square roots clamp tiny negative eigenvalues and refuse
  anything genuinely indefinite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOL",
    "MatrixFormatError",
    "NotHermitianError",
    "NotPsdError",
    "ensure_matrix",
    "inner",
    "qform",
    "op_norm",
    "op_norm_witness",
    "herm_eig",
    "psd_sqrt",
    "StructureReport",
    "classify",
    "block_grid",
    "embed_at_slot",
    "slot_block",
    "matrix_to_json",
    "matrix_from_json",
    "save_matrix",
    "load_matrix",
    "complex_to_pair",
]


class MatrixFormatError(ValueError):
    """Raised when serialized matrix data is malformed."""


class NotHermitianError(ValueError):
    """Raised when an operation requires a Hermitian input."""


class NotPsdError(ValueError):
    """Raised when an operation requires a positive semidefinite input."""


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds used across the package.

    eig_tol governs eigenvalue clustering (norm-attainment subspaces, PSD
    clamping), structural_tol governs structural residuals (unitarity,
    Hermitian symmetry, contraction checks), verdict_tol governs decision
    margins for orthogonality verdicts.
    """

    eig_tol: float = 1e-10
    structural_tol: float = 1e-8
    verdict_tol: float = 1e-7

    def __post_init__(self) -> None:
        for name in ("eig_tol", "structural_tol", "verdict_tol"):
            value = getattr(self, name)
            if not (0.0 < value < 1e-2):
                raise ValueError(f"{name} must lie in (0, 1e-2), got {value!r}")


DEFAULT_TOL = ToleranceConfig()


def ensure_matrix(M, square: bool = False, name: str = "matrix") -> np.ndarray:
    """Validate and normalize input to a 2-D complex128 array with finite entries."""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2:
        raise MatrixFormatError(f"{name} must be 2-dimensional, got shape {A.shape}")
    if A.shape[0] == 0 or A.shape[1] == 0:
        raise MatrixFormatError(f"{name} must be non-empty, got shape {A.shape}")
    if not (np.all(np.isfinite(A.real)) and np.all(np.isfinite(A.imag))):
        raise MatrixFormatError(f"{name} contains non-finite entries")
    if square and A.shape[0] != A.shape[1]:
        raise MatrixFormatError(f"{name} must be square, got shape {A.shape}")
    return A


def inner(u: np.ndarray, v: np.ndarray) -> complex:
    """Complex inner product, linear in the first argument: <u, v> = v^H u."""
    return complex(np.vdot(v, u))


def qform(B: np.ndarray, x: np.ndarray) -> complex:
    """Quadratic form <Bx, x> = x^H B x."""
    return complex(np.vdot(x, B @ x))


def op_norm(M) -> float:
    """Operator (spectral) norm: the largest singular value."""
    A = ensure_matrix(M)
    return float(np.linalg.norm(A, 2))


def op_norm_witness(M) -> tuple[float, np.ndarray]:
    """Operator norm together with a top right-singular unit vector v, ||Mv|| = ||M||."""
    A = ensure_matrix(M)
    _, s, Vh = np.linalg.svd(A)
    v = Vh[0].conj()
    return float(s[0]), v


def herm_eig(H, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (w, V) with eigenvalues w in descending order and V's columns the
    matching orthonormal eigenvectors.  Rejects inputs whose Hermitian
    residual exceeds structural_tol (scaled by the matrix norm).
    """
    A = ensure_matrix(H, square=True, name="H")
    scale = max(1.0, float(np.linalg.norm(A, 2)))
    residual = float(np.linalg.norm(A - A.conj().T, 2))
    if residual > tol.structural_tol * scale:
        raise NotHermitianError(
            f"matrix is not Hermitian: residual {residual:.3e} exceeds "
            f"{tol.structural_tol * scale:.3e}"
        )
    w, V = np.linalg.eigh((A + A.conj().T) / 2.0)
    return w[::-1].copy(), V[:, ::-1].copy()


def psd_sqrt(
    P,
    tol: ToleranceConfig = DEFAULT_TOL,
    neg_tol: float | None = None,
) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix.

    Eigenvalues in [-neg_tol, 0) are clamped to zero; anything more negative
    raises NotPsdError.  neg_tol defaults to eig_tol scaled by the matrix norm.
    """
    A = ensure_matrix(P, square=True, name="P")
    w, V = herm_eig(A, tol)
    scale = max(1.0, float(abs(w[0])))
    cutoff = tol.eig_tol * scale if neg_tol is None else neg_tol
    if w[-1] < -cutoff:
        raise NotPsdError(
            f"matrix is not PSD: min eigenvalue {w[-1]:.3e} below -{cutoff:.3e}"
        )
    root = V @ np.diag(np.sqrt(np.clip(w, 0.0, None))) @ V.conj().T
    return (root + root.conj().T) / 2.0


@dataclass(frozen=True)
class StructureReport:
    """Structural predicates for one matrix, with the residual behind each flag.

    Every boolean is true exactly when its residual is at most structural_tol.
    """

    is_self_adjoint: bool
    is_unitary: bool
    is_isometry: bool
    is_psd: bool
    is_contraction: bool
    is_normal: bool
    residuals: dict[str, float] = field(default_factory=dict)


def classify(M, tol: ToleranceConfig = DEFAULT_TOL) -> StructureReport:
    """Compute the standard structural predicates for a matrix."""
    A = ensure_matrix(M)
    n, m = A.shape
    square = n == m
    st = tol.structural_tol

    gram = A.conj().T @ A
    iso_res = float(np.linalg.norm(gram - np.eye(m), 2)) if m <= n else np.inf
    norm = float(np.linalg.norm(A, 2))
    contraction_res = norm - 1.0

    if square:
        sa_res = float(np.linalg.norm(A - A.conj().T, 2))
        cog = A @ A.conj().T
        uni_res = max(iso_res, float(np.linalg.norm(cog - np.eye(n), 2)))
        normal_res = float(np.linalg.norm(cog - gram, 2))
        herm_part = (A + A.conj().T) / 2.0
        min_eig = float(np.linalg.eigvalsh(herm_part)[0])
        psd_res = max(sa_res, max(0.0, -min_eig))
    else:
        sa_res = uni_res = normal_res = psd_res = np.inf
        min_eig = np.nan

    residuals = {
        "self_adjoint": sa_res,
        "unitary": uni_res,
        "isometry": iso_res,
        "psd": psd_res,
        "min_hermitian_eig": min_eig,
        "contraction": contraction_res,
        "normal": normal_res,
    }
    return StructureReport(
        is_self_adjoint=sa_res <= st,
        is_unitary=uni_res <= st,
        is_isometry=iso_res <= st,
        is_psd=psd_res <= st,
        is_contraction=contraction_res <= st,
        is_normal=normal_res <= st,
        residuals=residuals,
    )


def block_grid(slots: int, cells: dict[tuple[int, int], np.ndarray]) -> np.ndarray:
    """Assemble a slots x slots block matrix from a sparse dict of equal-size cells."""
    if not cells:
        raise ValueError("block_grid needs at least one cell")
    sample = next(iter(cells.values()))
    d = sample.shape[0]
    out = np.zeros((slots * d, slots * d), dtype=np.complex128)
    for (i, j), cell in cells.items():
        if cell.shape != (d, d):
            raise ValueError(f"cell ({i},{j}) has shape {cell.shape}, expected {(d, d)}")
        if not (0 <= i < slots and 0 <= j < slots):
            raise ValueError(f"cell index ({i},{j}) outside 0..{slots - 1}")
        out[i * d : (i + 1) * d, j * d : (j + 1) * d] = cell
    return out


def embed_at_slot(x: np.ndarray, slot: int, slots: int) -> np.ndarray:
    """Place a slot-sized vector into slot `slot` of a zero vector with `slots` slots."""
    x = np.asarray(x, dtype=np.complex128).ravel()
    d = x.shape[0]
    out = np.zeros(slots * d, dtype=np.complex128)
    out[slot * d : (slot + 1) * d] = x
    return out


def slot_block(X: np.ndarray, i: int, j: int, d: int) -> np.ndarray:
    """Extract the (i, j) d x d cell of a block matrix."""
    return X[i * d : (i + 1) * d, j * d : (j + 1) * d]


def complex_to_pair(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def matrix_to_json(M) -> dict:
    """Serializable dict: row-major [re, im] pairs."""
    A = ensure_matrix(M)
    data = [complex_to_pair(z) for z in A.ravel(order="C")]
    return {"rows": int(A.shape[0]), "cols": int(A.shape[1]), "data": data}


def matrix_from_json(obj: dict) -> np.ndarray:
    """Inverse of matrix_to_json, validating shape and finiteness."""
    if not isinstance(obj, dict):
        raise MatrixFormatError("matrix JSON must be an object")
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError(f"matrix JSON missing or invalid field: {exc}") from exc
    if rows <= 0 or cols <= 0:
        raise MatrixFormatError(f"matrix dimensions must be positive, got {rows}x{cols}")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise MatrixFormatError(
            f"data length {len(data) if isinstance(data, list) else '?'} does not "
            f"match rows*cols = {rows * cols}"
        )
    flat = np.empty(rows * cols, dtype=np.complex128)
    for k, pair in enumerate(data):
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise MatrixFormatError(f"entry {k} is not an [re, im] pair")
        flat[k] = complex(float(pair[0]), float(pair[1]))
    return ensure_matrix(flat.reshape(rows, cols))


def save_matrix(path: str, M) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json(M), fh, sort_keys=True)
        fh.write("\n")


def load_matrix(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"invalid JSON in {path}: {exc}") from exc
    return matrix_from_json(obj)
