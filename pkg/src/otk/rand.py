"""Seeded random matrix generators for the property suites.

All generators take a ``numpy.random.Generator`` so that every suite is
reproducible from a single integer seed.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "rng_for",
    "complex_gaussian",
    "random_unitary",
    "random_contraction",
    "random_hermitian_contraction",
    "contraction_with_kernel",
    "orthogonal_pair",
    "commuting_unitary_contraction",
]


def rng_for(seed: int, trial: int | None = None) -> np.random.Generator:
    """Independent generator per (seed, trial) pair."""
    if trial is None:
        return np.random.default_rng(seed)
    return np.random.default_rng([seed, trial])


def complex_gaussian(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary via QR with phase-fixed R diagonal."""
    Q, R = np.linalg.qr(complex_gaussian(rng, n, n))
    d = np.diagonal(R)
    phase = d / np.abs(d)
    return Q * phase


def random_contraction(
    rng: np.random.Generator, n: int, norm: float | None = None
) -> np.ndarray:
    """Random n x n matrix rescaled so its operator norm is `norm`.

    Defaults to a norm drawn uniformly from [0.3, 0.95], keeping the defect
    I - T^* T safely positive definite.
    """
    if norm is None:
        norm = float(rng.uniform(0.3, 0.95))
    G = complex_gaussian(rng, n, n)
    top = np.linalg.norm(G, 2)
    return G * (norm / top)


def random_hermitian_contraction(
    rng: np.random.Generator, n: int, norm: float | None = None
) -> np.ndarray:
    if norm is None:
        norm = float(rng.uniform(0.3, 0.95))
    G = complex_gaussian(rng, n, n)
    H = (G + G.conj().T) / 2.0
    return H * (norm / np.linalg.norm(H, 2))


def contraction_with_kernel(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random contraction whose smallest singular value is exactly zero."""
    T = random_contraction(rng, n)
    U, s, Vh = np.linalg.svd(T)
    s[-1] = 0.0
    return U @ np.diag(s) @ Vh


def orthogonal_pair(
    rng: np.random.Generator, n: int, unit_norm: bool = False
) -> tuple[np.ndarray, np.ndarray]:
    """Random (T, A) with T Birkhoff-James orthogonal to A by construction.

    A is a random matrix projected so that <T x0, A x0> = 0 at a top
    right-singular vector x0 of T, which certifies the orthogonality.
    Both are scaled to contractions.
    """
    T = random_contraction(rng, n, norm=1.0 if unit_norm else None)
    _, x0 = np.linalg.norm(T, 2), None
    _, s, Vh = np.linalg.svd(T)
    x0 = Vh[0].conj()
    B = random_contraction(rng, n)
    Tx0, Bx0 = T @ x0, B @ x0
    coeff = np.vdot(Tx0, Bx0) / np.vdot(Tx0, Tx0)
    A = B - coeff * T
    top = np.linalg.norm(A, 2)
    if top > 1e-12:
        A = A * (float(rng.uniform(0.3, 0.95)) / top)
    return T, A


def commuting_unitary_contraction(
    rng: np.random.Generator, n: int, norm_cap: float = 0.95
) -> tuple[np.ndarray, np.ndarray]:
    """Random commuting pair (T, S): S unitary, T a normal contraction.

    Built on a shared eigenbasis, which is the generic commuting configuration
    when S has distinct eigenvalues.
    """
    V = random_unitary(rng, n)
    phases = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=n))
    moduli = rng.uniform(0.1, norm_cap, size=n)
    tvals = moduli * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=n))
    S = V @ np.diag(phases) @ V.conj().T
    T = V @ np.diag(tvals) @ V.conj().T
    return T, S
