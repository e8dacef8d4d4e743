"""Numerical ranges of complex matrices.

The numerical range W(B) = { <Bx, x> : ||x|| = 1 } is convex, so it is pinned
down here by its support function s(theta) = lambda_max(Herm(e^{-i theta} B)):
the support eigenvectors give boundary points (an inner polygon), the support
values give half-planes (an outer polygon), and the true range is sandwiched
between the two.  Membership and distance questions are settled by refining
the support function directly, which is exact up to the eigensolver; the
polygon is kept for export and certificates.

Normal matrices get a fast path: their range is the convex hull of the
eigenvalues, and convex combinations of orthonormal eigenvectors realize any
hull point exactly.

Witness construction for general matrices reduces to 2x2 compressions, where
the range is a (possibly degenerate) ellipse and a vector achieving any given
interior point can be written in closed form.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import schur
from scipy.optimize import minimize_scalar

from .matcore import (
    DEFAULT_TOL,
    ToleranceConfig,
    ensure_matrix,
    herm_eig,
    qform,
)

__all__ = [
    "Verdict",
    "NRPolygon",
    "RegionWitness",
    "ZeroVerdict",
    "RayProbe",
    "NotInRangeError",
    "WitnessError",
    "nr_boundary",
    "nr_contains_zero",
    "nr_meets_nonpositive_reals",
    "nr_witness",
    "zero_margin",
    "point_margin",
    "ray_probe",
    "maximal_numerical_range",
    "mnr_sampling_oracle",
    "polygon_csv",
    "polygon_svg",
]


class NotInRangeError(ValueError):
    """Raised when a witness is requested for a point outside the range."""


class WitnessError(RuntimeError):
    """Raised when witness construction cannot reach the requested tolerance."""


class Verdict(enum.Enum):
    """Three-valued decision: certified true, certified false, or inconclusive."""

    TRUE = "true"
    FALSE = "false"
    INCONCLUSIVE = "inconclusive"

    @property
    def is_true(self) -> bool:
        return self is Verdict.TRUE

    @property
    def is_false(self) -> bool:
        return self is Verdict.FALSE

    @property
    def decided(self) -> bool:
        return self is not Verdict.INCONCLUSIVE


# ---------------------------------------------------------------------------
# planar convex geometry on complex numbers
# ---------------------------------------------------------------------------


def _cross(u: complex, v: complex) -> float:
    return float(np.imag(np.conj(u) * v))


def _convex_hull(points: np.ndarray) -> list[int]:
    """Indices of the convex hull of a set of complex points, CCW order.

    Collinear point sets collapse to their two extreme indices; coincident
    sets to a single index.  Andrew's monotone chain.
    """
    pts = [(float(z.real), float(z.imag), k) for k, z in enumerate(points)]
    pts.sort()
    uniq: list[tuple[float, float, int]] = []
    for p in pts:
        if not uniq or abs(p[0] - uniq[-1][0]) > 1e-15 or abs(p[1] - uniq[-1][1]) > 1e-15:
            uniq.append(p)
    if len(uniq) == 1:
        return [uniq[0][2]]

    def chain(seq):
        out: list[tuple[float, float, int]] = []
        for p in seq:
            while len(out) >= 2:
                ox, oy, _ = out[-2]
                ax, ay, _ = out[-1]
                if (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox) <= 0.0:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = chain(uniq)
    upper = chain(reversed(uniq))
    hull = [p[2] for p in lower[:-1]] + [p[2] for p in upper[:-1]]
    if len(hull) < 2:
        return [uniq[0][2], uniq[-1][2]]
    return hull


def _point_segment_distance(p: complex, a: complex, b: complex) -> float:
    ab = b - a
    denom = abs(ab) ** 2
    if denom < 1e-300:
        return abs(p - a)
    t = max(0.0, min(1.0, float(np.real(np.conj(ab) * (p - a))) / denom))
    return abs(p - (a + t * ab))


def _hull_signed_margin(p: complex, hull_pts: np.ndarray) -> float:
    """Positive distance to the boundary when p is inside the hull, negative
    distance to the hull when outside.  Degenerate hulls are never 'inside'
    except on the set itself (margin 0)."""
    m = len(hull_pts)
    if m == 1:
        return -abs(p - hull_pts[0])
    if m == 2:
        return -_point_segment_distance(p, hull_pts[0], hull_pts[1])
    line_offsets = []
    inside = True
    for k in range(m):
        a, b = hull_pts[k], hull_pts[(k + 1) % m]
        off = _cross(b - a, p - a) / abs(b - a)
        line_offsets.append(off)
        if off < 0.0:
            inside = False
    if inside:
        return min(line_offsets)
    return -min(
        _point_segment_distance(p, hull_pts[k], hull_pts[(k + 1) % m]) for k in range(m)
    )


def _hull_real_axis_section(hull_pts: np.ndarray, slack: float) -> tuple[float, float] | None:
    """Intersection [a, b] of the hull with the real axis, or None."""
    crossings: list[float] = []
    m = len(hull_pts)
    for z in hull_pts:
        if abs(z.imag) <= slack:
            crossings.append(float(z.real))
    edges = [(hull_pts[k], hull_pts[(k + 1) % m]) for k in range(m)] if m >= 2 else []
    if m == 2:
        edges = [(hull_pts[0], hull_pts[1])]
    for a, b in edges:
        ia, ib = a.imag, b.imag
        if (ia > slack and ib < -slack) or (ia < -slack and ib > slack):
            t = ia / (ia - ib)
            crossings.append(float(a.real + t * (b.real - a.real)))
    if not crossings:
        return None
    return min(crossings), max(crossings)


def _point_ray_distance(p: complex) -> float:
    """Distance from p to the closed ray (-inf, 0] on the real axis."""
    if p.real <= 0.0:
        return abs(p.imag)
    return abs(p)


# ---------------------------------------------------------------------------
# support function machinery
# ---------------------------------------------------------------------------


def _support_values(B: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    phase = np.exp(-1j * thetas)
    H = 0.5 * (phase[:, None, None] * B + np.conj(phase)[:, None, None] * B.conj().T)
    return np.linalg.eigvalsh(H)[:, -1]


def _support_witness(B: np.ndarray, theta: float) -> tuple[float, np.ndarray, complex]:
    """Support value, top eigenvector, and the boundary point it realizes."""
    H = 0.5 * (np.exp(-1j * theta) * B + np.exp(1j * theta) * B.conj().T)
    w, V = np.linalg.eigh(H)
    x = V[:, -1]
    return float(w[-1]), x, qform(B, x)


def _is_normal(B: np.ndarray) -> bool:
    res = np.linalg.norm(B @ B.conj().T - B.conj().T @ B)
    scale = max(1.0, float(np.linalg.norm(B)) ** 2)
    return bool(res <= 1e-12 * scale)


def _normal_eigs(B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and an orthonormal eigenbasis of a (numerically) normal matrix."""
    T, Z = schur(B, output="complex")
    return np.diagonal(T).copy(), Z


def zero_margin(
    B,
    tol: ToleranceConfig = DEFAULT_TOL,
    n_grid: int = 96,
) -> float:
    """min over theta of the support function of W(B).

    Nonnegative exactly when 0 lies in W(B); when negative, its absolute value
    is the distance from 0 to W(B).
    """
    return point_margin(B, 0.0, tol=tol, n_grid=n_grid)


def point_margin(
    B,
    p: complex,
    tol: ToleranceConfig = DEFAULT_TOL,
    n_grid: int = 96,
) -> float:
    """Signed membership margin of the point p relative to W(B).

    Positive: depth inside (distance to the boundary).  Negative: minus the
    distance from p to W(B).  Exact for normal matrices via the eigenvalue
    hull; otherwise a refined minimization of s(theta) - Re(e^{-i theta} p).
    """
    A = ensure_matrix(B, square=True, name="B")
    if _is_normal(A):
        eigs, _ = _normal_eigs(A)
        hull = eigs[_convex_hull(eigs)]
        return _hull_signed_margin(complex(p), hull)
    return _refined_point_margin(A, complex(p), n_grid)[0]


def _refined_point_margin(
    A: np.ndarray, p: complex, n_grid: int = 96
) -> tuple[float, float]:
    """(margin, argmin theta) for min over theta of s(theta) - Re(e^{-i theta} p)."""
    thetas = np.linspace(0.0, 2.0 * np.pi, n_grid, endpoint=False)
    vals = _support_values(A, thetas) - np.real(np.exp(-1j * thetas) * p)
    k = int(np.argmin(vals))
    width = 2.0 * np.pi / n_grid

    def f(theta: float) -> float:
        H = 0.5 * (np.exp(-1j * theta) * A + np.exp(1j * theta) * A.conj().T)
        return float(np.linalg.eigvalsh(H)[-1]) - float(np.real(np.exp(-1j * theta) * p))

    res = minimize_scalar(
        f,
        bounds=(thetas[k] - width, thetas[k] + width),
        method="bounded",
        options={"xatol": 1e-12},
    )
    if res.fun < vals[k]:
        return float(res.fun), float(res.x)
    return float(vals[k]), float(thetas[k])


@dataclass(frozen=True)
class RayProbe:
    """Result of probing W(B) against the non-positive real ray.

    margin >= 0 means the ray meets the range (with interior depth `margin`);
    margin < 0 means they are separated by distance |margin|.  When the
    intersection with the real axis is certified, [leftmost, rightmost] is the
    admissible non-positive real interval; witness_point is the preferred real
    target (most negative admissible, falling back to the closest approach).
    """

    margin: float
    witness_point: float
    leftmost: float | None = None
    rightmost: float | None = None


def ray_probe(B, tol: ToleranceConfig = DEFAULT_TOL) -> RayProbe:
    """Probe W(B) against the ray (-inf, 0] of non-positive reals."""
    A = ensure_matrix(B, square=True, name="B")
    scale = max(1.0, float(np.linalg.norm(A, 2)))
    slack = 1e-13 * scale
    if _is_normal(A):
        eigs, _ = _normal_eigs(A)
        hull = eigs[_convex_hull(eigs)]
        section = _hull_real_axis_section(hull, slack)
        if section is not None and section[0] <= slack:
            a = min(section[0], 0.0)
            b = min(section[1], 0.0)
            candidates = [a, b, 0.5 * (a + b)]
            margins = [_hull_signed_margin(complex(c), hull) for c in candidates]
            margin = max(max(margins), 0.0)
            return RayProbe(margin=margin, witness_point=a, leftmost=a, rightmost=b)
        gap = min(_point_ray_distance(z) for z in hull)
        if len(hull) >= 2:
            m = len(hull)
            edges = range(m) if m > 2 else [0]
            for k in edges:
                za, zb = hull[k], hull[(k + 1) % m]
                steps = np.linspace(0.0, 1.0, 17)
                gap = min(gap, min(_point_ray_distance(za + t * (zb - za)) for t in steps))
        gap = min(gap, -_hull_signed_margin(0.0, hull))
        return RayProbe(margin=-gap, witness_point=min(float(hull[int(np.argmin([_point_ray_distance(z) for z in hull]))].real), 0.0))

    norm = float(np.linalg.norm(A, 2))
    ymax = norm + 1.0

    def m_of(y: float) -> float:
        return _refined_point_margin(A, complex(-y, 0.0))[0]

    res = minimize_scalar(
        lambda y: -m_of(y), bounds=(0.0, ymax), method="bounded", options={"xatol": 1e-11}
    )
    y_star = float(res.x)
    margin = -float(res.fun)
    if margin < 0.0:
        return RayProbe(margin=margin, witness_point=-y_star)

    def bisect(lo: float, hi: float, want_positive_at_lo: bool) -> float:
        # m(lo) >= 0 > m(hi) (or symmetric); returns the crossing
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if (m_of(mid) >= 0.0) == want_positive_at_lo:
                lo = mid
            else:
                hi = mid
        return lo

    y_hi = bisect(y_star, ymax, True) if m_of(ymax) < 0.0 else ymax
    y_lo = 0.0 if m_of(0.0) >= 0.0 else bisect(y_star, 0.0, True)
    return RayProbe(
        margin=margin, witness_point=-y_hi, leftmost=-y_hi, rightmost=-y_lo
    )


# ---------------------------------------------------------------------------
# boundary polygons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NRPolygon:
    """Inner/outer polygon sandwich for a numerical range.

    vertices are true boundary points realized by the stored unit witnesses;
    support_values define the outer half-planes; outer_vertices are the
    intersections of consecutive support lines.  For maximal ranges the
    witnesses live in the original space (already lifted) and `_matrix` is the
    compression the polygon was computed from.
    """

    source_dim: int
    angles: np.ndarray
    vertices: np.ndarray
    witnesses: np.ndarray
    support_values: np.ndarray
    outer_vertices: np.ndarray
    is_degenerate: bool
    degenerate_kind: str | None = None
    _matrix: np.ndarray | None = field(default=None, repr=False)
    _lift: np.ndarray | None = field(default=None, repr=False)

    @property
    def n_angles(self) -> int:
        return len(self.angles)


def nr_boundary(B, n_angles: int = 64, tol: ToleranceConfig = DEFAULT_TOL) -> NRPolygon:
    """Support-function boundary sweep of the classical numerical range."""
    A = ensure_matrix(B, square=True, name="B")
    if n_angles < 16:
        raise ValueError(f"n_angles must be at least 16, got {n_angles}")
    thetas = np.linspace(0.0, 2.0 * np.pi, n_angles, endpoint=False)
    phases = np.exp(-1j * thetas)
    H = 0.5 * (phases[:, None, None] * A + np.conj(phases)[:, None, None] * A.conj().T)
    w, V = np.linalg.eigh(H)
    witnesses = V[:, :, -1]
    support = w[:, -1].astype(float)
    vertices = np.einsum("ki,ij,kj->k", witnesses.conj(), A, witnesses)

    outer = np.empty(n_angles, dtype=np.complex128)
    for k in range(n_angles):
        t0, t1 = thetas[k], thetas[(k + 1) % n_angles]
        M = np.array([[math.cos(t0), math.sin(t0)], [math.cos(t1), math.sin(t1)]])
        rhs = np.array([support[k], support[(k + 1) % n_angles]])
        xy = np.linalg.solve(M, rhs)
        outer[k] = complex(xy[0], xy[1])

    hull = _convex_hull(vertices)
    scale = max(1.0, float(np.max(np.abs(vertices))))
    kind: str | None = None
    if len(hull) == 1 or float(np.max(np.abs(vertices - vertices[0]))) <= 1e-12 * scale:
        kind = "point"
    elif len(hull) == 2:
        kind = "segment"
    return NRPolygon(
        source_dim=A.shape[0],
        angles=thetas,
        vertices=vertices,
        witnesses=witnesses,
        support_values=support,
        outer_vertices=outer,
        is_degenerate=kind is not None,
        degenerate_kind=kind,
        _matrix=A,
        _lift=None,
    )


@dataclass(frozen=True)
class ZeroVerdict:
    """Certificate-backed answer to '0 in W(B)?' at polygon resolution."""

    verdict: Verdict
    inner_distance: float
    support_min: float
    witness: np.ndarray | None = None
    point: complex | None = None


def nr_contains_zero(poly: NRPolygon, tol: float = 1e-9) -> ZeroVerdict:
    """Three-valued membership of 0 using the polygon sandwich.

    True when 0 is within tol of the inner polygon (certificate: a witness
    vector realizing a point within tol of 0); false when 0 violates a sampled
    support half-plane by more than tol; inconclusive in between.
    """
    hull_idx = _convex_hull(poly.vertices)
    hull_pts = poly.vertices[hull_idx]
    margin = _hull_signed_margin(0.0, hull_pts)
    d_in = max(0.0, -margin)
    s_min = float(np.min(poly.support_values))
    if d_in <= tol:
        mat = poly._matrix
        witness = None
        point = None
        if mat is not None:
            target = _project_to_hull(0.0, hull_pts)
            rw = nr_witness(mat, target, tol=max(tol, 1e-9))
            witness = rw.vector if poly._lift is None else poly._lift @ rw.vector
            point = rw.point
        return ZeroVerdict(Verdict.TRUE, d_in, s_min, witness, point)
    if s_min < -tol:
        return ZeroVerdict(Verdict.FALSE, d_in, s_min)
    return ZeroVerdict(Verdict.INCONCLUSIVE, d_in, s_min)


def _project_to_hull(p: complex, hull_pts: np.ndarray) -> complex:
    """Closest point of the hull to p (p itself when inside)."""
    if _hull_signed_margin(p, hull_pts) >= 0.0:
        return p
    m = len(hull_pts)
    if m == 1:
        return complex(hull_pts[0])
    best, best_d = None, np.inf
    edges = [(hull_pts[k], hull_pts[(k + 1) % m]) for k in range(m)] if m > 2 else [
        (hull_pts[0], hull_pts[1])
    ]
    for a, b in edges:
        ab = b - a
        denom = abs(ab) ** 2
        t = 0.0 if denom < 1e-300 else max(0.0, min(1.0, float(np.real(np.conj(ab) * (p - a))) / denom))
        cand = a + t * ab
        d = abs(p - cand)
        if d < best_d:
            best, best_d = cand, d
    return complex(best)


@dataclass(frozen=True)
class RegionWitness:
    """A unit vector realizing a range point near a requested target."""

    point: complex
    vector: np.ndarray
    residual: float


def nr_meets_nonpositive_reals(
    poly: NRPolygon, tol: float = 1e-9
) -> RegionWitness | None:
    """Witness that W meets the non-positive real axis, or None.

    The witness targets the most negative admissible real point (the leftmost
    crossing of the real axis), matching the tie-break used for extracting
    negative range values elsewhere in the package.
    """
    mat = poly._matrix
    if mat is None:
        raise ValueError("polygon does not carry its source matrix")
    probe = ray_probe(mat)
    if probe.margin < -tol:
        return None
    target = complex(min(probe.witness_point, 0.0) if probe.leftmost is None else probe.leftmost)
    rw = nr_witness(mat, target, tol=max(tol, 1e-9))
    vector = rw.vector if poly._lift is None else poly._lift @ rw.vector
    return RegionWitness(point=rw.point, vector=vector, residual=rw.residual)


# ---------------------------------------------------------------------------
# witness construction
# ---------------------------------------------------------------------------


def _ellipse_solve(C2: np.ndarray, w: complex) -> np.ndarray:
    """Unit 2-vector x with x^H C2 x = w, for w in the elliptical range of C2.

    Closed form via the trace split C2 = gamma I + D with tr D = 0: in a Schur
    basis of D the form value at (cos t, e^{i a} sin t) is
    gamma + mu cos 2t + (p/2) sin 2t e^{i a}, solvable directly for (t, a).
    Best-effort for w slightly outside; the caller checks the residual.
    """
    gamma = (C2[0, 0] + C2[1, 1]) / 2.0
    D = C2 - gamma * np.eye(2)
    wp = complex(w) - gamma
    detD = D[0, 0] * D[1, 1] - D[0, 1] * D[1, 0]
    mu = np.sqrt(-detD + 0j)

    M1 = D - mu * np.eye(2)
    rows = [np.array([M1[0, 1], -M1[0, 0]]), np.array([M1[1, 1], -M1[1, 0]])]
    v = max(rows, key=lambda r: float(np.linalg.norm(r)))
    nv = float(np.linalg.norm(v))
    if nv < 1e-14:
        return np.array([1.0, 0.0], dtype=np.complex128)
    q1 = v / nv
    q2 = np.array([-np.conj(q1[1]), np.conj(q1[0])])
    p = complex(np.vdot(q1, D @ q2))

    A = abs(mu) ** 2 + abs(p) ** 2 / 4.0
    if A < 1e-28:
        return np.array([1.0, 0.0], dtype=np.complex128)
    Bq = float(np.real(np.conj(wp) * mu))
    Cq = abs(wp) ** 2 - abs(p) ** 2 / 4.0
    disc = Bq * Bq - A * Cq
    if disc < 0.0:
        disc = 0.0
    roots = [(Bq + math.sqrt(disc)) / A, (Bq - math.sqrt(disc)) / A]
    inside = [c for c in roots if abs(c) <= 1.0 + 1e-9]
    c_star = inside[0] if inside else min(roots, key=lambda c: abs(c) - 1.0)
    c_star = max(-1.0, min(1.0, c_star))
    s = math.sqrt(max(0.0, 1.0 - c_star * c_star))
    denom = (p / 2.0) * s
    phase = (wp - mu * c_star) / denom if abs(denom) > 1e-15 else 1.0
    if abs(phase) > 0:
        phase = phase / abs(phase)
    t = math.acos(max(-1.0, min(1.0, c_star))) / 2.0
    return math.cos(t) * q1 + math.sin(t) * phase * q2


def _pair_solve(A: np.ndarray, x1: np.ndarray, x2: np.ndarray, w: complex) -> np.ndarray | None:
    """Unit vector in span{x1, x2} whose form value is w (None if the span degenerates)."""
    e1 = x1 / np.linalg.norm(x1)
    r = x2 - np.vdot(e1, x2) * e1
    nr_ = float(np.linalg.norm(r))
    if nr_ < 1e-10:
        return None
    e2 = r / nr_
    E = np.column_stack([e1, e2])
    C2 = E.conj().T @ A @ E
    return E @ _ellipse_solve(C2, w)


def _barycentric(target: complex, za: complex, zb: complex, zc: complex) -> tuple[float, float, float] | None:
    """Barycentric coordinates of target in triangle (za, zb, zc), or None."""
    det = _cross(zb - za, zc - za)
    if abs(det) < 1e-300:
        return None
    wb = _cross(target - za, zc - za) / det
    wc = _cross(zb - za, target - za) / det
    wa = 1.0 - wb - wc
    slack = -1e-10
    if wa >= slack and wb >= slack and wc >= slack:
        return max(wa, 0.0), max(wb, 0.0), max(wc, 0.0)
    return None


def _witness_normal(A: np.ndarray, target: complex, tol: float) -> np.ndarray | None:
    eigs, Z = _normal_eigs(A)
    diffs = np.abs(eigs - target)
    k = int(np.argmin(diffs))
    if diffs[k] <= tol:
        return Z[:, k]
    hull_idx = _convex_hull(eigs)
    hull_pts = eigs[hull_idx]
    if len(hull_idx) == 1:
        return None
    if len(hull_idx) == 2:
        za, zb = hull_pts[0], hull_pts[1]
        ab = zb - za
        denom = abs(ab) ** 2
        t = max(0.0, min(1.0, float(np.real(np.conj(ab) * (target - za))) / denom))
        if abs(za + t * ab - target) > max(tol, 1e-12):
            return None
        x = math.sqrt(1.0 - t) * Z[:, hull_idx[0]] + math.sqrt(t) * Z[:, hull_idx[1]]
        return x / np.linalg.norm(x)
    for j in range(1, len(hull_idx) - 1):
        ia, ib, ic = hull_idx[0], hull_idx[j], hull_idx[j + 1]
        bary = _barycentric(target, eigs[ia], eigs[ib], eigs[ic])
        if bary is not None:
            wa, wb, wc = bary
            x = (
                math.sqrt(wa) * Z[:, ia]
                + math.sqrt(wb) * Z[:, ib]
                + math.sqrt(wc) * Z[:, ic]
            )
            return x / np.linalg.norm(x)
    # target within tol outside the hull: project onto the nearest edge
    proj = _project_to_hull(target, hull_pts)
    if abs(proj - target) <= max(tol, 1e-12):
        return _witness_normal(A, proj, tol)
    return None


def _witness_polygon(A: np.ndarray, target: complex, tol: float) -> np.ndarray | None:
    for n in (64, 256, 1024):
        poly = nr_boundary(A, n)
        diffs = np.abs(poly.vertices - target)
        k = int(np.argmin(diffs))
        if diffs[k] <= tol:
            return poly.witnesses[k]
        hull_idx = _convex_hull(poly.vertices)
        hull_pts = poly.vertices[hull_idx]
        if len(hull_idx) == 1:
            continue
        if len(hull_idx) == 2:
            ia, ib = hull_idx[0], hull_idx[1]
            za, zb = poly.vertices[ia], poly.vertices[ib]
            ab = zb - za
            t = max(0.0, min(1.0, float(np.real(np.conj(ab) * (target - za))) / (abs(ab) ** 2)))
            proj = za + t * ab
            if abs(proj - target) <= max(tol, 1e-10):
                x = _pair_solve(A, poly.witnesses[ia], poly.witnesses[ib], proj)
                if x is not None:
                    return x
            continue
        m = len(hull_idx)
        for j in range(1, m - 1):
            ia, ib, ic = hull_idx[0], hull_idx[j], hull_idx[j + 1]
            za, zb, zc = poly.vertices[ia], poly.vertices[ib], poly.vertices[ic]
            bary = _barycentric(target, za, zb, zc)
            if bary is None:
                continue
            wa, wb, wc = bary
            if wb + wc <= 1e-14:
                return poly.witnesses[ia]
            # split: walk from the apex through the target to the far edge
            wprime = (wb * zb + wc * zc) / (wb + wc)
            y1 = _pair_solve(A, poly.witnesses[ib], poly.witnesses[ic], wprime)
            if y1 is None:
                continue
            x = _pair_solve(A, poly.witnesses[ia], y1, target)
            if x is not None:
                return x
        # near-boundary target: project onto the inner hull and solve on that edge
        proj = _project_to_hull(target, hull_pts)
        if abs(proj - target) <= max(tol, 1e-9) and len(hull_idx) >= 2:
            best_edge, best_d = None, np.inf
            for k2 in range(m):
                a, b = hull_pts[k2], hull_pts[(k2 + 1) % m]
                d = _point_segment_distance(proj, a, b)
                if d < best_d:
                    best_d, best_edge = d, (hull_idx[k2], hull_idx[(k2 + 1) % m])
            if best_edge is not None:
                ia, ib = best_edge
                x = _pair_solve(A, poly.witnesses[ia], poly.witnesses[ib], proj)
                if x is not None and abs(qform(A, x) - target) <= max(tol, 10 * best_d + 1e-12):
                    return x
    return None


def nr_witness(B, target: complex, tol: float = 1e-9) -> RegionWitness:
    """Unit vector x with <Bx, x> within tol of target.

    Raises NotInRangeError when the target lies outside the range by more
    than tol, WitnessError when construction cannot reach the tolerance.
    """
    A = ensure_matrix(B, square=True, name="B")
    target = complex(target)
    scale = max(1.0, float(np.linalg.norm(A, 2)))

    if A.shape[0] == 1:
        val = complex(A[0, 0])
        if abs(val - target) > max(tol, 1e-12 * scale):
            raise NotInRangeError(f"target {target} not in range {{{val}}}")
        return RegionWitness(point=val, vector=np.array([1.0 + 0j]), residual=abs(val - target))

    if _is_normal(A):
        margin = point_margin(A, target)
        if margin < -max(tol, 1e-12 * scale):
            raise NotInRangeError(
                f"target {target} outside the numerical range by {-margin:.3e}"
            )
        x = _witness_normal(A, target, tol)
        if x is None:
            raise WitnessError(f"could not realize target {target} on a normal matrix")
        val = qform(A, x)
        return RegionWitness(point=val, vector=x, residual=abs(val - target))

    margin, theta_star = _refined_point_margin(A, target)
    if margin < -max(tol, 1e-12 * scale):
        raise NotInRangeError(
            f"target {target} outside the numerical range by {-margin:.3e}"
        )

    # boundary support point (exact for smooth strictly convex boundary arcs)
    _, x_sup, z_sup = _support_witness(A, theta_star)
    if abs(z_sup - target) <= tol:
        return RegionWitness(point=z_sup, vector=x_sup, residual=abs(z_sup - target))

    x = _witness_polygon(A, target, tol)
    if x is None:
        # flat boundary face: chords between support points bracketing theta_star
        for delta in (1e-6, 1e-4, 1e-2):
            _, xm, zm = _support_witness(A, theta_star - delta)
            _, xp, zp = _support_witness(A, theta_star + delta)
            chord = zp - zm
            denom = abs(chord) ** 2
            if denom < 1e-300:
                continue
            t = max(0.0, min(1.0, float(np.real(np.conj(chord) * (target - zm))) / denom))
            proj = zm + t * chord
            if abs(proj - target) <= max(tol, 1e-8 * scale):
                cand = _pair_solve(A, xm, xp, proj)
                if cand is not None and abs(qform(A, cand) - target) <= max(tol, 1e-8 * scale):
                    x = cand
                    break
    if x is None:
        raise WitnessError(
            f"witness construction failed for target {target} at tol {tol:.1e}"
        )
    x = x / np.linalg.norm(x)
    val = qform(A, x)
    residual = abs(val - target)
    if residual > max(tol, 1e-7 * scale):
        raise WitnessError(
            f"witness residual {residual:.3e} exceeds tolerance for target {target}"
        )
    return RegionWitness(point=val, vector=x, residual=residual)


# ---------------------------------------------------------------------------
# maximal numerical range
# ---------------------------------------------------------------------------


def maximal_numerical_range(
    T,
    n_angles: int = 64,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> NRPolygon:
    """Boundary polygon of the maximal numerical range of T.

    In finite dimensions the limiting values of <Tx_n, x_n> over norming
    sequences are exactly the classical numerical range of the compression of
    T to the top eigenspace of T^*T, so the polygon is computed there and its
    witnesses are lifted back to the full space.
    """
    A = ensure_matrix(T, square=True, name="T")
    w, V = herm_eig(A.conj().T @ A, tol)
    lam1 = float(w[0])
    if lam1 <= 1e-28:
        # zero operator: the range degenerates to {0}
        d = A.shape[0]
        zeros = np.zeros(n_angles, dtype=np.complex128)
        wit = np.tile(np.eye(d, dtype=np.complex128)[0], (n_angles, 1))
        return NRPolygon(
            source_dim=d,
            angles=np.linspace(0.0, 2.0 * np.pi, n_angles, endpoint=False),
            vertices=zeros,
            witnesses=wit,
            support_values=np.zeros(n_angles),
            outer_vertices=zeros.copy(),
            is_degenerate=True,
            degenerate_kind="point",
            _matrix=np.zeros((1, 1), dtype=np.complex128),
            _lift=np.eye(d, dtype=np.complex128)[:, :1],
        )
    keep = w >= lam1 - tol.eig_tol * lam1
    M = V[:, keep]
    C = M.conj().T @ A @ M
    inner_poly = nr_boundary(C, n_angles, tol)
    lifted = (M @ inner_poly.witnesses.T).T
    return NRPolygon(
        source_dim=A.shape[0],
        angles=inner_poly.angles,
        vertices=inner_poly.vertices,
        witnesses=lifted,
        support_values=inner_poly.support_values,
        outer_vertices=inner_poly.outer_vertices,
        is_degenerate=inner_poly.is_degenerate,
        degenerate_kind=inner_poly.degenerate_kind,
        _matrix=C,
        _lift=M,
    )


def mnr_sampling_oracle(
    T,
    slack: float = 1e-3,
    samples: int = 20000,
    seed: int = 0,
) -> np.ndarray:
    """Monte-Carlo cloud of <Tx, x> over near-norming unit vectors.

    Keeps samples with ||Tx|| >= ||T|| - slack; deterministic per seed.  The
    cloud lies within O(slack) of the maximal numerical range and is used as
    an independent cross-check of the compression route.
    """
    A = ensure_matrix(T, square=True, name="T")
    n = A.shape[0]
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    TX = X @ A.T
    norms = np.linalg.norm(TX, axis=1)
    top = float(np.linalg.norm(A, 2))
    keep = norms >= top - slack
    vals = np.einsum("ij,ij->i", X[keep].conj(), (A @ X[keep].T).T)
    return vals


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def polygon_csv(poly: NRPolygon) -> str:
    lines = ["angle,re,im,re_outer,im_outer"]
    for k in range(poly.n_angles):
        z, zo = poly.vertices[k], poly.outer_vertices[k]
        lines.append(
            f"{poly.angles[k]:.12g},{z.real:.12g},{z.imag:.12g},{zo.real:.12g},{zo.imag:.12g}"
        )
    return "\n".join(lines) + "\n"


def polygon_svg(poly: NRPolygon, size: int = 480) -> str:
    """Standalone SVG rendering of the polygon sandwich with the origin marked."""
    pts = np.concatenate([poly.vertices, poly.outer_vertices, [0.0 + 0j]])
    xmin, xmax = float(np.min(pts.real)), float(np.max(pts.real))
    ymin, ymax = float(np.min(pts.imag)), float(np.max(pts.imag))
    span = max(xmax - xmin, ymax - ymin, 1e-9)
    pad = 0.1 * span
    xmin, ymin = xmin - pad, ymin - pad
    span += 2 * pad
    scale = size / span

    def sx(x: float) -> float:
        return (x - xmin) * scale

    def sy(y: float) -> float:
        return size - (y - ymin) * scale

    def path(zs: np.ndarray) -> str:
        cmds = [f"{'M' if k == 0 else 'L'} {sx(z.real):.2f} {sy(z.imag):.2f}" for k, z in enumerate(zs)]
        return " ".join(cmds) + " Z"

    ox, oy = sx(0.0), sy(0.0)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">'
        f'<rect width="{size}" height="{size}" fill="white"/>'
        f'<path d="{path(poly.outer_vertices)}" fill="none" stroke="#888" '
        f'stroke-dasharray="4 3" stroke-width="1"/>'
        f'<path d="{path(poly.vertices)}" fill="#4a90d930" stroke="#1f4f82" stroke-width="1.5"/>'
        f'<line x1="{ox - 6:.2f}" y1="{oy:.2f}" x2="{ox + 6:.2f}" y2="{oy:.2f}" stroke="#c0392b" stroke-width="1.5"/>'
        f'<line x1="{ox:.2f}" y1="{oy - 6:.2f}" x2="{ox:.2f}" y2="{oy + 6:.2f}" stroke="#c0392b" stroke-width="1.5"/>'
        f"</svg>"
    )
