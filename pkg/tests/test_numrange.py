import numpy as np
import pytest

from otk.matcore import DEFAULT_TOL, op_norm, qform
from otk.numrange import (
    NotInRangeError,
    Verdict,
    _convex_hull,
    _hull_signed_margin,
    maximal_numerical_range,
    mnr_sampling_oracle,
    nr_boundary,
    nr_contains_zero,
    nr_meets_nonpositive_reals,
    nr_witness,
    point_margin,
    polygon_csv,
    polygon_svg,
    ray_probe,
    zero_margin,
)


def test_verdict_three_values():
    assert Verdict.TRUE.is_true and not Verdict.TRUE.is_false and Verdict.TRUE.decided
    assert Verdict.FALSE.is_false and Verdict.FALSE.decided
    assert not Verdict.INCONCLUSIVE.decided


def test_identity_range_is_a_point():
    poly = nr_boundary(np.eye(3, dtype=complex))
    assert poly.is_degenerate and poly.degenerate_kind == "point"
    assert np.allclose(poly.vertices, 1.0)


def test_normal_matrix_range_is_eigenvalue_hull():
    # normal fast path: W(diag) = convex hull of the diagonal
    D = np.diag([1.0, 1j, -1.0, -1j])
    poly = nr_boundary(D, n_angles=32)
    hull = poly.vertices[_convex_hull(poly.vertices)]
    for lam in (1.0, 1j, -1.0, -1j):
        assert min(abs(hull - lam)) < 1e-9
    assert zero_margin(D) == pytest.approx(np.sqrt(0.5), abs=1e-9)


def test_hermitian_range_is_real_segment():
    H = np.diag([-0.25, 0.75]).astype(complex)
    poly = nr_boundary(H)
    assert poly.is_degenerate and poly.degenerate_kind == "segment"
    assert np.max(np.abs(poly.vertices.imag)) < 1e-12


def test_shift_block_range_is_disk():
    # W([[0,1],[0,0]]) is the closed disk of radius 1/2
    N = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    poly = nr_boundary(N, n_angles=64)
    assert np.allclose(np.abs(poly.vertices), 0.5, atol=1e-9)
    assert zero_margin(N) == pytest.approx(0.5, abs=1e-9)


def test_point_margin_sign_convention():
    D4 = np.diag([1.0, 1j, -1.0, -1j])
    assert point_margin(D4, 0.0) == pytest.approx(np.sqrt(0.5), abs=1e-9)  # depth inside
    assert point_margin(D4, 2.0) == pytest.approx(-1.0, abs=1e-9)  # distance outside
    # degenerate hulls are never "inside": on the set itself the margin is 0
    seg = np.diag([1.0, -1.0]).astype(complex)
    assert point_margin(seg, 0.0) == pytest.approx(0.0, abs=1e-12)
    assert point_margin(seg, 2.0) == pytest.approx(-1.0, abs=1e-9)


def test_boundary_vertices_are_certified():
    rng = np.random.default_rng(2)
    B = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    poly = nr_boundary(B, n_angles=32)
    for k in range(poly.n_angles):
        x = poly.witnesses[k]  # one row per angle
        assert np.linalg.norm(x) == pytest.approx(1.0, abs=1e-10)
        assert qform(B, x) == pytest.approx(poly.vertices[k], abs=1e-9)


def test_inner_polygon_within_support_lines():
    rng = np.random.default_rng(3)
    B = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    poly = nr_boundary(B, n_angles=48)
    for k, theta in enumerate(poly.angles):
        proj = np.real(np.exp(-1j * theta) * poly.vertices)
        assert np.max(proj) <= poly.support_values[k] + 1e-9


def test_ray_probe_hit_and_miss():
    # conjugate phase pair: the eigenvalue segment crosses the axis at -cos(pi/4)
    hit = ray_probe(np.diag(np.exp(1j * np.array([3 * np.pi / 4, -3 * np.pi / 4]))))
    assert hit.margin >= 0.0
    assert hit.witness_point == pytest.approx(-np.sqrt(0.5), abs=1e-9)
    assert hit.leftmost == pytest.approx(hit.rightmost, abs=1e-12)

    miss = ray_probe(np.diag([1.0, 1j]))
    assert miss.margin == pytest.approx(-np.sqrt(0.5), abs=1e-9)
    assert miss.leftmost is None and miss.rightmost is None


def test_ray_probe_leftmost_is_most_negative():
    B = np.diag([-2.0, -0.5, 1.0]).astype(complex)
    probe = ray_probe(B)
    assert probe.margin >= 0.0
    assert probe.leftmost == pytest.approx(-2.0, abs=1e-9)
    # the admissible interval is clipped to the ray, not the full section
    assert probe.rightmost == pytest.approx(0.0, abs=1e-9)
    assert probe.witness_point == pytest.approx(-2.0, abs=1e-9)


def test_nr_witness_interior_point():
    rng = np.random.default_rng(4)
    B = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    target = complex(np.trace(B)) / 3  # always in W(B)
    w = nr_witness(B, target)
    assert w.residual <= 1e-9
    assert qform(B, w.vector) == pytest.approx(w.point, abs=1e-12)
    assert abs(w.point - target) <= 1e-9


def test_nr_witness_outside_raises():
    with pytest.raises(NotInRangeError):
        nr_witness(np.eye(2, dtype=complex), 5.0)


def test_nr_contains_zero_three_ways():
    inside = nr_contains_zero(nr_boundary(np.diag([1.0, -1.0]).astype(complex)))
    assert inside.verdict.is_true
    assert inside.witness is not None

    outside = nr_contains_zero(nr_boundary(np.eye(2, dtype=complex)))
    assert outside.verdict.is_false


def test_nonpositive_ray_region_witness():
    B = np.diag([-0.5 + 0j, 1.0])
    hit = nr_meets_nonpositive_reals(nr_boundary(B))
    assert hit is not None
    assert hit.point.real <= 1e-9 and abs(hit.point.imag) <= 1e-9

    miss = nr_meets_nonpositive_reals(nr_boundary(np.diag([1.0 + 0j, 2.0])))
    assert miss is None


def test_normal_vs_general_path_agree():
    rng = np.random.default_rng(5)
    for _ in range(5):
        d = rng.normal(size=4) + 1j * rng.normal(size=4)
        Q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
        Nm = Q @ np.diag(d) @ Q.conj().T
        # perturb away from exact normality so the general path runs
        G = Nm + 1e-13 * np.array([[0, 1, 0, 0]] * 4).T
        assert abs(zero_margin(Nm) - zero_margin(G)) < 1e-9


def test_maximal_range_of_normal_matrix():
    # top-modulus eigenvalues 1 and -1; MNR is their segment, so 0 enters
    # the maximal range even though 0.3 keeps it strictly inside W(T)
    T = np.diag([1.0, -1.0, 0.3]).astype(complex)
    poly = maximal_numerical_range(T)
    assert np.max(np.abs(poly.vertices.imag)) < 1e-8
    assert nr_contains_zero(poly, tol=1e-8).verdict.is_true
    for k in range(poly.n_angles):
        x = poly.witnesses[k]  # lifted back to the full space
        assert np.linalg.norm(x) == pytest.approx(1.0, abs=1e-10)
        assert np.linalg.norm(T @ x) >= op_norm(T) - 1e-6


def test_maximal_subset_of_classical():
    rng = np.random.default_rng(6)
    B = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    classical = nr_boundary(B)
    maximal = maximal_numerical_range(B)
    hull = classical.vertices[_convex_hull(classical.vertices)]
    worst = min(_hull_signed_margin(complex(z), hull) for z in maximal.vertices)
    assert worst >= -1e-7 * op_norm(B)


def test_mnr_sampling_oracle_cloud():
    # diag(1, 0.3): |x1|^2 is uniform on the complex unit sphere of C^2, so a
    # slack of 0.1 keeps roughly a fifth of the samples
    T = np.diag([1.0, 0.3]).astype(complex)
    slack = 0.1
    cloud = mnr_sampling_oracle(T, slack=slack, samples=5000, seed=11)
    assert len(cloud) > 100
    poly = maximal_numerical_range(T)
    hull = poly.vertices[_convex_hull(poly.vertices)]
    allowance = 10.0 * np.sqrt(slack) * op_norm(T)
    worst = min(_hull_signed_margin(complex(z), hull) for z in cloud)
    assert worst >= -allowance


def test_mnr_sampling_deterministic():
    T = np.diag([1.0, 0.5]).astype(complex)
    c1 = mnr_sampling_oracle(T, samples=500, seed=3)
    c2 = mnr_sampling_oracle(T, samples=500, seed=3)
    assert np.array_equal(c1, c2)


def test_polygon_csv_and_svg_formats():
    poly = nr_boundary(np.diag([1.0, 1j]))
    csv = polygon_csv(poly)
    lines = csv.strip().splitlines()
    assert lines[0] == "angle,re,im,re_outer,im_outer"
    assert len(lines) == poly.n_angles + 1
    svg = polygon_svg(poly)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")


def test_min_angles_validation():
    with pytest.raises(ValueError):
        nr_boundary(np.eye(2, dtype=complex), n_angles=8)
