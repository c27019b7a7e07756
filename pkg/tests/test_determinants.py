"""Random determinants against mixed-volume identities and brackets."""
import math

import numpy as np
import pytest
from scipy import special

from gausszonoids import (
    FrameSpec,
    GaussianVector,
    MCConfig,
    RevolutionBody,
    axial_stretch,
    check_determinant_bounds,
    ellipse_support_fn,
    expected_absdet_mc,
    folded_normal_mean,
    iid_square_bounds,
    limit_body_inradius,
    mixed_area,
    mixed_volume_coeff,
    mixed_volume_ellipsoids_mc,
    volume,
)


def iid_frame(m, k, s=0.0, matrix=None):
    mat = np.eye(m) if matrix is None else np.asarray(matrix, dtype=float)
    c = np.zeros(m)
    c[0] = s
    return FrameSpec(m, [GaussianVector(mat, c) for _ in range(k)])


def test_coeff_values():
    # m!/((2 pi)^(k/2) (m-k)! kappa_{m-k})
    assert mixed_volume_coeff(1, 1) == pytest.approx(1 / math.sqrt(2 * math.pi))
    assert mixed_volume_coeff(2, 2) == pytest.approx(2 / (2 * math.pi))
    assert mixed_volume_coeff(2, 1) == pytest.approx(
        2 / (math.sqrt(2 * math.pi) * 1 * 2.0)
    )
    assert mixed_volume_coeff(3, 3) == pytest.approx(6 / (2 * math.pi) ** 1.5)
    with pytest.raises(ValueError):
        mixed_volume_coeff(2, 3)


def test_folded_moment_identity():
    # k = m = 1: E|s + xi| is the folded normal mean
    est = expected_absdet_mc(iid_frame(1, 1, s=3.0), MCConfig(samples=200_000, seed=2))
    assert abs(est.mean - folded_normal_mean(3.0, 1.0)) < 4 * est.std_error


def test_centered_square_is_one():
    est = expected_absdet_mc(iid_frame(2, 2), MCConfig(samples=200_000, seed=3))
    assert abs(est.mean - 1.0) < 4 * est.std_error


def test_square_frame_volume_identity():
    # E|det Gamma| = m! |det M| vol(G(s)) for m iid columns M(c + xi)
    mat = np.array([[1.0, 0.5], [0.0, 2.0]])
    s = 1.2
    est = expected_absdet_mc(iid_frame(2, 2, s=s, matrix=mat), MCConfig(samples=400_000, seed=4))
    expect = 2 * abs(np.linalg.det(mat)) * volume(RevolutionBody("gaussian", 2, s))
    assert abs(est.mean - expect) < 4 * est.std_error


def test_mixed_area_oracle_disc():
    # MV(B, B) = area of the unit disc
    one = lambda theta: np.ones_like(theta)
    assert mixed_area(one, one) == pytest.approx(math.pi, rel=1e-12)


def test_mixed_area_against_perimeter():
    """2 MV(K, B) equals the perimeter of K; for an ellipse that is a complete
    elliptic integral, an oracle the FFT route never touches."""
    a, b = axial_stretch(1.0), 1.0
    shape = np.diag([a, b])
    ecc2 = 1 - (b / a) ** 2
    perimeter = 4 * a * special.ellipe(ecc2)
    got = mixed_area(ellipse_support_fn(shape), lambda t: np.ones_like(t))
    assert got == pytest.approx(perimeter / 2, rel=1e-12)


def test_mixed_area_bilinear_scaling():
    h = ellipse_support_fn(np.diag([1.5, 0.7]))
    hb = lambda t: np.ones_like(t)
    base = mixed_area(h, hb)
    assert mixed_area(lambda t: 3 * h(t), hb) == pytest.approx(3 * base, rel=1e-12)


def test_mixed_area_rejects_garbage():
    with pytest.raises(ValueError):
        mixed_area(lambda t: np.cos(7 * t), lambda t: np.ones_like(t))
    with pytest.raises(ValueError):
        mixed_area(lambda t: np.ones_like(t), lambda t: np.ones_like(t), n_nodes=8)


def test_mixed_volume_mc_matches_exact_area():
    shapes = [np.diag([2.0, 1.0]), np.eye(2)]
    mv = mixed_volume_ellipsoids_mc(shapes, 2, MCConfig(samples=300_000, seed=6))
    exact = mixed_area(ellipse_support_fn(shapes[0]), ellipse_support_fn(shapes[1]))
    assert abs(mv.mean - exact) < 4 * mv.std_error


def test_centered_identity_via_bounds_report_m2():
    cols = [
        GaussianVector(np.array([[1.0, 0.4], [0.0, 1.0]]), np.zeros(2)),
        GaussianVector(np.array([[0.8, 0.0], [0.3, 1.2]]), np.zeros(2)),
    ]
    rep = check_determinant_bounds(FrameSpec(2, cols), MCConfig(samples=300_000, seed=8))
    assert rep.passed
    # centered frames hit the upper bound: estimate = coeff * MV
    assert abs(rep.estimate.mean - rep.upper) < 4 * rep.se_upper
    assert rep.mixed_volume.std_error == 0.0  # planar oracle is exact


def test_centered_identity_m3_mc_vs_mc():
    cols = [
        GaussianVector(np.diag([1.0, 0.7, 1.3]), np.zeros(3)),
        GaussianVector(np.eye(3), np.zeros(3)),
    ]
    rep = check_determinant_bounds(FrameSpec(3, cols), MCConfig(samples=300_000, seed=9))
    assert rep.passed
    assert rep.mixed_volume.std_error > 0.0
    assert abs(rep.estimate.mean - rep.upper) < 4 * rep.se_upper


def test_shifted_frame_sits_inside_the_bracket():
    rep = check_determinant_bounds(iid_frame(2, 2, s=2.0), MCConfig(samples=300_000, seed=10))
    assert rep.passed
    ratio = rep.estimate.mean / rep.upper
    b = limit_body_inradius()
    assert b**2 - 4 * rep.se_upper / rep.upper <= ratio <= 1 + 4 * rep.se_upper / rep.upper


def test_iid_square_bounds_bracket_mc():
    mat = np.array([[1.0, 0.2], [0.1, 0.9]])
    s = 1.5
    sq = iid_square_bounds(2, mat, s)
    est = expected_absdet_mc(iid_frame(2, 2, s=s, matrix=mat), MCConfig(samples=400_000, seed=12))
    assert sq.lower - 4 * est.std_error <= est.mean <= sq.upper + 4 * est.std_error
    # asymptote: E|det| / s approaches the slope for large s
    est50 = expected_absdet_mc(iid_frame(2, 2, s=50.0, matrix=mat), MCConfig(samples=200_000, seed=13))
    sq50 = iid_square_bounds(2, mat, 50.0)
    assert est50.mean / 50.0 == pytest.approx(sq50.asymptote, rel=0.02)


def test_estimator_reproducible():
    cfg = MCConfig(samples=50_000, seed=21)
    frame = iid_frame(3, 2, s=0.5)
    assert expected_absdet_mc(frame, cfg) == expected_absdet_mc(frame, cfg)


def test_frame_validation():
    with pytest.raises(ValueError):
        FrameSpec(2, [])
    with pytest.raises(ValueError):
        FrameSpec(1, [GaussianVector(np.eye(2), np.zeros(2))] * 2)  # k > m
    with pytest.raises(ValueError):
        FrameSpec(2, [GaussianVector(np.eye(3), np.zeros(3))])  # wrong ambient dim
