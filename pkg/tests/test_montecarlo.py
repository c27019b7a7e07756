"""Counter-based streams and the chunked mean estimator."""
import numpy as np
import pytest

from gausszonoids import EstimateWithCI, MCConfig, mc_mean, stream


def test_stream_is_deterministic():
    a = stream(42, 3).standard_normal(8)
    b = stream(42, 3).standard_normal(8)
    assert np.array_equal(a, b)


def test_stream_substreams_differ():
    a = stream(42, 0).standard_normal(8)
    b = stream(42, 1).standard_normal(8)
    c = stream(43, 0).standard_normal(8)
    assert not np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_mc_mean_reproducible():
    cfg = MCConfig(samples=30_000, seed=9, chunk=1 << 12)

    def draw(rng, n):
        return rng.standard_normal(n) ** 2

    first = mc_mean(draw, cfg)
    second = mc_mean(draw, cfg)
    assert first == second
    assert isinstance(first, EstimateWithCI)
    assert first.n_samples == 30_000


def test_mc_mean_matches_known_moment():
    # E xi^2 = 1 for standard normal; the z-score must be modest
    cfg = MCConfig(samples=200_000, seed=1)
    est = mc_mean(lambda rng, n: rng.standard_normal(n) ** 2, cfg)
    assert abs(est.mean - 1.0) < 4 * est.std_error
    # SE of the sample mean of chi^2_1 is sqrt(2/n)
    assert est.std_error == pytest.approx((2 / 200_000) ** 0.5, rel=0.05)


def test_mc_mean_constant_has_zero_error():
    cfg = MCConfig(samples=5_000, seed=0)
    est = mc_mean(lambda rng, n: np.full(n, 2.5), cfg)
    assert est.mean == 2.5
    assert est.std_error == 0.0


def test_mc_mean_partial_final_chunk():
    cfg = MCConfig(samples=(1 << 12) + 17, seed=5, chunk=1 << 12)
    est = mc_mean(lambda rng, n: np.ones(n), cfg)
    assert est.mean == 1.0
    assert est.n_samples == (1 << 12) + 17


def test_config_validation():
    with pytest.raises(ValueError):
        MCConfig(samples=0)
    with pytest.raises(ValueError):
        MCConfig(samples=100, chunk=0)
    with pytest.raises(ValueError):
        MCConfig(samples=100, seed=-1)
