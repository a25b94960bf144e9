import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cldp import (
    CldpConfig, Mode, ShapeMismatch, UserCountMismatch, UserSeries, aggregate, perturb_all,
    residual, tossing_grid,
)
from cldp.perturbation import PerturbedSeries


def users_of(cfg, n, fill=0.0):
    return [UserSeries(i, np.full(n, fill), cfg.window_size) for i in range(1, cfg.num_users + 1)]


def test_zero_everything():
    cfg = CldpConfig(2, 1, 4, 1.0)
    # user 1 has grid {0}, user 2 has grid {-0}
    perturbed = perturb_all(users_of(cfg, 8), cfg)
    rep = aggregate(perturbed, 2)
    assert np.all(rep.per_timestamp_sum == 0)
    assert np.all(rep.per_window_total == 0)
    assert np.all(rep.per_timestamp_mean == 0)


@pytest.mark.parametrize("u", [2, 4, 6, 8, 16])
@pytest.mark.parametrize("k", [1, 2, 3, 5, 10])
def test_shuffle_cancels_per_window(u, k):
    A, l = 2.5, 3 * k
    cfg = CldpConfig(u, k, l, A, master_seed=u * 100 + k)
    users = [UserSeries(i, np.random.default_rng(i).normal(size=4 * l), l) for i in range(1, u + 1)]
    perturbed = perturb_all(users, cfg)
    rep = aggregate(perturbed, u, originals=users)
    tol = 1e-9 * A * u * l
    assert np.all(np.abs(rep.residual_noise_per_window) <= tol)
    # brute-force oracle: sum every injected noise value of each window
    for w in range(4):
        total = math.fsum(v for p in perturbed for v in p.noise_used[w].values)
        assert abs(total) <= tol


def test_toss_residual_unbiased_over_seeds():
    u, k, l, A = 4, 40, 200, 3.0
    means = []
    for seed in range(100):
        cfg = CldpConfig(u, k, l, A, mode=Mode.TOSS, master_seed=seed)
        users = users_of(cfg, l)
        rep = aggregate(perturb_all(users, cfg), u, originals=users)
        means.append(rep.residual_noise_per_window[0])
    means = np.array(means)
    assert abs(means.mean()) < 3 * means.std(ddof=1) / math.sqrt(100)


def test_antiphase_pairs_for_toss():
    cfg = CldpConfig(8, 13, 20, 3.0, mode=Mode.TOSS)
    for i in range(1, 5):
        assert np.array_equal(tossing_grid(i, cfg).amplitudes, -tossing_grid(i + 4, cfg).amplitudes)


def test_window_totals_and_mean(cfg):
    users = [UserSeries(i, np.arange(30.0) * i, cfg.window_size) for i in range(1, 5)]
    rep = aggregate(perturb_all(users, cfg), 4)
    np.testing.assert_allclose(rep.per_window_total, rep.per_timestamp_sum.reshape(3, 10).sum(axis=1))
    np.testing.assert_array_equal(rep.per_timestamp_mean, rep.per_timestamp_sum / 4)
    assert rep.residual_noise_per_window is None
    assert rep.num_windows == 3


def test_dropped_samples_reported(cfg):
    users = users_of(cfg, 27)
    rep = aggregate(perturb_all(users, cfg), 4)
    assert rep.dropped_samples == 4 * 7


@given(st.lists(st.floats(-100, 100), min_size=4, max_size=4))
@settings(max_examples=30)
def test_linearity_in_shift(shifts):
    cfg = CldpConfig(4, 5, 10, 1.5, master_seed=3)
    base = [UserSeries(i, np.zeros(20), 10) for i in range(1, 5)]
    shifted = [UserSeries(i, np.full(20, s), 10) for i, s in zip(range(1, 5), shifts)]
    a = aggregate(perturb_all(base, cfg), 4)
    b = aggregate(perturb_all(shifted, cfg), 4)
    np.testing.assert_allclose(b.per_timestamp_sum, a.per_timestamp_sum + sum(shifts), atol=1e-9)


def test_user_count_mismatch(cfg):
    with pytest.raises(UserCountMismatch):
        aggregate(perturb_all(users_of(cfg, 10), cfg)[:3], 4)


def test_shape_mismatch():
    p = [PerturbedSeries(1, np.zeros(4), (), 2), PerturbedSeries(2, np.zeros(6), (), 2)]
    with pytest.raises(ShapeMismatch):
        aggregate(p, 2)


class TestResidual:
    def test_identical(self):
        assert np.all(residual([1.0, 2.0], [1.0, 2.0]) == 0)

    def test_direct(self):
        np.testing.assert_array_equal(residual([1, 2], [1.5, 1.5]), [0.5, -0.5])

    @given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=20), st.floats(-10, 10))
    def test_recovers_noisy(self, true, shift):
        noisy = np.array(true) + shift
        r = residual(true, noisy)
        np.testing.assert_allclose(r + np.array(true), noisy, rtol=0, atol=1e-9)

    def test_length_mismatch(self):
        from cldp import LengthMismatch
        with pytest.raises(LengthMismatch):
            residual([1, 2], [1])
