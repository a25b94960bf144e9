import math
from collections import Counter
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cldp import (
    CldpConfig, ConfigError, IndexOutOfRange, Mode, partition_interval, partition_map,
    sample_noise_vector, tossing_grid,
)
from cldp.noise_model import grid_amplitudes


def make(u=4, k=5, l=None, A=1.0, T=1.0, mode=Mode.SHUFFLE, seed=0, **kw):
    return CldpConfig(u, k, k if l is None else l, A, T, mode, seed, **kw)


@st.composite
def configs(draw, mode=None):
    u = 2 * draw(st.integers(1, 10))
    k = draw(st.integers(1, 12))
    mode = mode or draw(st.sampled_from(list(Mode)))
    l = k * draw(st.integers(1, 5)) if mode is Mode.SHUFFLE else draw(st.integers(1, 60))
    A = draw(st.floats(0.01, 100))
    T = draw(st.floats(0.1, 10))
    seed = draw(st.integers(0, 2**64 - 1))
    return CldpConfig(u, k, l, A, T, mode, seed, draw(st.booleans()))


class TestConfig:
    @pytest.mark.parametrize("u", [0, 1, 3, 5, 7])
    def test_odd_or_too_few_users_rejected(self, u):
        with pytest.raises(ConfigError):
            make(u=u)

    @pytest.mark.parametrize("field,value", [
        ("tossing_space", 0), ("window_size", 0), ("amplitude", 0.0), ("amplitude", -1.0),
        ("period", 0.0), ("period", float("inf")), ("master_seed", -1), ("master_seed", 2**64),
    ])
    def test_invalid_fields(self, cfg, field, value):
        with pytest.raises(ConfigError):
            replace(cfg, **{field: value})

    def test_shuffle_needs_divisible_window(self):
        with pytest.raises(ConfigError):
            make(k=3, l=10)
        make(k=3, l=10, mode=Mode.TOSS)

    def test_mode_from_string(self):
        assert make(mode="toss").mode is Mode.TOSS

    def test_multiple_of_four_not_required(self):
        make(u=6)


class TestPartition:
    @pytest.mark.parametrize("i,u,T,expected", [
        (1, 4, 1.0, (0.0, 0.25)),
        (4, 4, 1.0, (0.75, 1.0)),
        (3, 8, 2.0, (0.5, 0.75)),
    ])
    def test_examples(self, i, u, T, expected):
        p = partition_interval(i, make(u=u, T=T))
        assert (p.interval_start, p.interval_end) == expected
        assert p.user_index == i

    @pytest.mark.parametrize("i", [0, 5, -1])
    def test_index_out_of_range(self, i):
        with pytest.raises(IndexOutOfRange):
            partition_interval(i, make(u=4))

    @given(configs())
    def test_tiling(self, cfg):
        parts = [partition_interval(i, cfg) for i in range(1, cfg.num_users + 1)]
        assert parts[0].interval_start == 0.0
        assert parts[-1].interval_end == pytest.approx(cfg.period, rel=1e-15)
        for a, b in zip(parts, parts[1:]):
            assert a.interval_end == b.interval_start


class TestTossingGrid:
    def test_points_example(self):
        g = tossing_grid(1, make(u=4, k=5))
        np.testing.assert_allclose(g.points, [0, 0.05, 0.10, 0.15, 0.20], atol=1e-15)

    def test_amplitudes_example(self):
        g = tossing_grid(1, make(u=4, k=5))
        expected = [math.sin(j * math.pi / 10) for j in range(5)]
        np.testing.assert_allclose(g.amplitudes, expected, rtol=1e-15, atol=1e-16)

    def test_third_user_two_points(self):
        g = tossing_grid(3, make(u=4, k=2, A=3.0))
        np.testing.assert_array_equal(g.points, [0.5, 0.625])
        # independent scalar evaluation of the two formulas
        oracle = [3.0 * math.sin(2 * math.pi * p / 1.0) for p in (0.5, 0.625)]
        np.testing.assert_allclose(g.amplitudes, oracle, atol=1e-15)
        assert g.amplitudes[1] == pytest.approx(-3 / math.sqrt(2), abs=1e-15)

    def test_bad_index(self):
        with pytest.raises(IndexOutOfRange):
            tossing_grid(0, make())

    @given(configs())
    def test_points_in_own_interval(self, cfg):
        for i in range(1, cfg.num_users + 1):
            p = partition_interval(i, cfg)
            g = tossing_grid(i, cfg)
            assert len(g.points) == cfg.tossing_space
            assert all(p.interval_start <= t < p.interval_end for t in g.points)
            np.testing.assert_allclose(
                g.amplitudes, cfg.amplitude * np.sin(2 * np.pi * g.points / cfg.period),
                atol=1e-12 * cfg.amplitude,
            )

    @given(configs())
    def test_grid_union(self, cfg):
        pts = np.concatenate([tossing_grid(i, cfg).points for i in range(1, cfg.num_users + 1)])
        n = cfg.grid_size
        uniform = [j * cfg.period / n for j in range(n)]
        assert sorted(pts.tolist()) == uniform
        amps = np.concatenate([tossing_grid(i, cfg).amplitudes for i in range(1, cfg.num_users + 1)])
        assert abs(math.fsum(amps)) <= 1e-9 * cfg.amplitude * n

    @given(configs())
    def test_antiphase_partners_negate_exactly(self, cfg):
        half = cfg.num_users // 2
        for i in range(1, half + 1):
            a = tossing_grid(i, cfg).amplitudes
            b = tossing_grid(i + half, cfg).amplitudes
            assert np.array_equal(a, -b)

    def test_full_grid_helper_matches_partitions(self):
        cfg = make(u=6, k=7)
        parts = np.concatenate([tossing_grid(i, cfg).amplitudes for i in range(1, 7)])
        np.testing.assert_array_equal(grid_amplitudes(cfg), parts)


class TestAssignment:
    def test_identity_default(self):
        assert partition_map(make(u=6)) == (1, 2, 3, 4, 5, 6)

    def test_randomized_is_seeded_permutation(self):
        cfg = make(u=16, randomize_assignment=True, seed=3)
        m = partition_map(cfg)
        assert sorted(m) == list(range(1, 17))
        assert m == partition_map(cfg)
        assert m != tuple(range(1, 17))


class TestNoiseVector:
    def test_shuffle_one_copy_is_permutation(self):
        cfg = make(u=4, k=8, l=8, seed=11)
        nv = sample_noise_vector(2, cfg)
        assert sorted(nv.values) == sorted(tossing_grid(2, cfg).amplitudes)

    def test_shuffle_single_point(self):
        cfg = make(u=4, k=1, l=9, A=2.0)
        nv = sample_noise_vector(2, cfg)
        np.testing.assert_array_equal(nv.values, np.full(9, 2.0))

    def test_toss_frequencies(self):
        cfg = make(u=4, k=10, l=10000, mode=Mode.TOSS, seed=5)
        amps = tossing_grid(3, cfg).amplitudes
        nv = sample_noise_vector(3, cfg)
        counts = Counter(nv.values.tolist())
        assert set(counts) <= set(amps.tolist())
        for a in amps:
            assert abs(counts[a] / 10000 - 0.1) <= 0.01

    @given(configs(Mode.SHUFFLE), st.integers(0, 50))
    @settings(max_examples=50)
    def test_shuffle_multiset(self, cfg, window):
        reps = cfg.window_size // cfg.tossing_space
        for i in range(1, cfg.num_users + 1):
            nv = sample_noise_vector(i, cfg, window)
            amps = tossing_grid(partition_map(cfg)[i - 1], cfg).amplitudes
            assert sorted(nv.values.tolist()) == sorted(np.tile(amps, reps).tolist())

    @given(configs(Mode.TOSS))
    @settings(max_examples=50)
    def test_toss_membership(self, cfg):
        i = cfg.num_users
        nv = sample_noise_vector(i, cfg)
        amps = set(tossing_grid(partition_map(cfg)[i - 1], cfg).amplitudes.tolist())
        assert len(nv) == cfg.window_size
        assert set(nv.values.tolist()) <= amps

    @given(configs())
    @settings(max_examples=50)
    def test_bounded_and_deterministic(self, cfg):
        for i in (1, cfg.num_users):
            a = sample_noise_vector(i, cfg, 3)
            b = sample_noise_vector(i, cfg, 3)
            assert np.all(np.abs(a.values) <= cfg.amplitude)
            assert a.values.tobytes() == b.values.tobytes()

    @given(configs(), st.sampled_from([0.25, 0.5, 2.0, 4.0, 1024.0]))
    @settings(max_examples=50)
    def test_amplitude_linearity(self, cfg, c):
        scaled = replace(cfg, amplitude=cfg.amplitude * c)
        a = sample_noise_vector(1, cfg).values
        b = sample_noise_vector(1, scaled).values
        np.testing.assert_array_equal(b, a * c)

    def test_windows_and_users_get_distinct_streams(self):
        cfg = make(u=4, k=10, l=50, mode=Mode.TOSS)
        v = [sample_noise_vector(1, cfg, w).values for w in range(3)]
        assert not np.array_equal(v[0], v[1]) and not np.array_equal(v[1], v[2])

    def test_adding_users_keeps_other_streams(self):
        small = make(u=4, k=10, l=50, mode=Mode.TOSS, seed=9)
        big = replace(small, num_users=6)

        def toss_indices(cfg):
            amps = tossing_grid(1, cfg).amplitudes.tolist()
            return [amps.index(x) for x in sample_noise_vector(1, cfg).values.tolist()]

        assert toss_indices(small) == toss_indices(big)
