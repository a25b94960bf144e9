"""Per-user windowed perturbation with cooperative noise."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, EmptyInput, LengthMismatch
from .noise_model import NoiseVector, partition_map, sample_noise_vector

__all__ = ["UserSeries", "PerturbedSeries", "perturb_window", "perturb_user_series", "perturb_all"]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class UserSeries:
    """Raw samples of one user, cut into windows of ``window_size``."""

    user_index: int
    samples: np.ndarray = field(repr=False)
    window_size: int = 1

    def __post_init__(self):
        arr = np.array(self.samples, dtype=float)
        if arr.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite")
        if self.window_size < 1:
            raise ValueError(f"window_size must be >= 1, got {self.window_size}")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    def __len__(self):
        return len(self.samples)

    @property
    def num_windows(self):
        return len(self.samples) // self.window_size

    @property
    def dropped(self):
        """Samples in the trailing partial window."""
        return len(self.samples) % self.window_size

    def windowed(self):
        """Complete windows as a ``(num_windows, window_size)`` array."""
        n = self.num_windows * self.window_size
        return self.samples[:n].reshape(self.num_windows, self.window_size)


@dataclass(frozen=True)
class PerturbedSeries:
    """What one user sends to the collector, plus the noise kept for audits.

    Only :attr:`samples` is ever handed to :func:`cldp.aggregation.aggregate`;
    ``noise_used`` exists so tests can check the reversibility invariant.
    """

    user_index: int
    samples: np.ndarray = field(repr=False)
    noise_used: tuple[NoiseVector, ...] = field(repr=False)
    window_size: int
    dropped: int = 0

    def __len__(self):
        return len(self.samples)

    @property
    def noise(self):
        """All retained noise, concatenated in sample order."""
        if not self.noise_used:
            return np.zeros(0)
        return np.concatenate([nv.values for nv in self.noise_used])


def perturb_window(window, noise):
    """Add ``noise`` to ``window`` element-wise."""
    values = noise.values if isinstance(noise, NoiseVector) else noise
    window = np.asarray(window, dtype=float)
    values = np.asarray(values, dtype=float)
    if window.shape != values.shape:
        raise LengthMismatch(f"window has {window.size} samples, noise has {values.size}")
    return window + values


def perturb_user_series(series, cfg, mapping=None):
    """Perturb every complete window of ``series`` with fresh noise.

    Window ``w`` uses the noise stream ``(cfg.master_seed, user, w)``. A
    trailing partial window is dropped and counted in ``dropped``.

    Args:
        series: the user's raw data; its ``window_size`` must match ``cfg``.
        cfg: mechanism configuration.
        mapping: user to partition map as returned by
            :func:`cldp.noise_model.partition_map`; computed when omitted.
    """
    if len(series) == 0:
        raise EmptyInput(f"user {series.user_index} has no samples")
    l = cfg.window_size
    if series.window_size != l:
        raise ConfigError(f"series window_size {series.window_size} != config window_size {l}")
    if mapping is None:
        mapping = partition_map(cfg)
    partition = mapping[series.user_index - 1]
    windows = series.windowed()
    noise = tuple(
        sample_noise_vector(series.user_index, cfg, window=w, partition=partition)
        for w in range(len(windows))
    )
    if series.dropped:
        log.warning("user %d: dropped %d trailing samples", series.user_index, series.dropped)
    if noise:
        out = np.concatenate([perturb_window(win, nv) for win, nv in zip(windows, noise)])
    else:
        out = np.zeros(0)
    out.setflags(write=False)
    return PerturbedSeries(series.user_index, out, noise, l, series.dropped)


def perturb_all(users, cfg):
    """Perturb one series per user, sharing a single partition map."""
    mapping = partition_map(cfg)
    return [perturb_user_series(s, cfg, mapping) for s in users]
