"""Sine-wave partitioning and per-user noise generation.

One full period of ``y(t) = A sin(2 pi t / T)`` is cut into ``u`` equal
half-open intervals, one per user.  Each interval carries ``k`` evenly spaced
tossing points; the sine values at those points are the only noise values the
user may add to their data.  Since the union of every user's points is the
uniform ``u*k`` grid over a whole period, the noise values of all users sum to
zero, which is what lets the collector's aggregate come out clean.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _rng
from .errors import ConfigError, IndexOutOfRange

__all__ = [
    "Mode",
    "CldpConfig",
    "PartitionAssignment",
    "TossingGrid",
    "NoiseVector",
    "partition_interval",
    "partition_map",
    "tossing_grid",
    "grid_amplitudes",
    "sample_noise_vector",
]


class Mode(str, enum.Enum):
    """How a user turns grid amplitudes into a window of noise.

    ``SHUFFLE`` permutes ``l/k`` full copies of the grid amplitudes, so every
    window sums to the same value and cancellation across users is exact.
    ``TOSS`` draws every sample independently and uniformly from the grid.
    """

    SHUFFLE = "shuffle"
    TOSS = "toss"


def _frozen(values):
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class CldpConfig:
    """Full parameterization of the cooperative mechanism.

    Args:
        num_users: ``u``, number of cooperating users. Must be even so every
            partition has an antiphase partner.
        tossing_space: ``k``, tossing points per partition.
        window_size: ``l``, samples perturbed by one noise vector.
        amplitude: ``A``, peak noise magnitude in data units.
        period: ``T``, abstract phase period of the sine wave.
        mode: :class:`Mode` or its string value.
        master_seed: root of every random stream (64-bit unsigned).
        randomize_assignment: map users to partitions through a seeded
            permutation instead of the identity.
    """

    num_users: int
    tossing_space: int
    window_size: int
    amplitude: float
    period: float = 1.0
    mode: Mode = Mode.SHUFFLE
    master_seed: int = 0
    randomize_assignment: bool = False

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        for name in ("num_users", "tossing_space", "window_size"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.num_users < 2 or self.num_users % 2:
            raise ConfigError(f"num_users must be even and >= 2, got {self.num_users}")
        if self.tossing_space < 1:
            raise ConfigError(f"tossing_space must be >= 1, got {self.tossing_space}")
        if self.window_size < 1:
            raise ConfigError(f"window_size must be >= 1, got {self.window_size}")
        if not (math.isfinite(self.amplitude) and self.amplitude > 0):
            raise ConfigError(f"amplitude must be positive, got {self.amplitude}")
        if not (math.isfinite(self.period) and self.period > 0):
            raise ConfigError(f"period must be positive, got {self.period}")
        if self.mode is Mode.SHUFFLE and self.window_size % self.tossing_space:
            raise ConfigError(
                f"shuffle mode needs window_size % tossing_space == 0, "
                f"got l={self.window_size}, k={self.tossing_space}"
            )
        try:
            object.__setattr__(self, "master_seed", _rng.check_seed(self.master_seed))
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from None

    @property
    def grid_size(self):
        """Number of points on the shared grid, ``u * k``."""
        return self.num_users * self.tossing_space


@dataclass(frozen=True)
class PartitionAssignment:
    user_index: int
    interval_start: float
    interval_end: float

    def __contains__(self, t):
        return self.interval_start <= t < self.interval_end


@dataclass(frozen=True)
class TossingGrid:
    """The ``k`` phase points of one partition and the sine values there."""

    user_index: int
    points: np.ndarray = field(repr=False)
    amplitudes: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class NoiseVector:
    user_index: int
    values: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.values)


def _check_index(i, cfg):
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)):
        raise IndexOutOfRange(f"user index must be an integer, got {i!r}")
    if not 1 <= i <= cfg.num_users:
        raise IndexOutOfRange(f"user index {i} outside 1..{cfg.num_users}")
    return int(i)


def partition_interval(i, cfg):
    """Half-open phase interval ``[(i-1) T/u, i T/u)`` of partition ``i``."""
    i = _check_index(i, cfg)
    k, n, T = cfg.tossing_space, cfg.grid_size, cfg.period
    # same rounding as tossing_grid so the first point equals the start
    return PartitionAssignment(i, (i - 1) * k * T / n, i * k * T / n)


def _unit_sine(m, n):
    """``sin(2 pi m / n)`` for integer grid indices ``m`` with ``n`` even.

    The upper half of the period is folded onto the lower half with a sign
    flip, so antiphase grid points are exact negations of each other.
    """
    m = np.asarray(m)
    half = n // 2
    folded = np.where(m >= half, m - half, m)
    s = np.sin(2.0 * np.pi * folded / n)
    return np.where(m >= half, -s, s)


def tossing_grid(i, cfg):
    """Tossing points and amplitudes of partition ``i``.

    Point ``j`` sits at ``(i-1) T/u + j (T/u)/k``; it is evaluated as
    ``m T/(u k)`` with ``m = (i-1) k + j`` so that the union over all
    partitions is bit-for-bit the uniform ``u*k`` grid.
    """
    i = _check_index(i, cfg)
    k, n = cfg.tossing_space, cfg.grid_size
    m = (i - 1) * k + np.arange(k)
    points = m * cfg.period / n
    amplitudes = cfg.amplitude * _unit_sine(m, n)
    return TossingGrid(i, _frozen(points), _frozen(amplitudes))


def grid_amplitudes(cfg):
    """Amplitudes of the whole ``u*k`` grid in phase order."""
    m = np.arange(cfg.grid_size)
    return cfg.amplitude * _unit_sine(m, cfg.grid_size)


def partition_map(cfg):
    """Partition index (1-based) assigned to each user, in user order."""
    u = cfg.num_users
    if not cfg.randomize_assignment:
        return tuple(range(1, u + 1))
    perm = _rng.stream(cfg.master_seed, _rng.ASSIGNMENT).permutation(u)
    return tuple(int(p) + 1 for p in perm)


def sample_noise_vector(i, cfg, window=0, partition=None):
    """Draw the length-``l`` noise vector user ``i`` adds to one window.

    The stream is keyed by ``(master_seed, i, window)``; the same arguments
    always return the same values.

    Args:
        i: 1-based user index.
        cfg: mechanism configuration.
        window: window counter, gives every window a fresh draw.
        partition: override the partition of user ``i``; defaults to the
            one chosen by :func:`partition_map`.
    """
    i = _check_index(i, cfg)
    if partition is None:
        partition = partition_map(cfg)[i - 1]
    amps = tossing_grid(partition, cfg).amplitudes
    k, l = cfg.tossing_space, cfg.window_size
    rng = _rng.stream(cfg.master_seed, _rng.NOISE, i, window)
    if cfg.mode is Mode.SHUFFLE:
        if l % k:
            raise ConfigError(f"shuffle mode needs l % k == 0, got l={l}, k={k}")
        values = rng.permutation(np.tile(amps, l // k))
    else:
        values = amps[rng.integers(0, k, size=l)]
    return NoiseVector(i, _frozen(values))
