"""Independent Laplace value perturbation, the conventional LDP baseline."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _rng
from .errors import DomainError
from .noise_model import NoiseVector
from .perturbation import PerturbedSeries

__all__ = ["LaplaceConfig", "laplace_noise", "laplace_perturb"]


@dataclass(frozen=True)
class LaplaceConfig:
    epsilon: float
    sensitivity: float = 1.0
    seed: int = 0

    def __post_init__(self):
        for name in ("epsilon", "sensitivity"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and v > 0 and not math.isnan(v)):
                raise DomainError(f"{name} must be positive, got {v!r}")
        _rng.check_seed(self.seed)

    @property
    def scale(self):
        """Laplace scale ``b = sensitivity / epsilon``."""
        return self.sensitivity / self.epsilon


def laplace_noise(scale, size, rng):
    """Zero-mean Laplace samples by inverse CDF of a uniform stream."""
    v = rng.random(size)
    v[v == 0.0] = np.nextafter(0.0, 1.0)
    return np.where(v < 0.5, scale * np.log(2.0 * v), -scale * np.log(2.0 - 2.0 * v))


def laplace_perturb(series, cfg):
    """Add i.i.d. Laplace noise of scale ``cfg.scale`` to every sample.

    The whole series is perturbed (no windowing); the injected noise is kept
    as a single :class:`~cldp.noise_model.NoiseVector`.
    """
    rng = _rng.stream(cfg.seed, _rng.LAPLACE, series.user_index)
    noise = laplace_noise(cfg.scale, len(series.samples), rng)
    noise.setflags(write=False)
    out = series.samples + noise
    out.setflags(write=False)
    return PerturbedSeries(
        series.user_index, out, (NoiseVector(series.user_index, noise),), len(out) or 1, 0
    )
