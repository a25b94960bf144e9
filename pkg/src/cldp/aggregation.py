"""Collector-side aggregation.

The collector sums the perturbed series it receives per timestamp and per
window. Residual noise is only computable by a harness that also holds the
unperturbed originals; the collector path itself never sees them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import EmptyInput, LengthMismatch, ShapeMismatch, UserCountMismatch

__all__ = ["AggregateReport", "aggregate", "residual", "true_aggregates", "window_totals"]


@dataclass(frozen=True)
class AggregateReport:
    per_timestamp_sum: np.ndarray = field(repr=False)
    per_window_total: np.ndarray = field(repr=False)
    per_timestamp_mean: np.ndarray = field(repr=False)
    window_size: int
    num_users: int
    dropped_samples: int = 0
    # None unless ground truth was supplied
    residual_noise_per_window: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def num_windows(self):
        return len(self.per_window_total)


def window_totals(per_timestamp, window_size):
    """Sum consecutive blocks of ``window_size`` samples."""
    per_timestamp = np.asarray(per_timestamp, dtype=float)
    if len(per_timestamp) % window_size:
        raise ShapeMismatch(
            f"length {len(per_timestamp)} is not a multiple of window size {window_size}"
        )
    return per_timestamp.reshape(-1, window_size).sum(axis=1)


def _stack(series_list, num_users):
    if len(series_list) != num_users:
        raise UserCountMismatch(f"expected {num_users} series, got {len(series_list)}")
    lengths = {len(s.samples) for s in series_list}
    if len(lengths) != 1:
        raise ShapeMismatch(f"series lengths differ: {sorted(lengths)}")
    return np.vstack([s.samples for s in series_list])


def true_aggregates(originals, window_size, length=None):
    """Per-timestamp sums and window totals of the unperturbed data.

    ``originals`` holds raw arrays or :class:`~cldp.perturbation.UserSeries`,
    each truncated to ``length`` (default: the complete-window length).
    """
    arrays = [np.asarray(getattr(o, "samples", o), dtype=float) for o in originals]
    if length is None:
        length = min(len(a) for a in arrays) // window_size * window_size
    if any(len(a) < length for a in arrays):
        raise ShapeMismatch("an original series is shorter than the perturbed data")
    per_ts = np.vstack([a[:length] for a in arrays]).sum(axis=0)
    return per_ts, window_totals(per_ts, window_size)


def aggregate(perturbed, num_users, originals=None):
    """Sum perturbed data across users.

    Args:
        perturbed: one :class:`~cldp.perturbation.PerturbedSeries` per user.
        num_users: expected user count ``u``.
        originals: optional ground truth, one series per user in the same
            order; fills ``residual_noise_per_window`` when given.
    """
    if not perturbed:
        raise EmptyInput("no perturbed series to aggregate")
    sizes = {p.window_size for p in perturbed}
    if len(sizes) != 1:
        raise ShapeMismatch(f"window sizes differ: {sorted(sizes)}")
    l = sizes.pop()
    stacked = _stack(perturbed, num_users)
    per_ts = stacked.sum(axis=0)
    totals = window_totals(per_ts, l)
    res = None
    if originals is not None:
        if len(originals) != num_users:
            raise UserCountMismatch(f"expected {num_users} originals, got {len(originals)}")
        _, true_totals = true_aggregates(originals, l, length=stacked.shape[1])
        res = residual(true_totals, totals)
    return AggregateReport(
        per_timestamp_sum=per_ts,
        per_window_total=totals,
        per_timestamp_mean=per_ts / num_users,
        window_size=l,
        num_users=num_users,
        dropped_samples=sum(p.dropped for p in perturbed),
        residual_noise_per_window=res,
    )


def residual(true_aggregate, noisy_aggregate):
    """``noisy - true`` element-wise."""
    true_aggregate = np.asarray(true_aggregate, dtype=float)
    noisy_aggregate = np.asarray(noisy_aggregate, dtype=float)
    if true_aggregate.shape != noisy_aggregate.shape:
        raise LengthMismatch(
            f"true has {true_aggregate.size} values, noisy has {noisy_aggregate.size}"
        )
    return noisy_aggregate - true_aggregate
