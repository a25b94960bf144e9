"""Utility and privacy measures."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, EmptyInput, LengthMismatch, ShapeMismatch

__all__ = [
    "BreakProbability",
    "PrivacyReport",
    "mse",
    "break_probability",
    "epsilon_proxy",
    "privacy_report",
    "aggregate_error",
]

# smallest linear P_break still reported; below it only log10 is kept
UNDERFLOW = 1e-300


def mse(original, perturbed):
    """Mean squared element-wise difference."""
    a = np.asarray(original, dtype=float)
    b = np.asarray(perturbed, dtype=float)
    if a.shape != b.shape:
        raise LengthMismatch(f"lengths differ: {a.size} vs {b.size}")
    if a.size == 0:
        raise EmptyInput("mse of empty series")
    d = a - b
    return float(np.mean(d * d))


@dataclass(frozen=True)
class BreakProbability:
    log10: float
    value: Optional[float]  # None when below UNDERFLOW

    @property
    def underflow(self):
        return self.value is None


def _positive_int(name, v):
    if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 1:
        raise DomainError(f"{name} must be a positive integer, got {v!r}")
    return int(v)


def _positive(name, v):
    if not (isinstance(v, (int, float, np.integer, np.floating)) and math.isfinite(v) and v > 0):
        raise DomainError(f"{name} must be positive, got {v!r}")
    return float(v)


def break_probability(k, l, u):
    """Chance ``(1/k)^(l*u)`` of guessing every toss, computed in log space."""
    k, l, u = _positive_int("k", k), _positive_int("l", l), _positive_int("u", u)
    log10 = -(l * u) * math.log10(k) if k > 1 else 0.0
    value = None
    if log10 >= math.log10(UNDERFLOW):
        value = float(k) ** -(l * u)
    return BreakProbability(log10, value)


def epsilon_proxy(k, l, u, A, c=1.0):
    """Privacy-loss proxy ``c * l * u / (A * k)``.

    Only the proportionality is meaningful; ``c`` is a free constant.
    """
    k, l, u = _positive("k", k), _positive("l", l), _positive("u", u)
    A, c = _positive("A", A), _positive("c", c)
    return c * l * u / (A * k)


@dataclass(frozen=True)
class PrivacyReport:
    k: int
    l: int
    u: int
    A: float
    c: float
    epsilon_proxy: float
    break_probability_log10: float
    break_probability: Optional[float]

    @property
    def no_tossing_entropy(self):
        return self.k == 1


def privacy_report(k, l, u, A, c=1.0):
    bp = break_probability(k, l, u)
    return PrivacyReport(
        k=int(k), l=int(l), u=int(u), A=float(A), c=float(c),
        epsilon_proxy=epsilon_proxy(k, l, u, A, c),
        break_probability_log10=bp.log10,
        break_probability=bp.value,
    )


def aggregate_error(report, truth, normalize=True):
    """Squared error of the collector's window aggregates against ground truth.

    Args:
        report: an :class:`~cldp.aggregation.AggregateReport`.
        truth: true window totals, one per window of ``report``.
        normalize: divide each window total by the window length first, so
            the error is that of the per-sample window average across users.
            With ``False`` the raw window totals are compared.

    Returns:
        Mean over windows of the squared difference.
    """
    noisy = np.asarray(report.per_window_total, dtype=float)
    truth = np.asarray(truth, dtype=float)
    if noisy.shape != truth.shape:
        raise ShapeMismatch(f"report has {noisy.size} windows, truth has {truth.size}")
    if noisy.size == 0:
        raise EmptyInput("report has no windows")
    d = noisy - truth
    if normalize:
        d = d / report.window_size
    return float(np.mean(d * d))
