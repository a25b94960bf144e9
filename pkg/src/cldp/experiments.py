"""Parameter sweeps over ``k``, ``l``, ``u`` and ``A``.

Each sweep point builds a :class:`~cldp.noise_model.CldpConfig`, perturbs
every user's series, aggregates at the collector and records per-sample MSE,
aggregate error and the privacy figures. Rows come out sorted by swept value
then seed, so the CSV output only depends on the inputs.
"""

from __future__ import annotations

import csv
import dataclasses
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .aggregation import aggregate, true_aggregates
from .data import RawDataset, SynthSpec, split_users, synth_series
from .errors import CldpError, ConfigError, DomainError
from .metrics import aggregate_error, break_probability, epsilon_proxy, mse
from .noise_model import CldpConfig, Mode
from .perturbation import UserSeries, perturb_all

__all__ = [
    "SWEEP_HEADER",
    "SUMMARY_HEADER",
    "SweepSpec",
    "SweepRow",
    "PointResult",
    "make_users",
    "run_point",
    "run_sweep",
    "summarize",
    "write_rows",
    "write_summary",
]

SWEEP_HEADER = (
    "swept_param", "swept_value", "seed", "mse_per_sample",
    "aggregate_error", "epsilon_proxy", "log10_pbreak", "wall_ms",
)
SUMMARY_HEADER = ("swept_param", "swept_value", "mse_mean", "mse_std", "aggerr_mean", "aggerr_std")

PARAMS = {"k": "tossing_space", "l": "window_size", "u": "num_users", "A": "amplitude"}

DataSource = Union[RawDataset, SynthSpec]


def make_users(source, num_users, window_size, seed=0):
    """Per-user series for one sweep point.

    A :class:`SynthSpec` is regenerated with ``num_users``, ``window_size``
    and ``seed`` substituted; a :class:`RawDataset` is split contiguously.
    """
    if isinstance(source, SynthSpec):
        spec = dataclasses.replace(source, num_users=num_users, window_size=window_size, seed=seed)
        return synth_series(spec)
    return split_users(source, num_users, window_size)


@dataclass(frozen=True)
class PointResult:
    perturbed: list = field(repr=False)
    report: object = field(repr=False)
    user_mse: tuple
    mse_per_sample: float
    aggregate_error: float


def run_point(cfg, users):
    """Perturb, aggregate and score one configuration."""
    for s in users:
        if s.num_windows == 0:
            raise DomainError(
                f"user {s.user_index} has {len(s)} samples, fewer than window size {cfg.window_size}"
            )
    perturbed = perturb_all(users, cfg)
    report = aggregate(perturbed, cfg.num_users)
    user_mse = tuple(
        mse(s.samples[: len(p.samples)], p.samples) for s, p in zip(users, perturbed)
    )
    _, true_totals = true_aggregates(users, cfg.window_size, length=len(perturbed[0].samples))
    return PointResult(
        perturbed=perturbed,
        report=report,
        user_mse=user_mse,
        mse_per_sample=float(np.mean(user_mse)),
        aggregate_error=aggregate_error(report, true_totals),
    )


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: ``param`` takes each of ``values``, the rest stay fixed.

    Defaults follow the experimental setup: window 200, ``k = 40``,
    ``A = 3``, ``u = 4``. Repetition ``r`` runs with seed ``seed + r``.
    """

    param: str
    values: Sequence
    source: DataSource
    num_users: int = 4
    tossing_space: int = 40
    window_size: int = 200
    amplitude: float = 3.0
    period: float = 1.0
    mode: Mode = Mode.SHUFFLE
    seed: int = 0
    reps: int = 30
    randomize_assignment: bool = False

    def __post_init__(self):
        if self.param not in PARAMS:
            raise DomainError(f"sweep parameter must be one of {sorted(PARAMS)}, got {self.param!r}")
        if not len(self.values):
            raise DomainError("sweep value list is empty")
        if self.reps < 1:
            raise DomainError(f"reps must be >= 1, got {self.reps}")
        cast = float if self.param == "A" else int
        object.__setattr__(self, "values", tuple(cast(v) for v in self.values))
        object.__setattr__(self, "mode", Mode(self.mode))
        for v in self.values:
            self.config(v, self.seed)

    def config(self, value, seed):
        kwargs = dict(
            num_users=self.num_users,
            tossing_space=self.tossing_space,
            window_size=self.window_size,
            amplitude=self.amplitude,
            period=self.period,
            mode=self.mode,
            master_seed=seed,
            randomize_assignment=self.randomize_assignment,
        )
        kwargs[PARAMS[self.param]] = value
        try:
            return CldpConfig(**kwargs)
        except ConfigError as exc:
            raise ConfigError(f"sweep point {self.param}={value}: {exc}") from None

    def seeds(self):
        return [(self.seed + r) % 2**64 for r in range(self.reps)]


@dataclass(frozen=True)
class SweepRow:
    swept_param: str
    swept_value: float
    seed: int
    mse_per_sample: float
    aggregate_error: float
    epsilon_proxy: float
    log10_pbreak: float
    wall_ms: float = 0.0


def run_sweep(spec, timing=False):
    """Run every value x seed of ``spec``; returns rows in output order.

    ``wall_ms`` is measured only when ``timing`` is set and is 0 otherwise,
    which keeps the output reproducible byte for byte.
    """
    rows = []
    for value in spec.values:
        for seed in spec.seeds():
            cfg = spec.config(value, seed)
            t0 = time.perf_counter()
            try:
                users = make_users(spec.source, cfg.num_users, cfg.window_size, seed)
                res = run_point(cfg, users)
            except CldpError as exc:
                raise type(exc)(f"sweep point {spec.param}={value} seed={seed}: {exc}") from exc
            wall = (time.perf_counter() - t0) * 1e3 if timing else 0.0
            k, l, u, A = cfg.tossing_space, cfg.window_size, cfg.num_users, cfg.amplitude
            rows.append(SweepRow(
                spec.param, value, seed, res.mse_per_sample, res.aggregate_error,
                epsilon_proxy(k, l, u, A), break_probability(k, l, u).log10, wall,
            ))
    rows.sort(key=lambda r: (r.swept_value, r.seed))
    return rows


def _std(x):
    return float(np.std(x, ddof=1)) if len(x) > 1 else 0.0


def summarize(rows):
    """Mean and sample std of MSE and aggregate error per swept value."""
    out = []
    values = sorted({r.swept_value for r in rows})
    for v in values:
        sel = [r for r in rows if r.swept_value == v]
        m = [r.mse_per_sample for r in sel]
        a = [r.aggregate_error for r in sel]
        out.append((sel[0].swept_param, v, float(np.mean(m)), _std(m), float(np.mean(a)), _std(a)))
    return out


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_rows(rows, path_or_file):
    _write(SWEEP_HEADER, [dataclasses.astuple(r) for r in rows], path_or_file)


def write_summary(summary, path_or_file):
    _write(SUMMARY_HEADER, summary, path_or_file)


def _write(header, rows, path_or_file):
    if isinstance(path_or_file, (str, Path)):
        with Path(path_or_file).open("w", newline="") as fh:
            _write(header, rows, fh)
        return
    w = csv.writer(path_or_file, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
