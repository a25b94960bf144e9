"""Dataset ingestion, user splitting and synthetic series.

The UCI "Individual Household Electric Power Consumption" file is
semicolon-separated with a header row
``Date;Time;Global_active_power;Global_reactive_power;Voltage;...`` and uses
``?`` for missing readings.
"""

from __future__ import annotations

import csv
import enum
import logging
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from . import _rng
from .errors import DomainError, EmptyInput, MissingColumn, ParseError
from .perturbation import UserSeries

__all__ = [
    "RawDataset",
    "Signal",
    "SynthSpec",
    "load_power_csv",
    "write_csv",
    "load_csv",
    "split_users",
    "synth_series",
    "excerpt_path",
]

log = logging.getLogger(__name__)

DEFAULT_COLUMN = "Global_active_power"
MISSING = "?"


@dataclass(frozen=True)
class RawDataset:
    column_name: str
    values: np.ndarray = field(repr=False)
    rows_skipped: int = 0
    source: str = "synthetic"

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self):
        return len(self.values)


def excerpt_path():
    """Path of the bundled 1000-row excerpt in UCI layout."""
    return Path(str(resources.files("cldp") / "data" / "household_power_excerpt.txt"))


def load_power_csv(path, column_name=DEFAULT_COLUMN):
    """Read one column of a UCI household power file.

    Rows whose requested column holds ``?`` are skipped and counted in
    ``rows_skipped``.

    Raises:
        FileNotFoundError: ``path`` does not exist.
        MissingColumn: ``column_name`` is not in the header.
        ParseError: a row is malformed; the message carries its line number.
        EmptyInput: the file has no data rows.
    """
    path = Path(path)
    values = []
    skipped = 0
    with path.open(newline="") as fh:
        reader = csv.reader(fh, delimiter=";")
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyInput(f"{path}: file is empty") from None
        header = [h.strip() for h in header]
        if column_name not in header:
            raise MissingColumn(f"{path}: no column {column_name!r} in header {header}")
        col = header.index(column_name)
        rows = 0
        for row in reader:
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            rows += 1
            if len(row) != len(header):
                raise ParseError(
                    f"expected {len(header)} fields, got {len(row)}", line=reader.line_num
                )
            cell = row[col].strip()
            if cell == MISSING or cell == "":
                skipped += 1
                continue
            try:
                v = float(cell)
            except ValueError:
                raise ParseError(f"bad number {cell!r} in {column_name}", line=reader.line_num) from None
            if not math.isfinite(v):
                raise ParseError(f"non-finite value {cell!r}", line=reader.line_num)
            values.append(v)
    if rows == 0:
        raise EmptyInput(f"{path}: no data rows after header")
    return RawDataset(column_name, np.array(values), skipped, str(path))


def write_csv(dataset, path):
    """Export as comma-separated ``index,<column>`` with round-trip float text."""
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", dataset.column_name])
        for i, v in enumerate(dataset.values.tolist()):
            w.writerow([i, repr(v)])


def load_csv(path):
    """Inverse of :func:`write_csv`."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyInput(f"{path}: file is empty") from None
        if len(header) != 2 or header[0] != "index":
            raise ParseError(f"unexpected header {header}", line=1)
        values = []
        for row in reader:
            try:
                values.append(float(row[1]))
            except (IndexError, ValueError):
                raise ParseError(f"bad row {row}", line=reader.line_num) from None
    return RawDataset(header[1], np.array(values), 0, str(path))


def split_users(data, u, window_size=1):
    """Cut ``data`` into ``u`` contiguous segments of ``len(data) // u`` samples.

    Tail samples that do not fill a segment are dropped (and logged).
    """
    if isinstance(u, bool) or not isinstance(u, (int, np.integer)) or u < 1:
        raise DomainError(f"u must be a positive integer, got {u!r}")
    values = getattr(data, "values", data)
    values = np.asarray(values, dtype=float)
    n = len(values)
    if u > n:
        raise DomainError(f"cannot split {n} samples among {u} users")
    seg = n // u
    if n - seg * u:
        log.info("split_users: dropped %d tail samples", n - seg * u)
    return [UserSeries(i + 1, values[i * seg:(i + 1) * seg], window_size) for i in range(u)]


class Signal(str, enum.Enum):
    CONSTANT = "constant"
    SINUSOID = "sinusoid"
    RANDOM_WALK = "random-walk"


@dataclass(frozen=True)
class SynthSpec:
    """Recipe for a synthetic multi-user dataset.

    ``level`` is the baseline for every signal; ``amplitude`` and ``period``
    (in samples) shape the sinusoid; ``step_std`` is the random-walk
    increment standard deviation.
    """

    num_users: int
    samples_per_user: int
    signal: Signal = Signal.RANDOM_WALK
    level: float = 1.0
    amplitude: float = 1.0
    period: float = 60.0
    step_std: float = 0.1
    seed: int = 0
    window_size: int = 1

    def __post_init__(self):
        object.__setattr__(self, "signal", Signal(self.signal))
        if self.num_users < 1 or self.samples_per_user < 1 or self.window_size < 1:
            raise DomainError("num_users, samples_per_user and window_size must be positive")
        if not self.step_std >= 0:
            raise DomainError(f"step_std must be >= 0, got {self.step_std}")
        if not self.period > 0:
            raise DomainError(f"period must be positive, got {self.period}")


def synth_series(spec):
    """Generate one :class:`UserSeries` per user, deterministic in ``spec.seed``."""
    n = spec.samples_per_user
    out = []
    for i in range(1, spec.num_users + 1):
        if spec.signal is Signal.CONSTANT:
            x = np.full(n, float(spec.level))
        elif spec.signal is Signal.SINUSOID:
            x = spec.level + spec.amplitude * np.sin(2 * np.pi * np.arange(n) / spec.period)
        else:
            rng = _rng.stream(spec.seed, _rng.SYNTH, i)
            steps = rng.normal(0.0, spec.step_std, size=n)
            steps[0] = 0.0
            x = spec.level + np.cumsum(steps)
        out.append(UserSeries(i, x, spec.window_size))
    return out
