"""Cooperative local differential privacy for multi-user time series."""

__version__ = "0.1.0"

from .aggregation import AggregateReport, aggregate, residual, true_aggregates
from .baseline import LaplaceConfig, laplace_perturb
from .data import RawDataset, Signal, SynthSpec, load_power_csv, split_users, synth_series
from .errors import (
    CldpError, ConfigError, DomainError, EmptyInput, IndexOutOfRange, LengthMismatch,
    MissingColumn, ParseError, ShapeMismatch, UserCountMismatch,
)
from .metrics import aggregate_error, break_probability, epsilon_proxy, mse, privacy_report
from .noise_model import (
    CldpConfig, Mode, NoiseVector, PartitionAssignment, TossingGrid, partition_interval,
    partition_map, sample_noise_vector, tossing_grid,
)
from .perturbation import PerturbedSeries, UserSeries, perturb_all, perturb_user_series, perturb_window
