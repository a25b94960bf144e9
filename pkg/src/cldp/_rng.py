"""Splittable seeding.

Every random stream in the package is keyed by ``(seed, *path)`` through
:class:`numpy.random.SeedSequence`, so streams for different users, windows
or repetitions never overlap and adding a user leaves the others untouched.
"""

import numpy as np

# first element of every spawn key; keeps the stream families disjoint
ASSIGNMENT = 0
NOISE = 1
SYNTH = 2
LAPLACE = 3
SWEEP = 4

_MAX_SEED = 2**64


def check_seed(seed):
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
    if not 0 <= int(seed) < _MAX_SEED:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return int(seed)


def stream(seed, *path):
    """Return an independent generator for ``seed`` and the integer ``path``."""
    ss = np.random.SeedSequence(entropy=check_seed(seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.PCG64(ss))
