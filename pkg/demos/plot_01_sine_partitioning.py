"""
Partitioning one sine period among users
========================================

Every user owns an equal slice of one period of ``A sin(2 pi t / T)`` and
may only add the sine values found at its ``k`` tossing points.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cldp import CldpConfig, partition_interval, tossing_grid

cfg = CldpConfig(num_users=4, tossing_space=6, window_size=12, amplitude=3.0)

###############################################################################
# Each partition is half-open, so the four slices tile ``[0, T)``.
for i in range(1, cfg.num_users + 1):
    p = partition_interval(i, cfg)
    g = tossing_grid(i, cfg)
    print(f"user {i}: [{p.interval_start:.3f}, {p.interval_end:.3f})  "
          f"amplitudes {np.round(g.amplitudes, 3)}")

###############################################################################
# Users ``i`` and ``i + u/2`` sit half a period apart, so their noise values
# are exact negatives. The whole grid sums to zero.
all_amps = np.concatenate([tossing_grid(i, cfg).amplitudes for i in range(1, 5)])
print("sum over all tossing points:", all_amps.sum())

t = np.linspace(0, cfg.period, 400)
fig, ax = plt.subplots(figsize=(7, 3))
ax.plot(t, cfg.amplitude * np.sin(2 * np.pi * t / cfg.period), color="0.7")
for i in range(1, cfg.num_users + 1):
    g = tossing_grid(i, cfg)
    ax.plot(g.points, g.amplitudes, "o", label=f"user {i}")
ax.set_xlabel("phase t")
ax.set_ylabel("noise value")
ax.legend(ncol=4, fontsize=8)
fig.tight_layout()
fig.savefig("sine_partitioning.png", dpi=120)
