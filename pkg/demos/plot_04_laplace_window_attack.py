"""
Why independent noise is not enough
===================================

A household reporting 0.5 kWh per minute adds zero-mean Laplace noise to
every reading. Summing an hour of readings washes the noise out, and the
hourly total is recovered.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cldp import LaplaceConfig, UserSeries, laplace_perturb

hours, per_hour = 10_000, 60
series = UserSeries(1, np.full(hours * per_hour, 0.5))
out = laplace_perturb(series, LaplaceConfig(epsilon=1.0, sensitivity=1.0, seed=0))

hourly = out.samples.reshape(hours, per_hour).sum(axis=1)
running = np.cumsum(hourly) / np.arange(1, hours + 1)
print(f"noise variance {out.noise.var():.3f} (2b^2 = 2)")
print(f"mean hourly total after {hours} hours: {running[-1]:.3f} kWh (true 30)")

fig, ax = plt.subplots(figsize=(6, 3))
ax.semilogx(np.arange(1, hours + 1), running)
ax.axhline(30, color="k", lw=0.8)
ax.set_xlabel("hours observed")
ax.set_ylabel("running mean of hourly sums")
fig.tight_layout()
fig.savefig("laplace_window_attack.png", dpi=120)
