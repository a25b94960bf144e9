"""
Sweeping k, l, u and A
======================

Per-sample MSE and collector aggregate error as one parameter varies while
the others stay at window 200, ``k = 40``, ``u = 4``, ``A = 3``.
Same sweeps as the ``cldp sweep`` subcommand; fewer repetitions here.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from cldp import Mode, SynthSpec
from cldp.experiments import SweepSpec, run_sweep, summarize

source = SynthSpec(num_users=4, samples_per_user=2000, signal="random-walk")
sweeps = {
    "k": dict(values=[2, 5, 10, 20, 40]),
    "l": dict(values=[40, 80, 200, 400], mode=Mode.TOSS),
    "u": dict(values=[4, 8, 12, 16]),
    "A": dict(values=[3, 3.25, 3.5, 4]),
}

fig, axes = plt.subplots(2, 2, figsize=(8, 6))
for ax, (param, kw) in zip(axes.flat, sweeps.items()):
    summary = summarize(run_sweep(SweepSpec(param, source=source, reps=10, **kw)))
    x = [row[1] for row in summary]
    ax.errorbar(x, [r[2] for r in summary], [r[3] for r in summary], marker="o", label="mse")
    ax.errorbar(x, [r[4] for r in summary], [r[5] for r in summary], marker="s", label="aggregate error")
    ax.set_xlabel(param)
    ax.set_yscale("log")
    for row in summary:
        print(f"{param}={row[1]}: mse {row[2]:.4f}  aggregate error {row[4]:.3e}")
axes[0, 0].legend(fontsize=8)
fig.tight_layout()
fig.savefig("parameter_sweeps.png", dpi=120)

###############################################################################
# In shuffle mode the user-averaged MSE is ``A**2 / 2`` whatever ``k`` is,
# and aggregate error is zero up to rounding. The ``l`` sweep runs in toss
# mode, where window averages shrink as windows grow.
