"""Command-line experiment harness.

Subcommands::

    cldp perturb   --out perturbed.csv [data flags] [mechanism flags]
    cldp aggregate --out windows.csv   [data flags] [mechanism flags]
    cldp sweep     --sweep k --values 2,5,10 --out rows.csv --summary summary.csv
    cldp privacy   --tossing 10 --window 5 --users 3

Every error path prints one ``cldp: error: ...`` line and exits non-zero.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from . import __version__
from .aggregation import true_aggregates
from .data import DEFAULT_COLUMN, RawDataset, Signal, SynthSpec, load_power_csv
from .errors import CldpError
from .experiments import (
    PARAMS, SweepSpec, make_users, run_point, run_sweep, summarize, write_rows, write_summary,
)
from .metrics import privacy_report
from .noise_model import CldpConfig, Mode

PERTURB_HEADER = ("user", "sample_index", "original", "perturbed")
AGGREGATE_HEADER = ("window", "noisy_total", "noisy_mean", "true_total", "residual")
PRIVACY_HEADER = ("k", "l", "u", "A", "c", "epsilon_proxy", "log10_pbreak", "pbreak")


def _add_mechanism(p, privacy_only=False):
    g = p.add_argument_group("mechanism")
    g.add_argument("--users", type=int, default=4, help="number of users u (default 4)")
    g.add_argument("--tossing", type=int, default=40, help="tossing space k (default 40)")
    g.add_argument("--window", type=int, default=200, help="window size l (default 200)")
    g.add_argument("--amplitude", type=float, default=3.0, help="noise amplitude A (default 3)")
    if privacy_only:
        g.add_argument("--c", type=float, default=1.0, help="epsilon proxy constant (default 1)")
        return
    g.add_argument("--period", type=float, default=1.0, help="sine period T (default 1)")
    g.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.SHUFFLE.value)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--randomize-assignment", action="store_true")


def _add_data(p):
    g = p.add_argument_group("data")
    src = g.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="PATH", help="UCI household power file")
    src.add_argument("--synth", choices=[s.value for s in Signal],
                     help="synthetic generator (default random-walk)")
    g.add_argument("--column", default=DEFAULT_COLUMN)
    g.add_argument("--offset", type=int, default=0, help="first sample used from --input")
    g.add_argument("--length", type=int, default=None, help="samples used from --input")
    g.add_argument("--samples", type=int, default=2000, help="synthetic samples per user")
    g.add_argument("--level", type=float, default=1.0)
    g.add_argument("--synth-amplitude", type=float, default=1.0)
    g.add_argument("--synth-period", type=float, default=60.0)
    g.add_argument("--step-std", type=float, default=0.1)


def build_parser():
    parser = argparse.ArgumentParser(prog="cldp", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("perturb", help="perturb every user's series")
    _add_mechanism(p)
    _add_data(p)
    p.add_argument("--out", required=True, help="output CSV (user,sample_index,original,perturbed)")

    p = sub.add_parser("aggregate", help="perturb, then aggregate at the collector")
    _add_mechanism(p)
    _add_data(p)
    p.add_argument("--out", required=True, help="per-window output CSV")

    p = sub.add_parser("sweep", help="sweep one parameter")
    _add_mechanism(p)
    _add_data(p)
    p.add_argument("--sweep", required=True, choices=sorted(PARAMS))
    p.add_argument("--values", required=True, help="comma-separated values")
    p.add_argument("--reps", type=int, default=30, help="seeds per value (default 30)")
    p.add_argument("--out", required=True, help="per-row CSV")
    p.add_argument("--summary", help="per-value mean/std CSV")
    p.add_argument("--timing", action="store_true", help="record wall_ms (breaks byte reproducibility)")

    p = sub.add_parser("privacy", help="epsilon proxy and break probability")
    _add_mechanism(p, privacy_only=True)
    p.add_argument("--out", help="optional CSV")
    return parser


def _source(args):
    if args.input:
        data = load_power_csv(args.input, args.column)
        end = None if args.length is None else args.offset + args.length
        values = data.values[args.offset:end]
        return RawDataset(data.column_name, values, data.rows_skipped, data.source)
    return SynthSpec(
        num_users=args.users,
        samples_per_user=args.samples,
        signal=args.synth or Signal.RANDOM_WALK,
        level=args.level,
        amplitude=args.synth_amplitude,
        period=args.synth_period,
        step_std=args.step_std,
        seed=args.seed,
        window_size=args.window,
    )


def _config(args):
    return CldpConfig(
        num_users=args.users,
        tossing_space=args.tossing,
        window_size=args.window,
        amplitude=args.amplitude,
        period=args.period,
        mode=args.mode,
        master_seed=args.seed,
        randomize_assignment=args.randomize_assignment,
    )


def _run(args):
    cfg = _config(args)
    source = _source(args)
    users = make_users(source, cfg.num_users, cfg.window_size, cfg.master_seed)
    return cfg, users, run_point(cfg, users)


def cmd_perturb(args, out=None):
    out = out or sys.stdout
    cfg, users, res = _run(args)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(PERTURB_HEADER)
        for s, p in zip(users, res.perturbed):
            for j, (x, y) in enumerate(zip(s.samples.tolist(), p.samples.tolist())):
                w.writerow([s.user_index, j, repr(x), repr(y)])
    for s, p, m in zip(users, res.perturbed, res.user_mse):
        print(f"user {s.user_index}: windows={len(p.noise_used)} dropped={p.dropped} mse={m!r}", file=out)
    print(f"mean per-sample mse={res.mse_per_sample!r}", file=out)


def cmd_aggregate(args, out=None):
    out = out or sys.stdout
    cfg, users, res = _run(args)
    report = res.report
    _, truth = true_aggregates(users, cfg.window_size, length=len(res.perturbed[0].samples))
    means = report.per_window_total / (cfg.window_size * cfg.num_users)
    resid = report.per_window_total - truth
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(AGGREGATE_HEADER)
        for i, row in enumerate(zip(report.per_window_total.tolist(), means.tolist(),
                                    truth.tolist(), resid.tolist())):
            w.writerow([i] + [repr(v) for v in row])
    print(f"windows={report.num_windows} dropped={report.dropped_samples} "
          f"max|residual|={float(np.max(np.abs(resid))):.3e} "
          f"aggregate_error={res.aggregate_error!r}", file=out)


def cmd_sweep(args, out=None):
    out = out or sys.stdout
    spec = SweepSpec(
        param=args.sweep,
        values=[v for v in args.values.split(",") if v.strip()],
        source=_source(args),
        num_users=args.users,
        tossing_space=args.tossing,
        window_size=args.window,
        amplitude=args.amplitude,
        period=args.period,
        mode=args.mode,
        seed=args.seed,
        reps=args.reps,
        randomize_assignment=args.randomize_assignment,
    )
    rows = run_sweep(spec, timing=args.timing)
    write_rows(rows, args.out)
    summary = summarize(rows)
    if args.summary:
        write_summary(summary, args.summary)
    for _, v, m, ms, a, as_ in summary:
        print(f"{args.sweep}={v}: mse={m:.6g}±{ms:.3g} aggerr={a:.6g}±{as_:.3g}", file=out)


def cmd_privacy(args, out=None):
    out = out or sys.stdout
    rep = privacy_report(args.tossing, args.window, args.users, args.amplitude, args.c)
    if rep.no_tossing_entropy:
        print("warning: k=1, no tossing entropy", file=sys.stderr)
    print(f"epsilon_proxy={rep.epsilon_proxy!r}", file=out)
    print(f"log10_pbreak={rep.break_probability_log10!r}", file=out)
    pb = "underflow" if rep.break_probability is None else repr(rep.break_probability)
    print(f"pbreak={pb}", file=out)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(PRIVACY_HEADER)
            w.writerow([rep.k, rep.l, rep.u, repr(rep.A), repr(rep.c), repr(rep.epsilon_proxy),
                        repr(rep.break_probability_log10), pb])


COMMANDS = {
    "perturb": cmd_perturb,
    "aggregate": cmd_aggregate,
    "sweep": cmd_sweep,
    "privacy": cmd_privacy,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except (CldpError, OSError) as exc:
        msg = str(exc).replace("\n", " ")
        print(f"cldp: error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
