"""Command-line entry points: run experiments, inspect schedules, selftest.

    delayed-oco run --config exp.ini [--T 1000 --trials 5 --out results/]
    delayed-oco schedule-stats --delay uniform:0-5 --T 10000 --trials 20
    delayed-oco selftest

Delay specs on the command line use a compact grammar:
    fixed:D | uniform:LO-HI | heavy:P:uniform:LO-HI
    geomalt:P:PERIOD:uniform:LO-HI | trace:PATH
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .checks import run_selftest
from .delays import (
    FixedDelay,
    GeometricAlternatingDelay,
    HeavyTailDelay,
    TraceDelay,
    UniformDelay,
    load_schedule,
    realized_schedule,
    stats,
)
from .environments import OLR, RIDGE, SQUARED, Environment, SyntheticSpec
from .errors import ConfigurationError
from .harness import (
    AlgoSpec,
    ExperimentConfig,
    load_config,
    run_experiment,
    stable_seed,
)

ENV_ALIASES = {
    "ridge": RIDGE,
    "squared": SQUARED,
    "olr": OLR,
    RIDGE: RIDGE,
    SQUARED: SQUARED,
    OLR: OLR,
}


def parse_delay_arg(text: str):
    parts = text.split(":")
    kind = parts[0]
    try:
        if kind == "fixed":
            return FixedDelay(d=int(parts[1]))
        if kind == "uniform":
            lo, hi = parts[1].split("-")
            return UniformDelay(lo=int(lo), hi=int(hi))
        if kind == "heavy":
            base = parse_delay_arg(":".join(parts[2:]))
            return HeavyTailDelay(base=base, p=float(parts[1]))
        if kind == "geomalt":
            base = parse_delay_arg(":".join(parts[3:]))
            return GeometricAlternatingDelay(
                p=float(parts[1]), period=int(parts[2]), fallback=base
            )
        if kind == "trace":
            return TraceDelay(delays=load_schedule(parts[1]).delays)
    except (IndexError, ValueError) as exc:
        raise ConfigurationError(f"bad delay spec {text!r}: {exc}") from None
    raise ConfigurationError(f"unknown delay kind {kind!r} in {text!r}")


def _cmd_run(args) -> int:
    if args.config:
        config = load_config(args.config)
    else:
        if not (args.env and args.delay and args.algos):
            print("run: need --config or all of --env/--delay/--algos", file=sys.stderr)
            return 2
        config = ExperimentConfig(
            name="cli-run",
            env=Environment(family=ENV_ALIASES["ridge"], source=SyntheticSpec()),
            delay=UniformDelay(0, 5),
            algorithms=(AlgoSpec("delayed-ftrl", "delayed-ftrl"),),
            horizon=1000,
            trials=1,
        )
    overrides = {}
    if args.env:
        if args.env not in ENV_ALIASES:
            print(f"run: unknown env {args.env!r}", file=sys.stderr)
            return 2
        overrides["env"] = Environment(
            family=ENV_ALIASES[args.env], source=SyntheticSpec()
        )
    if args.delay:
        overrides["delay"] = parse_delay_arg(args.delay)
    if args.algos:
        overrides["algorithms"] = tuple(
            AlgoSpec(label=a.strip(), kind=a.strip()) for a in args.algos.split(",")
        )
    if args.T:
        overrides["horizon"] = args.T
    if args.trials:
        overrides["trials"] = args.trials
    if args.master_seed is not None:
        overrides["master_seed"] = args.master_seed
    if args.out:
        overrides["outdir"] = args.out
    if args.workers:
        overrides["workers"] = args.workers
    config = dataclasses.replace(config, **overrides)
    result = run_experiment(config)
    for algo in config.algorithms:
        finals = result.final_regrets(algo.label)
        print(
            f"{algo.label}: mean final regret {finals.mean():.6g} "
            f"(std {finals.std():.3g}, {config.trials} trials)"
        )
    if config.outdir:
        print(f"wrote traces, aggregate, schedules, metadata to {config.outdir}")
    return 0


def _cmd_schedule_stats(args) -> int:
    regime = parse_delay_arg(args.delay)
    sigma, dmax, dtot = [], [], []
    for trial in range(args.trials):
        seed = stable_seed(args.master_seed, "trial", trial)
        schedule = realized_schedule(
            dataclasses.replace(regime, seed=stable_seed(seed, "delay")), args.T
        )
        st = stats(schedule)
        sigma.append(st.sigma_max)
        dmax.append(st.d_max)
        dtot.append(st.d_tot)
        print(
            f"trial {trial}: sigma_max={st.sigma_max} d_max={st.d_max} d_tot={st.d_tot}"
        )
    k = args.trials
    print(
        f"mean over {k} trials: sigma_max={sum(sigma)/k:.2f} "
        f"d_max={sum(dmax)/k:.2f} d_tot={sum(dtot)/k:.2f}"
    )
    return 0


def _cmd_selftest(args) -> int:
    results = run_selftest()
    for result in results:
        print(result)
    return 0 if all(r.ok for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delayed-oco",
        description="Regret benchmarks for online convex optimization with delayed feedback",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run an experiment grid")
    run_p.add_argument("--config", help="INI config with [env], [delay], [algo.*], [run]")
    run_p.add_argument("--env", help="ridge | squared | olr (synthetic data)")
    run_p.add_argument("--delay", help="delay regime spec, e.g. uniform:0-5")
    run_p.add_argument("--algos", help="comma-separated algorithm kinds")
    run_p.add_argument("--T", type=int, help="horizon override")
    run_p.add_argument("--trials", type=int, help="trial count override")
    run_p.add_argument("--master-seed", type=int, dest="master_seed")
    run_p.add_argument("--out", help="output directory")
    run_p.add_argument("--workers", type=int, help="parallel worker processes")
    run_p.set_defaults(func=_cmd_run)

    st_p = sub.add_parser("schedule-stats", help="summarize delay schedules")
    st_p.add_argument("--delay", required=True)
    st_p.add_argument("--T", type=int, required=True)
    st_p.add_argument("--trials", type=int, default=1)
    st_p.add_argument("--master-seed", type=int, dest="master_seed", default=1)
    st_p.set_defaults(func=_cmd_schedule_stats)

    self_p = sub.add_parser("selftest", help="run the randomized property suites")
    self_p.set_defaults(func=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
