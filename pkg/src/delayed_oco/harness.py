"""Experiment runner: wires environment x delay regime x algorithm x seeds,
computes exact cumulative regret against the offline comparator, and emits
CSV results plus run metadata.

Seeds are derived as sha256(master_seed, trial) for the environment and the
delay schedule, so every algorithm in a trial sees the same data and the same
delays (paired comparisons), and adding an algorithm never perturbs the
streams of existing ones.
"""

from __future__ import annotations

import configparser
import dataclasses
import hashlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .baselines import (
    BoldGradient,
    BoldVaw,
    ClassicOgdSc,
    ClassicOns,
    ClassicVaw,
    Dogd,
    DogdSc,
    dogd_step_size,
)
from .delays import (
    GENERATOR_ID,
    DelayRegime,
    DelayStats,
    FixedDelay,
    GeometricAlternatingDelay,
    HeavyTailDelay,
    TraceDelay,
    UniformDelay,
    realized_schedule,
    save_schedule,
    stats,
)
from .environments import (
    OLR,
    RIDGE,
    SQUARED,
    DatasetSpec,
    Environment,
    NonStationarySpec,
    RealizedEnvironment,
    SyntheticSpec,
)
from .errors import ArgumentError, ConfigurationError, NumericError
from .geometry import BallDomain, project_ball
from .learners import DelayedFtrl, DelayedOmd, DelayedOns, DelayedVaw, GradientPacket, LabelPacket

TRACE_HEADER = "run_id,algo,env,delay_regime,seed,t,inst_loss,cum_regret"
AGGREGATE_HEADER = "algo,t,mean_cum_regret,std_cum_regret,n_trials"


def stable_seed(*parts) -> int:
    """Deterministic 63-bit seed from a tuple of ints/strings (not salted)."""
    text = "|".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def trial_seeds(master_seed: int, trial: int) -> tuple[int, int, int]:
    """(trial_seed, env_seed, delay_seed); algorithm names feed nothing here."""
    trial_seed = stable_seed(master_seed, "trial", trial)
    return (
        trial_seed,
        stable_seed(trial_seed, "env"),
        stable_seed(trial_seed, "delay"),
    )


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgoSpec:
    """A configured algorithm cell: label used in outputs, registered kind,
    and keyword overrides for the factory."""

    label: str
    kind: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    env: Environment
    delay: DelayRegime
    algorithms: tuple[AlgoSpec, ...]
    horizon: int
    trials: int
    master_seed: int = 1
    outdir: str | None = None
    workers: int = 1

    def __post_init__(self):
        if self.horizon < 1:
            raise ConfigurationError(f"T must be >= 1, got {self.horizon}")
        if self.trials < 1:
            raise ConfigurationError(f"trials must be >= 1, got {self.trials}")
        if not self.algorithms:
            raise ConfigurationError("at least one algorithm is required")
        labels = [a.label for a in self.algorithms]
        if len(set(labels)) != len(labels):
            raise ConfigurationError(f"duplicate algorithm labels in {labels}")
        for a in self.algorithms:
            if a.kind not in ALGORITHMS:
                raise ConfigurationError(
                    f"unknown algorithm kind {a.kind!r}; registered: "
                    f"{sorted(ALGORITHMS)}"
                )


# ---------------------------------------------------------------------------
# Algorithm registry
# ---------------------------------------------------------------------------


def _need(value, what: str, kind: str):
    if value is None:
        raise ConfigurationError(f"{kind} requires {what} for this environment")
    return value


def _ball_for_baseline(realized: RealizedEnvironment) -> BallDomain:
    if realized.domain is not None:
        return realized.domain
    return BallDomain(realized.dim, realized.env.baseline_radius)


def _make_delayed_ftrl(realized, sched_stats, params):
    lam = params.get("lam", realized.constants.lam)
    lam = _need(lam, "a strong convexity modulus", "delayed-ftrl")
    dom = _need(realized.domain, "a ball domain", "delayed-ftrl")
    return DelayedFtrl(realized.dim, dom, lam)


def _make_delayed_omd(realized, sched_stats, params):
    lam = params.get("lam", realized.constants.lam)
    lam = _need(lam, "a strong convexity modulus", "delayed-omd")
    dom = _need(realized.domain, "a ball domain", "delayed-omd")
    return DelayedOmd(realized.dim, dom, lam)


def _make_delayed_ons(realized, sched_stats, params):
    c = realized.constants
    dom = _need(realized.domain, "a ball domain", "delayed-ons")
    alpha = params.get("alpha", c.alpha)
    alpha = _need(alpha, "an exp-concavity modulus", "delayed-ons")
    return DelayedOns(
        realized.dim,
        dom,
        gradient_bound=params.get("G", c.G),
        exp_concavity=alpha,
        horizon=realized.horizon,
        tuning=params.get("tuning", "adaptive"),
    )


def _make_delayed_vaw(realized, sched_stats, params):
    if realized.domain is not None:
        raise ConfigurationError(
            "delayed-vaw runs unconstrained; this cell has a ball domain"
        )
    feature_bound = params.get("feature_bound", realized.constants.Z)
    if feature_bound == "online":
        feature_bound = None
    return DelayedVaw(
        realized.dim,
        gamma=params.get("gamma", 1.0),
        horizon=realized.horizon,
        feature_bound=feature_bound,
        tuning=params.get("tuning", "adaptive"),
    )


def _make_dogd(realized, sched_stats, params):
    c = realized.constants
    dom = _ball_for_baseline(realized)
    step = params.get("step")
    if step is None:
        step = dogd_step_size(dom.diameter, c.G, realized.horizon, sched_stats.d_tot)
    return Dogd(realized.dim, dom, step)


def _make_dogd_sc(realized, sched_stats, params):
    lam = params.get("lam", realized.constants.lam)
    lam = _need(lam, "a strong convexity modulus", "dogd-sc")
    dom = _need(realized.domain, "a ball domain", "dogd-sc")
    return DogdSc(realized.dim, dom, lam)


def _make_bold_ogd(realized, sched_stats, params):
    lam = params.get("lam", realized.constants.lam)
    lam = _need(lam, "a strong convexity modulus", "bold-ogd")
    dom = _need(realized.domain, "a ball domain", "bold-ogd")
    dim = realized.dim
    return BoldGradient(lambda: ClassicOgdSc(dim, dom, lam))


def _make_bold_ons(realized, sched_stats, params):
    c = realized.constants
    dom = _need(realized.domain, "a ball domain", "bold-ons")
    alpha = params.get("alpha", c.alpha)
    alpha = _need(alpha, "an exp-concavity modulus", "bold-ons")
    dim = realized.dim
    G = params.get("G", c.G)
    eps = params.get("epsilon", 1.0)
    return BoldGradient(lambda: ClassicOns(dim, dom, G, alpha, epsilon=eps))


def _make_bold_vaw(realized, sched_stats, params):
    if realized.domain is not None:
        raise ConfigurationError(
            "bold-vaw runs unconstrained; this cell has a ball domain"
        )
    dim = realized.dim
    gamma = params.get("gamma", 1.0)
    return BoldVaw(lambda: ClassicVaw(dim, gamma))


# kind -> (factory, protocol); protocol "gradient" or "label"
ALGORITHMS = {
    "delayed-ftrl": (_make_delayed_ftrl, "gradient"),
    "delayed-omd": (_make_delayed_omd, "gradient"),
    "sdmd-rsc": (_make_delayed_omd, "gradient"),
    "delayed-ons": (_make_delayed_ons, "gradient"),
    "delayed-vaw": (_make_delayed_vaw, "label"),
    "dogd": (_make_dogd, "gradient"),
    "dogd-sc": (_make_dogd_sc, "gradient"),
    "bold-ogd": (_make_bold_ogd, "gradient"),
    "bold-ons": (_make_bold_ons, "gradient"),
    "bold-vaw": (_make_bold_vaw, "label"),
}


# ---------------------------------------------------------------------------
# Offline comparator
# ---------------------------------------------------------------------------


def offline_comparator(realized: RealizedEnvironment) -> np.ndarray:
    """Best fixed point in hindsight for the realized loss sequence.

    Quadratic families admit a normal-equations solution (minimum-norm
    tie-break when the system is singular); when it falls outside the ball,
    projected gradient descent refines it (step 1/L, at most 10^4 iterations
    or gradient-mapping norm <= 1e-9). The returned point is verified to a
    first-order residual of 1e-7 relative to the gradient at the origin.
    """
    Z = realized.z
    y = realized.y
    T = realized.horizon
    n = realized.dim
    H = Z.T @ Z
    if realized.family == RIDGE:
        H = H + T * np.eye(n)
    rhs = Z.T @ y
    if not np.all(np.isfinite(H)) or not np.all(np.isfinite(rhs)):
        raise NumericError("non-finite entries in the comparator normal equations")
    cond = np.linalg.cond(H)
    if np.isfinite(cond) and cond <= 1e12:
        u = np.linalg.solve(H, rhs)
    else:
        # singular system with zero regularization: minimum-norm tie-break
        u = np.linalg.lstsq(H, rhs, rcond=None)[0]

    grad_origin = float(np.linalg.norm(realized.total_grad(np.zeros(n))))
    tol = 1e-7 * (1.0 + grad_origin)
    dom = realized.domain
    if dom is None:
        residual = float(np.linalg.norm(realized.total_grad(u)))
        if residual > tol:
            raise NumericError(
                f"comparator residual {residual:g} too large with singular "
                "normal equations; add a ridge epsilon to regularize"
            )
        return u
    if dom.contains(u):
        return project_ball(u, dom)

    # constrained refinement
    L = realized.hessian_upper_bound()
    step = 1.0 / L
    x = project_ball(u, dom)
    for _ in range(10_000):
        x_next = project_ball(x - step * realized.total_grad(x), dom)
        mapping = float(np.linalg.norm(x - x_next)) / step
        x = x_next
        if mapping <= 1e-9:
            break
    x_check = project_ball(x - step * realized.total_grad(x), dom)
    residual = float(np.linalg.norm(x - x_check)) / step
    if residual > tol:
        raise NumericError(
            f"comparator refinement stalled at first-order residual {residual:g}; "
            "add a ridge epsilon to regularize"
        )
    return x


def compensated_cumsum(values: np.ndarray) -> np.ndarray:
    """Kahan running sum; keeps 1e4-term regret sums telescoping exactly."""
    total = 0.0
    comp = 0.0
    out = np.empty(len(values))
    for i, v in enumerate(values):
        yv = float(v) - comp
        t = total + yv
        comp = (t - total) - yv
        total = t
        out[i] = total
    return out


# ---------------------------------------------------------------------------
# Traces
# ---------------------------------------------------------------------------


@dataclass
class RegretTrace:
    run_id: str
    algo: str
    env_name: str
    regime_name: str
    trial: int
    seed: int
    inst_loss: np.ndarray
    comparator_loss: np.ndarray
    cum_regret: np.ndarray
    u_star: np.ndarray
    sched_stats: DelayStats
    wall_time: float
    extras: dict = field(default_factory=dict)

    @property
    def final_regret(self) -> float:
        return float(self.cum_regret[-1])


def env_label(env: Environment) -> str:
    src = env.source
    if isinstance(src, SyntheticSpec):
        tag = "synthetic"
    elif isinstance(src, NonStationarySpec):
        tag = "nonstationary"
    elif isinstance(src, DatasetSpec):
        tag = Path(src.path).stem
    else:
        tag = type(src).__name__
    short = {RIDGE: "ridge", SQUARED: "squared", OLR: "olr"}[env.family]
    return f"{short}-{tag}"


def regime_label(regime: DelayRegime) -> str:
    if isinstance(regime, FixedDelay):
        return f"fixed{regime.d}"
    if isinstance(regime, UniformDelay):
        return f"uniform{regime.lo}-{regime.hi}"
    if isinstance(regime, HeavyTailDelay):
        return f"heavy{regime.p:g}-{regime_label(regime.base)}"
    if isinstance(regime, GeometricAlternatingDelay):
        return f"geomalt{regime.p:g}-{regime.period}-{regime_label(regime.fallback)}"
    if isinstance(regime, TraceDelay):
        return "trace"
    return type(regime).__name__


def run_cell(
    config: ExperimentConfig,
    algo: AlgoSpec,
    trial: int,
    realized: RealizedEnvironment | None = None,
    u_star: np.ndarray | None = None,
) -> RegretTrace:
    """One (algorithm, trial) cell: play T rounds under the trial's schedule,
    deliver feedback exactly at arrival rounds, score against the comparator.

    ``realized`` and ``u_star`` may be supplied by a caller that caches them
    per trial; they must match the trial's derived seeds.
    """
    trial_seed, env_seed, delay_seed = trial_seeds(config.master_seed, trial)
    schedule = realized_schedule(
        dataclasses.replace(config.delay, seed=delay_seed), config.horizon
    )
    sched_stats = stats(schedule)
    if realized is None:
        realized = config.env.realize(config.horizon, env_seed)

    factory, protocol = ALGORITHMS[algo.kind]
    learner = factory(realized, sched_stats, dict(algo.params))

    T = config.horizon
    arrivals_bucket: list[list[int]] = [[] for _ in range(T + 1)]
    for tau in range(1, T + 1):
        arrivals_bucket[tau + schedule.delays[tau - 1]].append(tau)

    t_start = time.perf_counter()
    inst_loss = np.empty(T)
    pending: dict[int, GradientPacket | LabelPacket] = {}
    for t in range(1, T + 1):
        z_t, y_t = realized.round_data(t)
        if protocol == "label":
            x_t = learner.predict(t, z_t)
            pending[t] = LabelPacket(
                origin=t, feature=z_t, label=y_t, arrival=t + schedule.delays[t - 1]
            )
        else:
            x_t = learner.start_round(t)
            pending[t] = GradientPacket(
                origin=t,
                gradient=realized.loss_grad(t, x_t),
                point=np.array(x_t, copy=True),
                arrival=t + schedule.delays[t - 1],
            )
        inst_loss[t - 1] = realized.loss_value(t, x_t)
        packets = [pending.pop(tau) for tau in arrivals_bucket[t]]
        learner.finish_round(t, packets)
    wall = time.perf_counter() - t_start

    if u_star is None:
        u_star = offline_comparator(realized)
    comparator_loss = np.array(
        [realized.loss_value(t, u_star) for t in range(1, T + 1)]
    )
    cum_regret = compensated_cumsum(inst_loss - comparator_loss)

    extras = {}
    if hasattr(learner, "etas"):
        extras["etas"] = list(learner.etas)
    if hasattr(learner, "rho_history"):
        extras["rho_history"] = list(learner.rho_history)
        extras["clip_events"] = list(learner.clip_events)

    return RegretTrace(
        run_id=f"{algo.label}-t{trial:02d}",
        algo=algo.label,
        env_name=env_label(config.env),
        regime_name=regime_label(config.delay),
        trial=trial,
        seed=trial_seed,
        inst_loss=inst_loss,
        comparator_loss=comparator_loss,
        cum_regret=cum_regret,
        u_star=np.asarray(u_star),
        sched_stats=sched_stats,
        wall_time=wall,
        extras=extras,
    )


def _cell_job(args):
    config, algo, trial = args
    return run_cell(config, algo, trial)


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    traces: dict  # (algo label, trial) -> RegretTrace

    def traces_for(self, algo_label: str) -> list[RegretTrace]:
        return [
            self.traces[(algo_label, i)] for i in range(self.config.trials)
        ]

    def final_regrets(self, algo_label: str) -> np.ndarray:
        return np.array([t.final_regret for t in self.traces_for(algo_label)])


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Run every (algorithm, trial) cell, optionally in parallel, and write
    trace/aggregate CSVs plus metadata when an output directory is set."""
    cells = [
        (algo, trial)
        for algo in config.algorithms
        for trial in range(config.trials)
    ]
    traces: dict = {}
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            jobs = [(config, algo, trial) for algo, trial in cells]
            for (algo, trial), trace in zip(cells, pool.map(_cell_job, jobs)):
                traces[(algo.label, trial)] = trace
    else:
        env_cache: dict[int, RealizedEnvironment] = {}
        ustar_cache: dict[int, np.ndarray] = {}
        for algo, trial in cells:
            _, env_seed, _ = trial_seeds(config.master_seed, trial)
            if trial not in env_cache:
                env_cache[trial] = config.env.realize(config.horizon, env_seed)
                ustar_cache[trial] = offline_comparator(env_cache[trial])
            traces[(algo.label, trial)] = run_cell(
                config, algo, trial, env_cache[trial], ustar_cache[trial]
            )

    result = ExperimentResult(config=config, traces=traces)
    if config.outdir is not None:
        write_outputs(result)
    return result


# ---------------------------------------------------------------------------
# Output files
# ---------------------------------------------------------------------------


def _fmt(v: float) -> str:
    return format(float(v), ".12g")


def emit_csv(traces: Sequence[RegretTrace], path: str | Path) -> None:
    """Write the per-round trace schema; floats carry 12 significant digits."""
    if not traces:
        raise ArgumentError("emit_csv requires at least one trace")
    path = Path(path)
    lines = [TRACE_HEADER]
    for trace in traces:
        for t in range(1, len(trace.inst_loss) + 1):
            lines.append(
                f"{trace.run_id},{trace.algo},{trace.env_name},"
                f"{trace.regime_name},{trace.seed},{t},"
                f"{_fmt(trace.inst_loss[t - 1])},{_fmt(trace.cum_regret[t - 1])}"
            )
    path.write_text("\n".join(lines) + "\n")


def aggregate_rows(result: ExperimentResult) -> list[tuple[str, int, float, float, int]]:
    rows = []
    for algo in result.config.algorithms:
        group = result.traces_for(algo.label)
        curves = np.stack([tr.cum_regret for tr in group])
        mean = curves.mean(axis=0)
        std = curves.std(axis=0)  # population std, matching the figure bands
        for t in range(1, curves.shape[1] + 1):
            rows.append((algo.label, t, float(mean[t - 1]), float(std[t - 1]), len(group)))
    return rows


def emit_aggregate_csv(result: ExperimentResult, path: str | Path) -> None:
    path = Path(path)
    lines = [AGGREGATE_HEADER]
    for algo, t, mean, std, n in aggregate_rows(result):
        lines.append(f"{algo},{t},{_fmt(mean)},{_fmt(std)},{n}")
    path.write_text("\n".join(lines) + "\n")


def write_outputs(result: ExperimentResult) -> Path:
    config = result.config
    outdir = Path(config.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    ordered = [
        result.traces[(algo.label, trial)]
        for algo in config.algorithms
        for trial in range(config.trials)
    ]
    emit_csv(ordered, outdir / "traces.csv")
    emit_aggregate_csv(result, outdir / "aggregate.csv")
    for trial in range(config.trials):
        _, _, delay_seed = trial_seeds(config.master_seed, trial)
        schedule = realized_schedule(
            dataclasses.replace(config.delay, seed=delay_seed), config.horizon
        )
        save_schedule(schedule, outdir / f"schedule_trial{trial:02d}.txt")
    (outdir / "metadata.txt").write_text(describe_experiment(result))
    return outdir


def describe_experiment(result: ExperimentResult) -> str:
    config = result.config
    lines = [
        f"name = {config.name}",
        f"code_version = delayed-oco {__version__}",
        f"generator = {GENERATOR_ID}",
        f"env = {env_label(config.env)}",
        f"family = {config.env.family}",
        f"delay_regime = {regime_label(config.delay)}",
        f"T = {config.horizon}",
        f"trials = {config.trials}",
        f"master_seed = {config.master_seed}",
        f"algorithms = {', '.join(a.label for a in config.algorithms)}",
    ]
    if isinstance(config.env.source, DatasetSpec):
        lines.append(
            f"dataset = {config.env.source.path} (rows cycled to fill T)"
        )
    for trial in range(config.trials):
        tr = result.traces[(config.algorithms[0].label, trial)]
        s = tr.sched_stats
        lines.append(
            f"trial {trial}: seed={tr.seed} sigma_max={s.sigma_max} "
            f"d_max={s.d_max} d_tot={s.d_tot}"
        )
    total_wall = sum(tr.wall_time for tr in result.traces.values())
    lines.append(f"total_learner_wall_time_s = {total_wall:.3f}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Config files: flat key = value sections [env], [delay], [algo.<name>], [run]
# ---------------------------------------------------------------------------


def parse_delay_section(items: dict) -> DelayRegime:
    kind = items.get("kind")
    if kind is None:
        raise ConfigurationError("[delay] section needs a 'kind' key")
    if kind == "fixed":
        return FixedDelay(d=int(items.get("d", 0)))
    if kind == "uniform":
        return UniformDelay(lo=int(items.get("lo", 0)), hi=int(items.get("hi", 0)))
    if kind == "trace":
        from .delays import load_schedule

        sched = load_schedule(items["trace_path"])
        return TraceDelay(delays=sched.delays)
    if kind in ("heavy_tail", "geometric_alternating"):
        base_kind = items.get("base_kind", "uniform")
        if base_kind == "uniform":
            base = UniformDelay(
                lo=int(items.get("base_lo", 0)), hi=int(items.get("base_hi", 5))
            )
        elif base_kind == "fixed":
            base = FixedDelay(d=int(items.get("base_d", 0)))
        else:
            raise ConfigurationError(f"unsupported base_kind {base_kind!r}")
        if kind == "heavy_tail":
            return HeavyTailDelay(base=base, p=float(items.get("p", 0.1)))
        return GeometricAlternatingDelay(
            p=float(items.get("p", 0.1)),
            period=int(items.get("period", 30)),
            fallback=base,
        )
    raise ConfigurationError(f"unknown delay kind {kind!r}")


def parse_env_section(items: dict) -> Environment:
    family = items.get("family")
    if family is None:
        raise ConfigurationError("[env] section needs a 'family' key")
    source_kind = items.get("source", "synthetic")
    dim = int(items.get("dim", 5))
    if source_kind == "synthetic":
        source = SyntheticSpec(dim=dim, noise_scale=float(items.get("noise_scale", 1.0)))
    elif source_kind == "nonstationary":
        source = NonStationarySpec(
            dim=dim,
            period=int(items.get("period", 30)),
            noise_path=items.get("noise_path"),
        )
    elif source_kind == "dataset":
        source = DatasetSpec(path=items["dataset_path"], dim=dim)
    else:
        raise ConfigurationError(f"unknown env source {source_kind!r}")
    return Environment(
        family=family,
        source=source,
        radius=float(items.get("radius", 2.0)),
        baseline_radius=float(items.get("baseline_radius", 2.0)),
    )


_ALGO_FLOAT_PARAMS = {"lam", "alpha", "G", "gamma", "step", "epsilon"}


def parse_algo_section(label: str, items: dict) -> AlgoSpec:
    items = dict(items)
    kind = items.pop("kind", label)
    params = {}
    for key, value in items.items():
        if key in _ALGO_FLOAT_PARAMS:
            params[key] = float(value)
        elif key == "feature_bound":
            params[key] = value if value == "online" else float(value)
        else:
            params[key] = value
    return AlgoSpec(label=label, kind=kind, params=params)


def load_config(path: str | Path) -> ExperimentConfig:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigurationError(f"cannot read config file {path}")
    if "env" not in parser or "delay" not in parser or "run" not in parser:
        raise ConfigurationError("config needs [env], [delay], and [run] sections")
    env = parse_env_section(dict(parser["env"]))
    delay = parse_delay_section(dict(parser["delay"]))
    algos = []
    for section in parser.sections():
        if section.startswith("algo."):
            label = section[len("algo."):]
            algos.append(parse_algo_section(label, dict(parser[section])))
    run = dict(parser["run"])
    return ExperimentConfig(
        name=run.get("name", Path(path).stem),
        env=env,
        delay=delay,
        algorithms=tuple(algos),
        horizon=int(run.get("t", run.get("horizon", 1000))),
        trials=int(run.get("trials", 1)),
        master_seed=int(run.get("master_seed", 1)),
        outdir=run.get("out"),
        workers=int(run.get("workers", 1)),
    )
