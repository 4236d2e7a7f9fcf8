import dataclasses
from pathlib import Path

import numpy as np
import pytest

from delayed_oco import (
    AlgoSpec,
    DatasetSpec,
    Environment,
    ExperimentConfig,
    SyntheticSpec,
    TraceDelay,
    UniformDelay,
    arrivals_at,
    emit_csv,
    load_config,
    offline_comparator,
    realized_schedule,
    run_cell,
    run_experiment,
)
from delayed_oco.cli import main as cli_main, parse_delay_arg
from delayed_oco.environments import OLR, RIDGE, SQUARED
from delayed_oco.errors import ArgumentError, ConfigurationError, NumericError
from delayed_oco.harness import (
    AGGREGATE_HEADER,
    TRACE_HEADER,
    compensated_cumsum,
    trial_seeds,
)


def small_config(**overrides):
    base = dict(
        name="unit",
        env=Environment(family=RIDGE, source=SyntheticSpec()),
        delay=UniformDelay(0, 5),
        algorithms=(AlgoSpec("delayed-ftrl", "delayed-ftrl"),),
        horizon=50,
        trials=2,
        master_seed=3,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


class TestComparator:
    def test_single_unconstrained_loss_interpolates(self):
        env = Environment(family=OLR, source=SyntheticSpec(dim=2))
        realized = env.realize(1, seed=0)
        realized.z[0] = np.array([1.0, 0.0])
        realized.y[0] = 1.0
        u = offline_comparator(realized)
        assert u[0] == pytest.approx(1.0, abs=1e-9)

    def test_ridge_zero_labels_gives_origin(self):
        env = Environment(family=RIDGE, source=SyntheticSpec(dim=2))
        realized = env.realize(4, seed=0)
        realized.z[:] = np.array([1.0, 0.0])
        realized.y[:] = 0.0
        assert np.allclose(offline_comparator(realized), 0.0, atol=1e-12)

    def test_beats_random_search(self):
        realized = Environment(family=SQUARED, source=SyntheticSpec()).realize(
            50, seed=1
        )
        u = offline_comparator(realized)
        rng = np.random.default_rng(2)
        pts = rng.standard_normal((100_000, 5))
        radii = rng.uniform(0, 1, size=100_000) ** (1 / 5)
        pts = pts / np.linalg.norm(pts, axis=1, keepdims=True) * (2.0 * radii[:, None])
        losses = 0.5 * np.sum((pts @ realized.z.T - realized.y) ** 2, axis=1)
        assert realized.total_loss(u) <= losses.min() + 1e-9

    def test_boundary_solution_is_stationary(self):
        # squared family pushes the minimizer outside the radius-2 ball
        realized = Environment(family=SQUARED, source=SyntheticSpec()).realize(
            2000, seed=3
        )
        u = offline_comparator(realized)
        assert np.linalg.norm(u) == pytest.approx(2.0, abs=1e-6)
        rng = np.random.default_rng(4)
        base = realized.total_loss(u)
        for _ in range(10):
            direction = rng.standard_normal(5)
            direction /= np.linalg.norm(direction)
            probe = u + 1e-3 * direction
            if np.linalg.norm(probe) > 2.0:
                probe = probe * 2.0 / np.linalg.norm(probe)
            assert realized.total_loss(probe) >= base - 1e-6

    def test_singular_system_takes_minimum_norm(self):
        env = Environment(family=OLR, source=SyntheticSpec(dim=3))
        realized = env.realize(4, seed=5)
        realized.z[:] = np.array([1.0, 0.0, 0.0])  # rank one
        realized.y[:] = 1.0
        u = offline_comparator(realized)
        assert np.allclose(u, [1.0, 0.0, 0.0], atol=1e-9)

    def test_stalled_refinement_suggests_ridge(self):
        realized = Environment(family=SQUARED, source=SyntheticSpec()).realize(
            2000, seed=3
        )
        realized.hessian_upper_bound = lambda: 1e12  # step ~ 0: refinement stalls
        with pytest.raises(NumericError, match="ridge"):
            offline_comparator(realized)

    def test_non_finite_data_rejected(self):
        realized = Environment(family=OLR, source=SyntheticSpec()).realize(5, seed=6)
        realized.z[0, 0] = np.inf
        with pytest.raises(NumericError):
            offline_comparator(realized)


class TestCompensatedSum:
    def test_matches_fsum(self):
        rng = np.random.default_rng(6)
        values = rng.standard_normal(2000) * 10.0 ** rng.integers(-6, 6, size=2000)
        out = compensated_cumsum(values)
        import math

        assert out[-1] == pytest.approx(math.fsum(values), rel=1e-12)


class TestRunCell:
    def test_single_round_regret_nonnegative(self):
        for family, algo in ((RIDGE, "delayed-ftrl"), (OLR, "delayed-vaw")):
            config = small_config(
                env=Environment(family=family, source=SyntheticSpec()),
                algorithms=(AlgoSpec(algo, algo),),
                horizon=1,
                trials=1,
            )
            trace = run_cell(config, config.algorithms[0], 0)
            assert trace.final_regret >= -1e-9

    def test_telescoping(self):
        config = small_config(horizon=200)
        trace = run_cell(config, config.algorithms[0], 0)
        diffs = np.diff(trace.cum_regret)
        expected = (trace.inst_loss - trace.comparator_loss)[1:]
        assert np.max(np.abs(diffs - expected)) <= 1e-9

    def test_schedule_consistency(self):
        config = small_config(horizon=80)

        delivered = {}

        class Probe:
            dim = 5

            def start_round(self, t):
                return np.zeros(5)

            def finish_round(self, t, packets):
                delivered[t] = sorted(p.origin for p in packets)

        from delayed_oco import harness

        harness.ALGORITHMS["probe"] = (lambda r, s, p: Probe(), "gradient")
        try:
            probe_config = small_config(
                horizon=80, algorithms=(AlgoSpec("probe", "probe"),)
            )
            run_cell(probe_config, probe_config.algorithms[0], 0)
        finally:
            del harness.ALGORITHMS["probe"]
        _, _, delay_seed = trial_seeds(probe_config.master_seed, 0)
        schedule = realized_schedule(
            dataclasses.replace(probe_config.delay, seed=delay_seed), 80
        )
        for t in range(1, 81):
            assert delivered[t] == sorted(arrivals_at(schedule, t))

    def test_learner_domain_mismatch(self):
        config = small_config(
            env=Environment(family=RIDGE, source=SyntheticSpec()),
            algorithms=(AlgoSpec("delayed-vaw", "delayed-vaw"),),
        )
        with pytest.raises(ConfigurationError):
            run_cell(config, config.algorithms[0], 0)
        config = small_config(
            env=Environment(family=OLR, source=SyntheticSpec()),
            algorithms=(AlgoSpec("delayed-ftrl", "delayed-ftrl"),),
        )
        with pytest.raises(ConfigurationError):
            run_cell(config, config.algorithms[0], 0)


GOLDEN_ROWS = [
    ("1 1:1", (1.0, 0.0), 1.0),
    ("-0.5 2:1", (0.0, 1.0), -0.5),
    ("2 1:0.5 2:0.5", (0.5, 0.5), 2.0),
    ("0 1:-1 2:0.5", (-1.0, 0.5), 0.0),
    ("1 1:0.25 2:-0.75", (0.25, -0.75), 1.0),
]
# Transcript frozen from an independent simulation that solves every round's
# minimization with SLSQP and the comparator with a constrained solver.
GOLDEN_INST = [0.5, 0.125, 1.9140625, 0.3515625, 0.4025344788]
GOLDEN_CUM = [0.2125049859, 0.1733994107, 0.3200691741, 0.5748770535, 0.5152593988]
GOLDEN_USTAR = [0.3067112008, -0.0163984271]


class TestGoldenTrace:
    def test_tiny_instance_matches_hand_simulation(self, tmp_path):
        data = tmp_path / "tiny.libsvm"
        data.write_text("\n".join(row for row, _, _ in GOLDEN_ROWS) + "\n")
        config = ExperimentConfig(
            name="golden",
            env=Environment(
                family=RIDGE, source=DatasetSpec(path=str(data), dim=2)
            ),
            delay=TraceDelay((1, 0, 2, 0, 0)),
            algorithms=(AlgoSpec("delayed-ftrl", "delayed-ftrl"),),
            horizon=5,
            trials=1,
        )
        trace = run_cell(config, config.algorithms[0], 0)
        assert np.allclose(trace.inst_loss, GOLDEN_INST, atol=1e-6)
        assert np.allclose(trace.cum_regret, GOLDEN_CUM, atol=1e-6)
        assert np.allclose(trace.u_star, GOLDEN_USTAR, atol=1e-6)


class TestOutputs:
    def test_emit_csv_shape_and_roundtrip(self, tmp_path):
        config = small_config(horizon=3, trials=1)
        trace = run_cell(config, config.algorithms[0], 0)
        path = tmp_path / "trace.csv"
        emit_csv([trace], path)
        lines = path.read_text().splitlines()
        assert lines[0] == TRACE_HEADER
        assert len(lines) == 4
        values = [float(line.split(",")[-1]) for line in lines[1:]]
        assert values == pytest.approx(trace.cum_regret.tolist(), rel=1e-11)

    def test_emit_csv_rejects_empty(self, tmp_path):
        with pytest.raises(ArgumentError):
            emit_csv([], tmp_path / "x.csv")

    def test_run_experiment_writes_everything(self, tmp_path):
        config = small_config(
            horizon=10, trials=2, outdir=str(tmp_path / "out")
        )
        result = run_experiment(config)
        out = Path(config.outdir)
        traces = (out / "traces.csv").read_text().splitlines()
        assert traces[0] == TRACE_HEADER
        assert len(traces) == 1 + 2 * 10  # 2 runs x 10 rounds
        agg = (out / "aggregate.csv").read_text().splitlines()
        assert agg[0] == AGGREGATE_HEADER
        assert len(agg) == 1 + 10
        assert (out / "metadata.txt").exists()
        assert (out / "schedule_trial00.txt").exists()
        assert (out / "schedule_trial01.txt").exists()
        assert result.final_regrets("delayed-ftrl").shape == (2,)

    def test_reruns_are_byte_identical(self, tmp_path):
        config_a = small_config(horizon=30, trials=2, outdir=str(tmp_path / "a"))
        config_b = small_config(horizon=30, trials=2, outdir=str(tmp_path / "b"))
        run_experiment(config_a)
        run_experiment(config_b)
        for name in ("traces.csv", "aggregate.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (
                tmp_path / "b" / name
            ).read_bytes()

    def test_workers_match_serial(self, tmp_path):
        serial = small_config(horizon=20, trials=2, outdir=str(tmp_path / "s"))
        parallel = small_config(
            horizon=20, trials=2, outdir=str(tmp_path / "p"), workers=2
        )
        run_experiment(serial)
        run_experiment(parallel)
        assert (tmp_path / "s" / "traces.csv").read_bytes() == (
            tmp_path / "p" / "traces.csv"
        ).read_bytes()

    def test_paired_trials_share_environment_and_schedule(self):
        config = small_config(
            horizon=15,
            algorithms=(
                AlgoSpec("delayed-ftrl", "delayed-ftrl"),
                AlgoSpec("dogd-sc", "dogd-sc"),
            ),
        )
        result = run_experiment(config)
        a = result.traces[("delayed-ftrl", 0)]
        b = result.traces[("dogd-sc", 0)]
        assert a.seed == b.seed
        assert a.sched_stats == b.sched_stats
        assert np.array_equal(a.comparator_loss, b.comparator_loss)


class TestConfigFile:
    CONFIG = """
[env]
family = exp_concave_squared
source = synthetic
dim = 5
radius = 2.0

[delay]
kind = heavy_tail
p = 0.1
base_kind = uniform
base_lo = 0
base_hi = 5

[algo.ons-adaptive]
kind = delayed-ons
tuning = adaptive

[algo.dogd]
kind = dogd

[run]
t = 123
trials = 4
master_seed = 9
workers = 1
name = squared-heavy
"""

    def test_round_trip(self, tmp_path):
        path = tmp_path / "exp.ini"
        path.write_text(self.CONFIG)
        config = load_config(path)
        assert config.name == "squared-heavy"
        assert config.horizon == 123
        assert config.trials == 4
        assert config.master_seed == 9
        assert config.env.family == SQUARED
        assert {a.label for a in config.algorithms} == {"ons-adaptive", "dogd"}
        ons = next(a for a in config.algorithms if a.label == "ons-adaptive")
        assert ons.kind == "delayed-ons"
        assert ons.params["tuning"] == "adaptive"
        result = run_experiment(config)
        assert result.final_regrets("dogd").shape == (4,)

    def test_missing_sections_rejected(self, tmp_path):
        path = tmp_path / "bad.ini"
        path.write_text("[env]\nfamily = olr_squared\n")
        with pytest.raises(ConfigurationError):
            load_config(path)

    def test_unknown_algorithm_rejected(self):
        with pytest.raises(ConfigurationError):
            small_config(algorithms=(AlgoSpec("x", "nope"),))


class TestCli:
    def test_delay_spec_grammar(self):
        assert parse_delay_arg("fixed:3").d == 3
        uni = parse_delay_arg("uniform:0-5")
        assert (uni.lo, uni.hi) == (0, 5)
        heavy = parse_delay_arg("heavy:0.1:uniform:0-5")
        assert heavy.p == 0.1 and heavy.base.hi == 5
        geo = parse_delay_arg("geomalt:0.2:30:uniform:0-5")
        assert geo.period == 30
        with pytest.raises(ConfigurationError):
            parse_delay_arg("weird:1")

    def test_schedule_stats_command(self, capsys):
        rc = cli_main(
            ["schedule-stats", "--delay", "uniform:0-5", "--T", "100", "--trials", "2"]
        )
        assert rc == 0
        out = capsys.readouterr().out
        assert "sigma_max=" in out and "mean over 2 trials" in out

    def test_run_command_with_config(self, tmp_path, capsys):
        path = tmp_path / "exp.ini"
        path.write_text(TestConfigFile.CONFIG.replace("t = 123", "t = 40"))
        rc = cli_main(["run", "--config", str(path), "--trials", "2",
                       "--out", str(tmp_path / "out")])
        assert rc == 0
        out = capsys.readouterr().out
        assert "mean final regret" in out
        assert (tmp_path / "out" / "aggregate.csv").exists()

    def test_run_command_without_config(self, capsys):
        rc = cli_main([
            "run", "--env", "ridge", "--delay", "uniform:0-5",
            "--algos", "delayed-ftrl,dogd-sc", "--T", "30", "--trials", "2",
        ])
        assert rc == 0
        out = capsys.readouterr().out
        assert out.count("mean final regret") == 2

    def test_run_command_requires_enough_flags(self, capsys):
        rc = cli_main(["run", "--env", "ridge"])
        assert rc == 2

    def test_selftest_command(self, capsys):
        rc = cli_main(["selftest"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "PASS delay-bookkeeping" in out
        assert "PASS stability-lemma" in out
