"""A desk-scale version of the full benchmark grid.

Runs the three loss families under both delay regimes with every algorithm
from the comparison, at a reduced horizon so the whole thing finishes in
about a minute, and writes trace/aggregate CSVs that the plotting frontend
can render.

Run:  python demos/small_benchmark.py [T] [trials]
"""

import sys

from delayed_oco import (
    AlgoSpec,
    Environment,
    ExperimentConfig,
    HeavyTailDelay,
    SyntheticSpec,
    UniformDelay,
    run_experiment,
)
from delayed_oco.environments import OLR, RIDGE, SQUARED

T = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
TRIALS = int(sys.argv[2]) if len(sys.argv) > 2 else 5

REGIMES = {
    "uniform": UniformDelay(0, 5),
    "heavy": HeavyTailDelay(UniformDelay(0, 5), 0.1),
}
CELLS = {
    "ridge": (RIDGE, [
        AlgoSpec("delayed-ftrl", "delayed-ftrl"),
        AlgoSpec("dogd-sc", "dogd-sc"),
        AlgoSpec("sdmd-rsc", "sdmd-rsc"),
        AlgoSpec("bold-ogd", "bold-ogd"),
    ]),
    "squared": (SQUARED, [
        AlgoSpec("delayed-ons", "delayed-ons", {"tuning": "adaptive"}),
        AlgoSpec("dogd", "dogd"),
        AlgoSpec("bold-ons", "bold-ons"),
    ]),
    "olr": (OLR, [
        AlgoSpec("delayed-vaw", "delayed-vaw"),
        AlgoSpec("dogd", "dogd"),
        AlgoSpec("bold-vaw", "bold-vaw"),
    ]),
}

for env_name, (family, algos) in CELLS.items():
    for regime_name, regime in REGIMES.items():
        name = f"{env_name}-{regime_name}"
        config = ExperimentConfig(
            name=name,
            env=Environment(family=family, source=SyntheticSpec()),
            delay=regime,
            algorithms=tuple(algos),
            horizon=T,
            trials=TRIALS,
            master_seed=1,
            outdir=f"demos/output/{name}",
        )
        result = run_experiment(config)
        print(f"--- {name} (T={T}, {TRIALS} trials)")
        for algo in config.algorithms:
            finals = result.final_regrets(algo.label)
            print(
                f"  {algo.label:>14}: final regret {finals.mean():9.2f}"
                f"  (std {finals.std():.2f})"
            )

print()
print("Aggregate CSVs live under demos/output/<cell>/aggregate.csv; render")
print("them with the plotting frontend:")
print("  cd frontend && npm run plot -- --from ../demos/output --out figure.svg")
