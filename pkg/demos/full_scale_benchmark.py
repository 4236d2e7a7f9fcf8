"""The full benchmark at publication scale: T = 10^4, 20 paired trials.

Writes one output directory per (loss family x delay regime) cell with the
complete comparison set. Expect roughly 15-30 minutes on a laptop core; the
pool-reduction baselines dominate the cost in the heavy regime because the
pool grows with the maximum delay.

Run:  python demos/full_scale_benchmark.py [outdir]
"""

import sys
import time

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

OUT = sys.argv[1] if len(sys.argv) > 1 else "demos/output-full"

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
            horizon=10_000,
            trials=20,
            master_seed=1,
            outdir=f"{OUT}/{name}",
        )
        t0 = time.perf_counter()
        result = run_experiment(config)
        print(f"--- {name} done in {time.perf_counter() - t0:.0f}s")
        for algo in config.algorithms:
            finals = result.final_regrets(algo.label)
            print(f"  {algo.label:>14}: {finals.mean():10.2f} +- {finals.std():.2f}")

print(f"\nSix aggregate CSVs under {OUT}/<cell>/aggregate.csv; render with:")
print(f"  cd frontend && npm run plot -- --from ../{OUT} --out figure.svg")
