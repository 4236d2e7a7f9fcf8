"""Online convex optimization with arbitrarily delayed feedback.

Learners for strongly convex, exp-concave, and online-linear-regression
losses, the baselines they are compared against, delay-schedule machinery,
and a reproducible regret benchmark harness.
"""

__version__ = "0.1.0"

from .delays import (
    DelaySchedule,
    DelayStats,
    DelayTracker,
    FixedDelay,
    GeometricAlternatingDelay,
    HeavyTailDelay,
    TraceDelay,
    UniformDelay,
    arrivals_at,
    build_schedule,
    decreasing_burst_witness,
    load_schedule,
    missing_at,
    observed_at,
    online_perceived_dmax,
    realized_schedule,
    save_schedule,
    stats,
    truncate,
    unit_delay_witness,
)
from .geometry import (
    BallDomain,
    PsdMatrix,
    project_ball,
    project_ball_mahalanobis,
    sm_rank_one_update,
    solve_psd,
)
from .learners import (
    DelayedFtrl,
    DelayedOmd,
    DelayedOns,
    DelayedVaw,
    GradientPacket,
    LabelPacket,
    curvature_coefficient,
)
from .baselines import (
    BoldGradient,
    BoldPool,
    BoldVaw,
    ClassicOgdSc,
    ClassicOns,
    ClassicVaw,
    Dogd,
    DogdSc,
    SdmdRsc,
    dogd_step_size,
)
from .environments import (
    DatasetSpec,
    EnvConstants,
    Environment,
    NonStationarySpec,
    RealizedEnvironment,
    SyntheticSpec,
    load_noise_stream,
    parse_libsvm,
    write_libsvm,
)
from .harness import (
    AlgoSpec,
    ExperimentConfig,
    ExperimentResult,
    RegretTrace,
    emit_aggregate_csv,
    emit_csv,
    load_config,
    offline_comparator,
    run_cell,
    run_experiment,
)
