"""Delay schedules and the observed/missing bookkeeping they induce.

A schedule assigns each round t a non-negative integer delay d_t, meaning the
feedback generated at round t becomes visible at the end of round t + d_t.
Derived per-round quantities:

    o_t = {tau : tau + d_tau < t}   rounds observed before round t
    m_t = [t-1] \\ o_t               rounds still missing at round t

and the summary statistics sigma_max = max_t |m_t|, d_max = max_t d_t,
d_tot = sum_t d_t, plus the perceived maximum delay
d_max^{<=t} = max_{tau<=t} min(d_tau, t - tau), which is computable online
from arrival time-stamps alone.

All downstream code assumes schedules are truncated so that t + d_t <= T;
``truncate`` is idempotent and applied once at construction time by
``realized_schedule``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ArgumentError,
    ConfigurationError,
    DataError,
    ParseError,
    SequencingError,
)

# Identifier of the pseudo-random generator used for schedule draws; recorded
# in experiment metadata so runs can be reproduced bit for bit.
GENERATOR_ID = "numpy-pcg64"


# ---------------------------------------------------------------------------
# Regime specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FixedDelay:
    """Every round is delayed by the same constant d."""

    d: int
    seed: int = 0

    def __post_init__(self):
        if self.d < 0:
            raise ConfigurationError(f"fixed delay d must be >= 0, got d={self.d}")

    def draw(self, rng: np.random.Generator, T: int) -> np.ndarray:
        return np.full(T, self.d, dtype=np.int64)


@dataclass(frozen=True)
class UniformDelay:
    """d_t sampled independently and uniformly from {lo, ..., hi}."""

    lo: int
    hi: int
    seed: int = 0

    def __post_init__(self):
        if self.lo < 0:
            raise ConfigurationError(f"uniform delay lo must be >= 0, got lo={self.lo}")
        if self.lo > self.hi:
            raise ConfigurationError(
                f"uniform delay requires lo <= hi, got lo={self.lo}, hi={self.hi}"
            )

    def draw(self, rng: np.random.Generator, T: int) -> np.ndarray:
        return rng.integers(self.lo, self.hi + 1, size=T, dtype=np.int64)


@dataclass(frozen=True)
class TraceDelay:
    """An explicit delay sequence, e.g. loaded from a schedule file."""

    delays: tuple[int, ...]
    seed: int = 0

    def __post_init__(self):
        if any(d < 0 for d in self.delays):
            raise ConfigurationError("trace delays must all be >= 0")

    def draw(self, rng: np.random.Generator, T: int) -> np.ndarray:
        if len(self.delays) != T:
            raise ConfigurationError(
                f"trace length {len(self.delays)} does not match T={T}"
            )
        return np.asarray(self.delays, dtype=np.int64)


@dataclass(frozen=True)
class HeavyTailDelay:
    """With probability p the feedback of round t is delayed to the horizon
    (d_t = T - t); otherwise d_t is re-drawn from the base regime.

    The Bernoulli coin is drawn first, then the base regime draw happens only
    when the coin fails, which fixes the sampling order for reproducibility.
    """

    base: "DelayRegime"
    p: float
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ConfigurationError(f"heavy_tail p must lie in [0, 1], got p={self.p}")

    def draw(self, rng: np.random.Generator, T: int) -> np.ndarray:
        out = np.empty(T, dtype=np.int64)
        for t in range(1, T + 1):
            if rng.random() < self.p:
                out[t - 1] = T - t
            else:
                out[t - 1] = int(self.base.draw(rng, 1)[0])
        return out


@dataclass(frozen=True)
class GeometricAlternatingDelay:
    """Alternates every ``period`` rounds between geometric delays with
    success probability p (support {0, 1, 2, ...}) and the fallback regime.
    """

    p: float
    period: int
    fallback: "DelayRegime"
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.p <= 1.0:
            raise ConfigurationError(
                f"geometric_alternating p must lie in (0, 1], got p={self.p}"
            )
        if self.period < 1:
            raise ConfigurationError(
                f"geometric_alternating period must be >= 1, got period={self.period}"
            )

    def draw(self, rng: np.random.Generator, T: int) -> np.ndarray:
        out = np.empty(T, dtype=np.int64)
        for t in range(1, T + 1):
            geometric_phase = ((t - 1) // self.period) % 2 == 0
            if geometric_phase:
                # numpy's geometric counts trials (support {1, 2, ...});
                # shift to {0, 1, ...} so p = 1 means no delay.
                out[t - 1] = int(rng.geometric(self.p)) - 1
            else:
                out[t - 1] = int(self.fallback.draw(rng, 1)[0])
        return out


DelayRegime = (
    FixedDelay | UniformDelay | TraceDelay | HeavyTailDelay | GeometricAlternatingDelay
)


# ---------------------------------------------------------------------------
# Schedules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DelaySchedule:
    """A horizon T together with per-round delays d_1..d_T."""

    horizon: int
    delays: tuple[int, ...]

    def __post_init__(self):
        if self.horizon < 1:
            raise ConfigurationError(f"horizon must be >= 1, got T={self.horizon}")
        if len(self.delays) != self.horizon:
            raise ConfigurationError(
                f"expected {self.horizon} delays, got {len(self.delays)}"
            )
        if any(d < 0 for d in self.delays):
            raise ConfigurationError("delays must all be >= 0")

    @property
    def is_truncated(self) -> bool:
        return all(t + d <= self.horizon for t, d in enumerate(self.delays, start=1))


@dataclass(frozen=True)
class DelayStats:
    sigma_max: int
    d_max: int
    d_tot: int
    perceived_dmax: tuple[int, ...]  # d_max^{<=t} for t = 1..T


def build_schedule(spec: DelayRegime, T: int) -> DelaySchedule:
    """Draw a raw (possibly un-truncated) schedule of length T, seeded by the regime."""
    if T < 1:
        raise ConfigurationError(f"T must be >= 1, got T={T}")
    rng = np.random.default_rng(spec.seed)
    delays = spec.draw(rng, T)
    return DelaySchedule(horizon=T, delays=tuple(int(d) for d in delays))


def truncate(schedule: DelaySchedule) -> DelaySchedule:
    """Clamp d_t to T - t so no feedback outlives the horizon. Idempotent."""
    T = schedule.horizon
    clamped = tuple(min(d, T - t) for t, d in enumerate(schedule.delays, start=1))
    return DelaySchedule(horizon=T, delays=clamped)


def realized_schedule(spec: DelayRegime, T: int) -> DelaySchedule:
    """build_schedule followed by truncation; what the harness runs on."""
    return truncate(build_schedule(spec, T))


def _require_truncated(schedule: DelaySchedule) -> None:
    if not schedule.is_truncated:
        raise ArgumentError("schedule must be truncated (t + d_t <= T for all t)")


def arrivals_at(schedule: DelaySchedule, t: int) -> frozenset[int]:
    """Origins whose feedback arrives at the end of round t: o_{t+1} \\ o_t."""
    _require_truncated(schedule)
    if not 1 <= t <= schedule.horizon:
        raise ArgumentError(f"round t={t} outside [1, {schedule.horizon}]")
    return frozenset(
        tau for tau in range(1, t + 1) if tau + schedule.delays[tau - 1] == t
    )


def observed_at(schedule: DelaySchedule, t: int) -> frozenset[int]:
    """o_t: rounds whose feedback arrived strictly before round t."""
    if not 1 <= t <= schedule.horizon + 1:
        raise ArgumentError(f"round t={t} outside [1, {schedule.horizon + 1}]")
    return frozenset(
        tau for tau in range(1, t) if tau + schedule.delays[tau - 1] < t
    )


def missing_at(schedule: DelaySchedule, t: int) -> frozenset[int]:
    """m_t: rounds in [t-1] whose feedback is still outstanding at round t."""
    if not 1 <= t <= schedule.horizon + 1:
        raise ArgumentError(f"round t={t} outside [1, {schedule.horizon + 1}]")
    return frozenset(
        tau for tau in range(1, t) if tau + schedule.delays[tau - 1] >= t
    )


def stats(schedule: DelaySchedule) -> DelayStats:
    """Summary statistics of a truncated schedule.

    Bookkeeping is incremental (one pass, O(T + d_tot)):
    m_{t+1} = (m_t u {t}) minus the arrivals of round t, so only sizes and
    the smallest outstanding origin need to be tracked.
    """
    _require_truncated(schedule)
    T = schedule.horizon
    d = schedule.delays
    arrivals_bucket: list[list[int]] = [[] for _ in range(T + 1)]
    for tau in range(1, T + 1):
        arrivals_bucket[tau + d[tau - 1] - 1].append(tau)

    sigma_max = 0
    missing_count = 0
    arrived = np.zeros(T + 2, dtype=bool)
    min_missing = 1
    observed_dmax = 0
    perceived = []
    for t in range(1, T + 1):
        # |m_t| before round t plays
        sigma_max = max(sigma_max, missing_count)
        # end of round t: arrivals with tau + d_tau = t
        for tau in arrivals_bucket[t - 1]:
            arrived[tau] = True
            observed_dmax = max(observed_dmax, t - tau)
        missing_count = missing_count + 1 - len(arrivals_bucket[t - 1])
        while min_missing <= t and arrived[min_missing]:
            min_missing += 1
        if min_missing <= t:
            perceived.append(max(observed_dmax, t - min_missing))
        else:
            perceived.append(observed_dmax)
    sigma_max = max(sigma_max, missing_count)  # |m_{T+1}| (empty once truncated)

    return DelayStats(
        sigma_max=sigma_max,
        d_max=max(d) if d else 0,
        d_tot=int(sum(d)),
        perceived_dmax=tuple(perceived),
    )


def online_perceived_dmax(
    arrival_log: Iterable[tuple[int, int]], t: int
) -> int:
    """d_max^{<=t} from information available at round t.

    ``arrival_log`` carries (origin, arrival) pairs. Origins in [t] absent
    from the log, or logged with arrival > t, are still missing at round t and
    contribute t - origin; arrived origins contribute their realized delay.
    """
    if t < 1:
        raise ArgumentError(f"round t={t} must be >= 1")
    seen: set[int] = set()
    best = 0
    arrived_origins: set[int] = set()
    for origin, arrival in arrival_log:
        if origin in seen:
            raise DataError(f"duplicate origin {origin} in arrival log")
        seen.add(origin)
        if arrival < origin:
            raise DataError(
                f"origin {origin} logged with arrival {arrival} < origin"
            )
        if origin <= t and arrival <= t:
            arrived_origins.add(origin)
            best = max(best, arrival - origin)
    for origin in range(1, t + 1):
        if origin not in arrived_origins:
            best = max(best, t - origin)
            break  # earlier missing origins dominate later ones
    return best


class DelayTracker:
    """Online bookkeeping of |m_t|, sum_s |m_s|, and d_max^{<=t} for a learner.

    Drive it with ``begin_round(t)`` when round t starts and
    ``record_arrivals(origins, t)`` at the end of round t. Queries are valid
    at either point; the perceived maximum delay respects what is observable
    at the query instant.
    """

    def __init__(self):
        self._rounds_played = 0
        self._arrived_count = 0
        self._arrived = [False]  # 1-indexed; slot 0 unused
        self._min_missing = 1
        self._observed_dmax = 0
        self._missing_at_start = 0
        self._cum_missing = 0

    def begin_round(self, t: int) -> None:
        if t != self._rounds_played + 1:
            raise SequencingError(
                f"begin_round({t}) but next round is {self._rounds_played + 1}"
            )
        self._missing_at_start = (t - 1) - self._arrived_count
        self._cum_missing += self._missing_at_start
        self._rounds_played = t
        self._arrived.append(False)

    def record_arrivals(self, origins: Sequence[int], t: int) -> None:
        for tau in origins:
            if not 1 <= tau <= self._rounds_played:
                raise DataError(f"arrival for unplayed origin {tau} at round {t}")
            if self._arrived[tau]:
                raise DataError(f"duplicate arrival for origin {tau}")
            self._arrived[tau] = True
            self._arrived_count += 1
            self._observed_dmax = max(self._observed_dmax, t - tau)
        while (
            self._min_missing <= self._rounds_played
            and self._arrived[self._min_missing]
        ):
            self._min_missing += 1

    @property
    def missing_at_start(self) -> int:
        """|m_t| for the current round t."""
        return self._missing_at_start

    @property
    def cum_missing(self) -> int:
        """sum_{s <= t} |m_s| for the current round t."""
        return self._cum_missing

    def perceived_dmax(self, t: int) -> int:
        """d_max^{<=t} given the arrivals recorded so far."""
        if self._min_missing <= self._rounds_played:
            return max(self._observed_dmax, t - self._min_missing)
        return self._observed_dmax


# ---------------------------------------------------------------------------
# Witness constructors for the sigma_max vs sqrt(d_tot) separations
# ---------------------------------------------------------------------------


def decreasing_burst_witness(N: int, T: int) -> DelaySchedule:
    """d_t = N - t for t <= N, else 0: all early feedback lands at round N.

    Gives sigma_max = N - 1 while d_tot = N(N-1)/2, so sigma_max is of the
    same order as sqrt(d_tot).
    """
    if not 1 <= N <= T:
        raise ConfigurationError(f"need 1 <= N <= T, got N={N}, T={T}")
    delays = tuple(N - t if t <= N else 0 for t in range(1, T + 1))
    return DelaySchedule(horizon=T, delays=delays)


def unit_delay_witness(T: int) -> DelaySchedule:
    """d_t = 1 everywhere (truncated at the horizon): sigma_max = 1 but
    d_tot = T - 1, so sqrt(d_tot) grows like sqrt(T)."""
    return truncate(DelaySchedule(horizon=T, delays=tuple(1 for _ in range(T))))


# ---------------------------------------------------------------------------
# Plain-text serialization
# ---------------------------------------------------------------------------


def save_schedule(schedule: DelaySchedule, path: str | Path) -> None:
    """Two-line format: ``T=<int>`` then space-separated d_1..d_T."""
    path = Path(path)
    lines = [f"T={schedule.horizon}", " ".join(str(d) for d in schedule.delays)]
    path.write_text("\n".join(lines) + "\n")


def load_schedule(path: str | Path) -> DelaySchedule:
    path = Path(path)
    raw = path.read_text().splitlines()
    if len(raw) < 2:
        raise ParseError("expected two lines: T=<int> and the delay sequence", line=1)
    if not raw[0].startswith("T="):
        raise ParseError(f"expected 'T=<int>', got {raw[0]!r}", line=1)
    try:
        T = int(raw[0][2:])
    except ValueError:
        raise ParseError(f"bad horizon {raw[0][2:]!r}", line=1) from None
    try:
        delays = tuple(int(tok) for tok in raw[1].split())
    except ValueError:
        raise ParseError("delays must be integers", line=2) from None
    if len(delays) != T:
        raise ParseError(f"expected {T} delays, found {len(delays)}", line=2)
    return DelaySchedule(horizon=T, delays=delays)
