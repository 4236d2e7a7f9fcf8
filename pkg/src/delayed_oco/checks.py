"""Self-contained property suites over random instances.

Each check runs a batch of randomized trials and reports the failure count;
the CLI ``selftest`` command, the unit tests, and the acceptance suite all
call these with their own trial counts.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .delays import (
    FixedDelay,
    GeometricAlternatingDelay,
    HeavyTailDelay,
    TraceDelay,
    UniformDelay,
    arrivals_at,
    decreasing_burst_witness,
    missing_at,
    observed_at,
    online_perceived_dmax,
    realized_schedule,
    stats,
    unit_delay_witness,
)
from .geometry import BallDomain, mahalanobis_norm, project_ball_mahalanobis


@dataclass
class CheckResult:
    name: str
    trials: int
    failures: int
    elapsed: float
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def __str__(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        msg = f"{status} {self.name}: {self.failures}/{self.trials} failures in {self.elapsed:.2f}s"
        if self.detail:
            msg += f" ({self.detail})"
        return msg


def _random_regime(rng: np.random.Generator, trial: int):
    kind = trial % 5
    if kind == 0:
        return UniformDelay(0, int(rng.integers(0, 12)), seed=trial)
    if kind == 1:
        return FixedDelay(int(rng.integers(0, 10)), seed=trial)
    if kind == 2:
        return HeavyTailDelay(UniformDelay(0, 5), float(rng.uniform(0.05, 0.4)), seed=trial)
    if kind == 3:
        return GeometricAlternatingDelay(
            float(rng.uniform(0.05, 0.9)), int(rng.integers(1, 40)), UniformDelay(0, 5), seed=trial
        )
    return TraceDelay(
        tuple(int(v) for v in rng.integers(0, 8, size=int(rng.integers(1, 40)))),
        seed=trial,
    )


def _random_schedule(rng: np.random.Generator, trial: int, max_T: int):
    regime = _random_regime(rng, trial)
    if isinstance(regime, TraceDelay):
        return realized_schedule(regime, len(regime.delays))
    return realized_schedule(regime, int(rng.integers(1, max_T + 1)))


def check_delay_bookkeeping(n_schedules: int = 1000, max_T: int = 200, seed: int = 0) -> CheckResult:
    """Counting identities, sigma_max bounds, and online/offline agreement of
    the perceived maximum delay over random truncated schedules."""
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    failures = 0
    for trial in range(n_schedules):
        s = _random_schedule(rng, trial, max_T)
        T = s.horizon
        st = stats(s)
        ok = True
        total_missing = 0
        prev_missing: frozenset = frozenset()
        arrivals_seen: list[int] = []
        log = [(tau, tau + s.delays[tau - 1]) for tau in range(1, T + 1)]
        for t in range(1, T + 2):
            o_t = observed_at(s, t)
            m_t = missing_at(s, t)
            if o_t & m_t or len(o_t) + len(m_t) != t - 1:
                ok = False
            if not m_t <= prev_missing | {t - 1}:
                ok = False
            prev_missing = m_t
            total_missing += len(m_t)
            if t <= T:
                arrivals_seen.extend(arrivals_at(s, t))
                if online_perceived_dmax(log, t) != st.perceived_dmax[t - 1]:
                    ok = False
        if total_missing != st.d_tot:
            ok = False
        if sorted(arrivals_seen) != list(range(1, T + 1)):
            ok = False
        if st.sigma_max > st.d_max:
            ok = False
        if st.sigma_max > 2 * np.sqrt(2) * np.sqrt(st.d_tot) + 1e-12:
            ok = False
        if not ok:
            failures += 1
    return CheckResult(
        "delay-bookkeeping", n_schedules, failures, time.perf_counter() - t0
    )


def check_subset_split_equality(n_schedules: int = 200, max_T: int = 12, seed: int = 0) -> CheckResult:
    """sigma_max = min_S (|S| + max_t |m_t \\ S|), verified by enumerating
    every S subseteq [T] for small horizons."""
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    failures = 0
    for trial in range(n_schedules):
        s = _random_schedule(rng, trial, max_T)
        T = min(s.horizon, max_T)
        if s.horizon > max_T:
            continue
        st = stats(s)
        masks = [
            sum(1 << (tau - 1) for tau in missing_at(s, t)) for t in range(1, T + 2)
        ]
        best = min(
            bin(S).count("1") + max((m & ~S).bit_count() for m in masks)
            for S in range(1 << T)
        )
        if best != st.sigma_max:
            failures += 1
    return CheckResult(
        "subset-split-equality", n_schedules, failures, time.perf_counter() - t0
    )


def check_burst_witnesses(N_range=range(10, 51)) -> CheckResult:
    """Witness schedules separating sigma_max from sqrt(d_tot), exactly."""
    t0 = time.perf_counter()
    failures = 0
    trials = 0
    for N in N_range:
        trials += 1
        s = decreasing_burst_witness(N, 2 * N)
        st = stats(s)
        if st.sigma_max != N - 1:
            failures += 1
        elif st.d_tot != N * (N - 1) // 2:
            failures += 1
        elif st.sigma_max ** 2 < 1.5 * st.d_tot:
            failures += 1
    for T in (50, 100, 400):
        trials += 1
        st = stats(unit_delay_witness(T))
        if st.sigma_max != 1 or st.d_tot != T - 1:
            failures += 1
    return CheckResult("burst-witnesses", trials, failures, time.perf_counter() - t0)


def check_stability_lemma(trials: int = 500, seed: int = 1, tol: float = 1e-8) -> CheckResult:
    """Ball-constrained minimizers of <w_i, x> + x^T A x + b^T x + c satisfy
    ||z1 - z2||_A <= (1/2) ||w1 - w2||_{A^{-1}}."""
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    failures = 0
    for _ in range(trials):
        n = int(rng.integers(2, 7))
        M = rng.standard_normal((n, n))
        A = M @ M.T + (0.1 + rng.random()) * np.eye(n)
        A_inv = np.linalg.inv(A)
        b = rng.standard_normal(n)
        w1 = rng.standard_normal(n) * rng.uniform(0.1, 3.0)
        w2 = rng.standard_normal(n) * rng.uniform(0.1, 3.0)
        dom = BallDomain(n, float(rng.uniform(0.05, 2.0)))
        # unconstrained minimizer of <w, x> + x^T A x + b^T x is -A^{-1}(w+b)/2;
        # the ball-constrained one is its A-norm projection
        z1 = project_ball_mahalanobis(-0.5 * A_inv @ (w1 + b), A, dom)
        z2 = project_ball_mahalanobis(-0.5 * A_inv @ (w2 + b), A, dom)
        lhs = mahalanobis_norm(z1 - z2, A)
        rhs = 0.5 * mahalanobis_norm(w1 - w2, A_inv)
        if lhs > rhs + tol:
            failures += 1
    return CheckResult("stability-lemma", trials, failures, time.perf_counter() - t0)


def check_elliptical_potential(trials: int = 100, seed: int = 2) -> CheckResult:
    """Both delayed elliptical-potential inequalities on random instances:
    bounded vectors, random truncated schedule, non-decreasing shifts."""
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    failures = 0
    for trial in range(trials):
        n = int(rng.integers(1, 6))
        N = int(rng.integers(2, 101))
        s = realized_schedule(
            HeavyTailDelay(UniformDelay(0, 8), float(rng.uniform(0.0, 0.2)), seed=trial),
            N,
        )
        st = stats(s)
        L = 1.0
        phi = float(rng.uniform(0.2, 3.0))
        eta0 = float(rng.uniform(0.2, 2.0))
        etas = eta0 + np.cumsum(rng.uniform(0.0, 0.3, size=N))
        a = rng.standard_normal((N, n))
        norms = np.linalg.norm(a, axis=1, keepdims=True)
        a = a / np.maximum(norms, 1.0)
        mats = [eta0 * np.eye(n)]
        S = np.zeros((n, n))
        for t in range(1, N + 1):
            S = S + phi * np.outer(a[t - 1], a[t - 1])
            mats.append(etas[t - 1] * np.eye(n) + S)
        lhs_prev = lhs_cur = 0.0
        for t in range(1, N + 1):
            inv_prev = np.linalg.inv(mats[t - 1])
            inv_cur = np.linalg.inv(mats[t])
            m_t = missing_at(s, t)
            sum_prev = sum(mahalanobis_norm(a[tau - 1], inv_prev) for tau in m_t)
            sum_cur = sum(mahalanobis_norm(a[tau - 1], inv_cur) for tau in m_t)
            lhs_prev += mahalanobis_norm(a[t - 1], inv_prev) * sum_prev
            lhs_cur += mahalanobis_norm(a[t - 1], inv_cur) * sum_cur
        dhat = st.perceived_dmax[-1]
        log_term = np.log1p(phi * L * L * N / (eta0 * n))
        rhs_prev = (2 * n * dhat / phi) * (phi * L * L / eta0 + 1.0) * log_term
        rhs_cur = (2 * n * dhat / phi) * log_term
        if lhs_prev > rhs_prev or lhs_cur > rhs_cur:
            failures += 1
    return CheckResult(
        "elliptical-potential", trials, failures, time.perf_counter() - t0
    )


def run_selftest() -> list[CheckResult]:
    """The quick property battery behind the CLI selftest command."""
    return [
        check_delay_bookkeeping(n_schedules=300, max_T=120),
        check_subset_split_equality(n_schedules=60, max_T=10),
        check_burst_witnesses(),
        check_stability_lemma(trials=200),
        check_elliptical_potential(trials=40),
    ]
