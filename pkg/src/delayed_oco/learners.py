"""Online learners that absorb arbitrarily delayed feedback.

All learners share one driving protocol per round t:

    x_t = learner.start_round(t)          # or learner.predict(t, z_t) for
                                          # online linear regression
    ... environment charges f_t(x_t) ...
    learner.finish_round(t, packets)      # feedback with origin+delay == t

Feedback is delivered as packets carrying the origin round, the payload, and
the arrival round. Batches are folded in ascending origin order so runs are
bit-reproducible even though the sums commute.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .delays import DelayTracker
from .errors import ConfigurationError, DataError
from .geometry import BallDomain, project_ball, project_ball_mahalanobis


@dataclass(frozen=True)
class GradientPacket:
    """Gradient feedback of one round: g = grad f_origin(point)."""

    origin: int
    gradient: np.ndarray
    point: np.ndarray
    arrival: int


@dataclass(frozen=True)
class LabelPacket:
    """Label feedback of one online-regression round."""

    origin: int
    feature: np.ndarray
    label: float
    arrival: int


def curvature_coefficient(G: float, D: float, alpha: float) -> float:
    """beta = (1/2) min{1/(4 G D), alpha}: the quadratic-lower-bound modulus
    of an alpha-exp-concave loss with gradient bound G on a diameter-D set."""
    if G <= 0 or D <= 0 or alpha <= 0:
        raise ConfigurationError(
            f"need G, D, alpha > 0 to derive beta, got G={G}, D={D}, alpha={alpha}"
        )
    return 0.5 * min(1.0 / (4.0 * G * D), alpha)


def ons_rate_dmax_term(
    G: float, D: float, n: int, beta: float, log_term: float, perceived: int
) -> float:
    """a_t = (2/(G D)) (G^2 + 1/beta) n d_max^{<=t} ln(1 + beta G^2 T / n)."""
    return (2.0 / (G * D)) * (G**2 + 1.0 / beta) * n * perceived * log_term


def ons_rate_missing_term(
    G: float, D: float, cum_missing: int, missing_now: int
) -> float:
    """b_t = (G/D) sqrt(sum_{s<=t} |m_s| + |m_t| + 1); the |m_t|+1 term is a
    worst-case stand-in for |m_{t+1}|."""
    return (G / D) * math.sqrt(cum_missing + missing_now + 1)


def vaw_rate_dmax_term(
    n: int, Z: float, T: int, gamma: float, perceived: int
) -> float:
    """a_t = 2 n d_max^{<=t} ln(1 + Z^2 T / (gamma n))."""
    return 2.0 * n * perceived * math.log1p(Z**2 * T / (gamma * n))


def vaw_rate_missing_term(Z: float, cum_missing: int) -> float:
    """b_t = Z sqrt(sum_{s<=t} |m_s|)."""
    return Z * math.sqrt(cum_missing)


def _sorted_by_origin(packets: Sequence) -> list:
    return sorted(packets, key=lambda p: p.origin)


class DelayedFtrl:
    """Leader-following update for strongly convex losses under delay.

    After the arrivals of round t, plays the minimizer over the ball of

        sum_{observed tau} <g_tau, x> + (lam/2) sum_{s<=t} ||x - x_s||^2

    The regularizer centers on every past decision (not only the observed
    ones), which keeps the update diameter-free. On an L2 ball the argmin has
    the closed form: project the centroid shifted by the observed-gradient
    sum, (sum_s x_s - sum_g / lam) / t.
    """

    def __init__(self, dim: int, domain: BallDomain, strong_convexity: float):
        if strong_convexity <= 0:
            raise ConfigurationError(
                f"strong convexity modulus must be > 0, got {strong_convexity}"
            )
        self.dim = dim
        self.domain = domain
        self.lam = strong_convexity
        self.sum_x = np.zeros(dim)
        self.sum_g_observed = np.zeros(dim)
        self.t = 0
        self.x_current = np.zeros(dim)

    def start_round(self, t: int) -> np.ndarray:
        self.t = t
        self.sum_x += self.x_current
        return self.x_current

    def finish_round(self, t: int, packets: Sequence[GradientPacket]) -> np.ndarray:
        for p in _sorted_by_origin(packets):
            self.sum_g_observed += p.gradient
        centroid = (self.sum_x - self.sum_g_observed / self.lam) / t
        self.x_current = project_ball(centroid, self.domain)
        return self.x_current


class DelayedOmd:
    """Proximal step against newly arrived gradients with step 1/(t lam).

    x_{t+1} = Pi_X( x_t - (eta_t / 2) sum_{arrived} g_tau ), eta_t = 2/(t lam).
    """

    def __init__(self, dim: int, domain: BallDomain, strong_convexity: float):
        if strong_convexity <= 0:
            raise ConfigurationError(
                f"strong convexity modulus must be > 0, got {strong_convexity}"
            )
        self.dim = dim
        self.domain = domain
        self.lam = strong_convexity
        self.x_current = np.zeros(dim)

    def start_round(self, t: int) -> np.ndarray:
        return self.x_current

    def finish_round(self, t: int, packets: Sequence[GradientPacket]) -> np.ndarray:
        g_sum = np.zeros(self.dim)
        for p in _sorted_by_origin(packets):
            g_sum += p.gradient
        step = 1.0 / (t * self.lam)
        self.x_current = project_ball(self.x_current - step * g_sum, self.domain)
        return self.x_current


ONS_TUNINGS = ("constant", "sqrt_missing", "adaptive")


class DelayedOns:
    """Newton-step learner for exp-concave losses under delay.

    After the arrivals of round t, plays the minimizer over the ball of the
    quadratic surrogate

        sum_{observed tau} ( <g_tau, x> + (beta/2) <g_tau, x - x_tau>^2 )
        + (eta_t / 2) ||x||^2

    i.e. x* = A^{-1} b with A = eta_t I + beta sum g g^T and
    b = sum (beta <g, x_tau> g - g), projected in the A-norm.

    Learning-rate rules, queried at the end of round t:
      constant      eta_t = 1
      sqrt_missing  eta_t = (G/D) sqrt(sum_{s<=t} |m_s| + |m_t| + 1)
      adaptive      eta_t = min{a_t, b_t} + 1 with
                    a_t = (2/(G D)) (G^2 + 1/beta) n d_max^{<=t} ln(1 + beta G^2 T / n)
                    b_t = the sqrt_missing value

    A running max keeps eta_t non-decreasing: the |m_t|+1 term inside b_t is a
    worst-case estimate of |m_{t+1}| and can transiently shrink when a large
    missing set drains at once.
    """

    def __init__(
        self,
        dim: int,
        domain: BallDomain,
        gradient_bound: float,
        exp_concavity: float,
        horizon: int,
        tuning: str = "adaptive",
        proj_tol: float = 1e-10,
    ):
        if tuning not in ONS_TUNINGS:
            raise ConfigurationError(f"unknown tuning {tuning!r}; use {ONS_TUNINGS}")
        if tuning != "constant":
            if gradient_bound <= 0 or domain.diameter <= 0:
                raise ConfigurationError(
                    "non-constant tunings need G > 0 and a non-degenerate domain"
                )
            if horizon < 1:
                raise ConfigurationError(f"horizon must be >= 1, got {horizon}")
        self.dim = dim
        self.domain = domain
        self.G = gradient_bound
        self.T = horizon
        self.beta = curvature_coefficient(
            gradient_bound, domain.diameter, exp_concavity
        )
        self.tuning = tuning
        self.proj_tol = proj_tol
        self.outer_sum = np.zeros((dim, dim))  # beta * sum g g^T over observed
        self.b_lin = np.zeros(dim)
        self.tracker = DelayTracker()
        self.x_current = np.zeros(dim)
        self.etas: list[float] = []
        if tuning == "adaptive":
            self._log_term = math.log1p(
                self.beta * self.G**2 * self.T / self.dim
            )

    def start_round(self, t: int) -> np.ndarray:
        self.tracker.begin_round(t)
        return self.x_current

    def _tune(self, t: int) -> float:
        if self.tuning == "constant":
            return 1.0
        D = self.domain.diameter
        b_t = ons_rate_missing_term(
            self.G, D, self.tracker.cum_missing, self.tracker.missing_at_start
        )
        if self.tuning == "sqrt_missing":
            value = b_t
        else:
            a_t = ons_rate_dmax_term(
                self.G,
                D,
                self.dim,
                self.beta,
                self._log_term,
                self.tracker.perceived_dmax(t),
            )
            value = min(a_t, b_t) + 1.0
        if self.etas:
            value = max(value, self.etas[-1])
        return value

    def finish_round(self, t: int, packets: Sequence[GradientPacket]) -> np.ndarray:
        arrivals = []
        for p in _sorted_by_origin(packets):
            g = p.gradient
            self.outer_sum += self.beta * np.outer(g, g)
            self.b_lin += self.beta * float(g @ p.point) * g - g
            arrivals.append(p.origin)
        self.tracker.record_arrivals(arrivals, t)
        eta = self._tune(t)
        self.etas.append(eta)
        A = self.outer_sum + eta * np.eye(self.dim)
        x_star = np.linalg.solve(A, self.b_lin)
        self.x_current = project_ball_mahalanobis(
            x_star, A, self.domain, tol=self.proj_tol
        )
        return self.x_current


VAW_TUNINGS = ("constant", "adaptive")


class DelayedVaw:
    """Ridge-style online linear regression with delayed labels and clipping.

    Before predicting at round t the learner sees the feature z_t and solves

        x_t = argmin_x  sum_{observed tau} -y_tau <z_tau, x>
              + (1/2) sum_{tau <= t} <z_tau, x>^2 + (eta_t/2) ||x||^2

    (the current feature enters the covariance), then plays x_t scaled by
    min{rho_t / |<z_t, x_t>|, 1} so the predicted label stays inside the
    observed label range rho_t = max observed |y|. The scaling factor is 1
    whenever |<z_t, x_t>| <= rho_t, which also covers the 0/0 case.

    Adaptive rate, queried before predicting at round t:
        eta_t = gamma (min{a_t, b_t} + 1)
        a_t = 2 n d_max^{<=t} ln(1 + Z^2 T / (gamma n)),  b_t = Z sqrt(sum_{s<=t} |m_s|)

    With Z tracked online (Z_t = max_{tau<=t} ||z_tau||), eta_t is clamped to
    a running max so it stays non-decreasing across the Z_t jumps.
    """

    def __init__(
        self,
        dim: int,
        gamma: float,
        horizon: int,
        feature_bound: float | None = None,
        tuning: str = "adaptive",
    ):
        if gamma <= 0:
            raise ConfigurationError(f"gamma must be > 0, got {gamma}")
        if tuning not in VAW_TUNINGS:
            raise ConfigurationError(f"unknown tuning {tuning!r}; use {VAW_TUNINGS}")
        if tuning == "adaptive" and horizon < 1:
            raise ConfigurationError(f"horizon must be >= 1, got {horizon}")
        self.dim = dim
        self.gamma = gamma
        self.T = horizon
        self.Z_fixed = feature_bound
        self.tuning = tuning
        self.cov_sum = np.zeros((dim, dim))  # sum_{tau <= t} z z^T
        self.b_obs = np.zeros(dim)  # sum over observed y z
        self.rho = 0.0
        self.Z_running = 0.0
        self.tracker = DelayTracker()
        self._absorbed: set[int] = set()
        self.etas: list[float] = []
        self.rho_history: list[float] = []
        # (t, |<z,x>| before clipping, rho_t, |<z, played>|) per clipped round
        self.clip_events: list[tuple[int, float, float, float]] = []
        self.x_unclipped = np.zeros(dim)
        self.x_played = np.zeros(dim)

    def _tune(self, t: int) -> float:
        if self.tuning == "constant":
            return self.gamma
        Z = self.Z_fixed if self.Z_fixed is not None else self.Z_running
        a_t = vaw_rate_dmax_term(
            self.dim, Z, self.T, self.gamma, self.tracker.perceived_dmax(t)
        )
        b_t = vaw_rate_missing_term(Z, self.tracker.cum_missing)
        value = self.gamma * (min(a_t, b_t) + 1.0)
        if self.Z_fixed is None and self.etas:
            value = max(value, self.etas[-1])
        return value

    def predict(self, t: int, z_t: np.ndarray) -> np.ndarray:
        self.tracker.begin_round(t)
        z_t = np.asarray(z_t, dtype=float)
        self.cov_sum += np.outer(z_t, z_t)
        self.Z_running = max(self.Z_running, float(np.linalg.norm(z_t)))
        eta = self._tune(t)
        self.etas.append(eta)
        A = self.cov_sum + eta * np.eye(self.dim)
        x_t = np.linalg.solve(A, self.b_obs)
        self.x_unclipped = x_t
        pred = float(z_t @ x_t)
        self.rho_history.append(self.rho)
        if abs(pred) <= self.rho:
            self.x_played = x_t
        else:
            factor = self.rho / abs(pred)
            self.x_played = factor * x_t
            self.clip_events.append(
                (t, abs(pred), self.rho, abs(float(z_t @ self.x_played)))
            )
        return self.x_played

    def finish_round(self, t: int, packets: Sequence[LabelPacket]) -> None:
        arrivals = []
        for p in _sorted_by_origin(packets):
            if p.origin in self._absorbed:
                raise DataError(f"duplicate label for origin {p.origin}")
            self._absorbed.add(p.origin)
            self.b_obs += p.label * np.asarray(p.feature, dtype=float)
            self.rho = max(self.rho, abs(float(p.label)))
            arrivals.append(p.origin)
        self.tracker.record_arrivals(arrivals, t)
