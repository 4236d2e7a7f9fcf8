"""Reference algorithms the delayed learners are benchmarked against.

Includes delayed gradient descent with a fixed step (DOGD), its strongly
convex variant with 1/(lam t) steps (DOGD-SC), the mirror-descent learner
re-exported as SDMD-RSC, and a black-box pool reduction that runs multiple
copies of a no-delay base algorithm so each copy only ever sees feedback for
its own last prediction.
"""

from __future__ import annotations

import heapq
import math
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigurationError, DataError
from .geometry import (
    BallDomain,
    PsdMatrix,
    project_ball,
    project_ball_mahalanobis,
)
from .learners import (
    DelayedOmd,
    GradientPacket,
    LabelPacket,
    curvature_coefficient,
    _sorted_by_origin,
)


def dogd_step_size(D: float, G: float, T: int, d_tot: int) -> float:
    """Oracle fixed step D / (G sqrt(T + d_tot)) using the realized total delay."""
    if D <= 0 or G <= 0 or T < 1 or d_tot < 0:
        raise ConfigurationError(
            f"need D, G > 0, T >= 1, d_tot >= 0; got D={D}, G={G}, T={T}, d_tot={d_tot}"
        )
    return D / (G * math.sqrt(T + d_tot))


class Dogd:
    """Projected gradient descent on whatever gradients arrived this round."""

    def __init__(self, dim: int, domain: BallDomain, step: float):
        if step <= 0:
            raise ConfigurationError(f"step must be > 0, got {step}")
        self.dim = dim
        self.domain = domain
        self.step = step
        self.x_current = np.zeros(dim)

    def start_round(self, t: int) -> np.ndarray:
        return self.x_current

    def finish_round(self, t: int, packets: Sequence[GradientPacket]) -> np.ndarray:
        g_sum = np.zeros(self.dim)
        for p in _sorted_by_origin(packets):
            g_sum += p.gradient
        self.x_current = project_ball(
            self.x_current - self.step * g_sum, self.domain
        )
        return self.x_current


class DogdSc:
    """As Dogd but with the strongly convex step schedule: each arrived
    gradient is applied with the step 1/(lam tau) it would have had at its
    origin round tau, i.e. the pending updates run when feedback lands."""

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
        step_sum = np.zeros(self.dim)
        for p in _sorted_by_origin(packets):
            step_sum += p.gradient / (self.lam * p.origin)
        self.x_current = project_ball(self.x_current - step_sum, self.domain)
        return self.x_current


# The mirror-descent baseline is the same update as DelayedOmd; keep one
# implementation and re-export it under the comparison name.
SdmdRsc = DelayedOmd


# ---------------------------------------------------------------------------
# Classic no-delay bases used inside the pool reduction
# ---------------------------------------------------------------------------


class ClassicOgdSc:
    """Projected gradient descent with step 1/(lam k) on a private timeline."""

    def __init__(self, dim: int, domain: BallDomain, strong_convexity: float):
        if strong_convexity <= 0:
            raise ConfigurationError(
                f"strong convexity modulus must be > 0, got {strong_convexity}"
            )
        self.domain = domain
        self.lam = strong_convexity
        self.x_current = np.zeros(dim)
        self.k = 0  # private round counter

    def propose(self) -> np.ndarray:
        self.k += 1
        return self.x_current

    def update(self, gradient: np.ndarray, point: np.ndarray) -> None:
        step = 1.0 / (self.lam * self.k)
        self.x_current = project_ball(self.x_current - step * gradient, self.domain)


class ClassicOns:
    """Newton-step learner with instantaneous feedback and a fixed diagonal
    shift: A = eps I + beta sum g g^T, minimizer projected in the A-norm.

    The curvature matrix keeps a Sherman-Morrison-maintained inverse since the
    diagonal shift never changes.
    """

    def __init__(
        self,
        dim: int,
        domain: BallDomain,
        gradient_bound: float,
        exp_concavity: float,
        epsilon: float = 1.0,
        proj_tol: float = 1e-10,
    ):
        if epsilon <= 0:
            raise ConfigurationError(f"epsilon must be > 0, got {epsilon}")
        self.dim = dim
        self.domain = domain
        self.beta = curvature_coefficient(
            gradient_bound, domain.diameter, exp_concavity
        )
        self.proj_tol = proj_tol
        self.A = PsdMatrix.scaled_identity(dim, epsilon)
        self.b_lin = np.zeros(dim)
        self.x_current = np.zeros(dim)

    def propose(self) -> np.ndarray:
        return self.x_current

    def update(self, gradient: np.ndarray, point: np.ndarray) -> None:
        g = np.asarray(gradient, dtype=float)
        self.A.add_rank_one(g, self.beta)
        self.b_lin += self.beta * float(g @ point) * g - g
        x_star = self.A.solve(self.b_lin)
        self.x_current = project_ball_mahalanobis(
            x_star, self.A, self.domain, tol=self.proj_tol
        )


class ClassicVaw:
    """The no-delay ridge forecaster with the same clipping rule as its
    delayed counterpart: A = gamma I + sum z z^T (current feature included),
    prediction scaled into the observed label range."""

    def __init__(self, dim: int, gamma: float = 1.0):
        if gamma <= 0:
            raise ConfigurationError(f"gamma must be > 0, got {gamma}")
        self.dim = dim
        self.gamma = gamma
        self.A = PsdMatrix.scaled_identity(dim, gamma)
        self.b = np.zeros(dim)
        self.rho = 0.0
        self.x_played = np.zeros(dim)

    def predict(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        self.A.add_rank_one(z, 1.0)
        x = self.A.solve(self.b)
        pred = float(z @ x)
        factor = 1.0 if abs(pred) <= self.rho else self.rho / abs(pred)
        self.x_played = factor * x
        return self.x_played

    def update(self, label: float, feature: np.ndarray) -> None:
        self.b += float(label) * np.asarray(feature, dtype=float)
        self.rho = max(self.rho, abs(float(label)))


# ---------------------------------------------------------------------------
# Black-box pool reduction
# ---------------------------------------------------------------------------


class BoldPool:
    """Routes rounds to base-learner copies so no copy has feedback pending.

    Each round goes to the smallest-index copy with no outstanding feedback
    (growing the pool when all are busy), which keeps every copy on a
    no-delay timeline of its own. On a truncated schedule the pool never
    exceeds d_max + 1 copies. Free indices sit in a min-heap so routing is
    O(log pool size).
    """

    def __init__(self, base_factory: Callable[[], object]):
        self.base_factory = base_factory
        self.instances: list[object] = []
        self.busy: list[bool] = []
        self._free: list[int] = []
        self.assignment: dict[int, int] = {}  # round -> instance index
        self.outstanding: set[int] = set()

    def route(self, t: int) -> int:
        if self._free:
            idx = heapq.heappop(self._free)
        else:
            self.instances.append(self.base_factory())
            self.busy.append(False)
            idx = len(self.instances) - 1
        self.busy[idx] = True
        self.assignment[t] = idx
        self.outstanding.add(t)
        return idx

    def feedback(self, origin: int) -> object:
        """Return the instance assigned to ``origin`` and mark it free."""
        if origin not in self.assignment:
            raise DataError(f"feedback for unassigned round {origin}")
        if origin not in self.outstanding:
            raise DataError(f"duplicate feedback for round {origin}")
        self.outstanding.discard(origin)
        idx = self.assignment[origin]
        self.busy[idx] = False
        heapq.heappush(self._free, idx)
        return self.instances[idx]

    @property
    def size(self) -> int:
        return len(self.instances)


class BoldGradient:
    """Pool reduction over a gradient-feedback base (ClassicOgdSc, ClassicOns)."""

    def __init__(self, base_factory: Callable[[], object]):
        self.pool = BoldPool(base_factory)

    def start_round(self, t: int) -> np.ndarray:
        idx = self.pool.route(t)
        return self.pool.instances[idx].propose()

    def finish_round(self, t: int, packets: Sequence[GradientPacket]) -> None:
        for p in _sorted_by_origin(packets):
            instance = self.pool.feedback(p.origin)
            instance.update(p.gradient, p.point)


class BoldVaw:
    """Pool reduction over the classic ridge forecaster for delayed labels."""

    def __init__(self, base_factory: Callable[[], ClassicVaw]):
        self.pool = BoldPool(base_factory)

    def predict(self, t: int, z_t: np.ndarray) -> np.ndarray:
        idx = self.pool.route(t)
        return self.pool.instances[idx].predict(z_t)

    def finish_round(self, t: int, packets: Sequence[LabelPacket]) -> None:
        for p in _sorted_by_origin(packets):
            instance = self.pool.feedback(p.origin)
            instance.update(p.label, p.feature)
