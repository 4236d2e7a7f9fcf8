"""Dense linear-algebra and projection kernels shared by the learners.

Everything here is sized for small dense problems (n up to a few dozen):
Euclidean ball projection, projection in a Mahalanobis norm via bisection on
the KKT multiplier, positive-definite solves, and Sherman-Morrison rank-one
inverse maintenance with periodic dense refresh.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ArgumentError, ConfigurationError, NumericError

# Dense inverse refresh cadence for rank-one update chains; bounds the
# accumulated Sherman-Morrison rounding drift over long runs.
INVERSE_REFRESH_PERIOD = 512


@dataclass(frozen=True)
class BallDomain:
    """Euclidean ball of the given radius centered at the origin."""

    dim: int
    radius: float

    def __post_init__(self):
        if self.dim < 1:
            raise ConfigurationError(f"dim must be >= 1, got {self.dim}")
        if self.radius < 0:
            raise ConfigurationError(f"radius must be >= 0, got {self.radius}")

    @property
    def diameter(self) -> float:
        return 2.0 * self.radius

    def contains(self, x: np.ndarray, tol: float = 1e-12) -> bool:
        return float(np.linalg.norm(x)) <= self.radius + tol


def project_ball(x: np.ndarray, dom: BallDomain) -> np.ndarray:
    """Euclidean projection onto the ball: rescale iff the norm exceeds R."""
    x = np.asarray(x, dtype=float)
    if x.shape != (dom.dim,):
        raise ArgumentError(f"point has shape {x.shape}, domain dim is {dom.dim}")
    norm = float(np.linalg.norm(x))
    if norm <= dom.radius:
        return x.copy()
    if dom.radius == 0.0:
        return np.zeros(dom.dim)
    return x * (dom.radius / norm)


class PsdMatrix:
    """Symmetric positive-definite matrix with an optionally cached inverse.

    The cached inverse is kept consistent under ``add_rank_one`` via the
    Sherman-Morrison formula, re-symmetrized after every update, and refreshed
    densely every INVERSE_REFRESH_PERIOD updates.
    """

    def __init__(self, mat: np.ndarray, inverse: np.ndarray | None = None):
        mat = np.asarray(mat, dtype=float)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ArgumentError(f"expected a square matrix, got shape {mat.shape}")
        sym_err = np.max(np.abs(mat - mat.T))
        scale = max(1.0, float(np.max(np.abs(mat))))
        if sym_err > 1e-12 * scale:
            raise ArgumentError(f"matrix not symmetric (max asymmetry {sym_err:g})")
        self.mat = 0.5 * (mat + mat.T)
        self.inv = None if inverse is None else np.asarray(inverse, dtype=float)
        self._updates_since_refresh = 0

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @classmethod
    def scaled_identity(cls, n: int, scale: float = 1.0) -> "PsdMatrix":
        if scale <= 0:
            raise ConfigurationError(f"scale must be > 0, got {scale}")
        return cls(scale * np.eye(n), inverse=np.eye(n) / scale)

    def with_inverse(self) -> "PsdMatrix":
        """Return self with a freshly computed dense inverse cached."""
        self.inv = np.linalg.inv(self.mat)
        self.inv = 0.5 * (self.inv + self.inv.T)
        return self

    def add_rank_one(self, v: np.ndarray, c: float) -> None:
        """In-place update A <- A + c v v^T (c > 0 preserves definiteness)."""
        if c <= 0:
            raise ConfigurationError(f"rank-one coefficient must be > 0, got {c}")
        v = np.asarray(v, dtype=float)
        self.mat += c * np.outer(v, v)
        self.mat = 0.5 * (self.mat + self.mat.T)
        if self.inv is not None:
            self._updates_since_refresh += 1
            if self._updates_since_refresh >= INVERSE_REFRESH_PERIOD:
                self.with_inverse()
                self._updates_since_refresh = 0
            else:
                Av = self.inv @ v
                denom = 1.0 + c * float(v @ Av)
                self.inv -= (c / denom) * np.outer(Av, Av)
                self.inv = 0.5 * (self.inv + self.inv.T)

    def solve(self, b: np.ndarray) -> np.ndarray:
        b = np.asarray(b, dtype=float)
        if not np.all(np.isfinite(self.mat)) or not np.all(np.isfinite(b)):
            raise NumericError("non-finite entries in PSD solve")
        if self.inv is not None:
            return self.inv @ b
        return _cholesky_solve(self.mat, b)


def sm_rank_one_update(A: PsdMatrix, v: np.ndarray, c: float) -> PsdMatrix:
    """Functional rank-one update returning a new PsdMatrix, inverse included."""
    if A.inv is None:
        raise ArgumentError("sm_rank_one_update requires a cached inverse")
    out = PsdMatrix(A.mat.copy(), inverse=A.inv.copy())
    out._updates_since_refresh = A._updates_since_refresh
    out.add_rank_one(v, c)
    return out


def _cholesky_solve(mat: np.ndarray, b: np.ndarray) -> np.ndarray:
    try:
        factor = scipy.linalg.cho_factor(mat, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"matrix is not positive definite: {exc}") from None
    return scipy.linalg.cho_solve(factor, b, check_finite=False)


def solve_psd(A: PsdMatrix | np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve A x = b via the cached inverse when present, else Cholesky."""
    if isinstance(A, PsdMatrix):
        return A.solve(b)
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    if not np.all(np.isfinite(A)) or not np.all(np.isfinite(b)):
        raise NumericError("non-finite entries in PSD solve")
    return _cholesky_solve(A, b)


def project_ball_mahalanobis(
    x_star: np.ndarray,
    A: PsdMatrix | np.ndarray,
    dom: BallDomain,
    tol: float = 1e-10,
) -> np.ndarray:
    """argmin_{||x|| <= R} (x - x_star)^T A (x - x_star) for positive-definite A.

    The KKT conditions give x(mu) = (A + mu I)^{-1} A x_star with multiplier
    mu >= 0 chosen so that ||x(mu)|| = R when x_star lies outside the ball.
    ||x(mu)|| is monotone decreasing in mu, so a doubling bracket followed by
    bisection converges globally; the accepted iterate has norm in
    [R - tol, R].
    """
    if tol <= 0:
        raise ConfigurationError(f"tol must be > 0, got {tol}")
    mat = A.mat if isinstance(A, PsdMatrix) else np.asarray(A, dtype=float)
    x_star = np.asarray(x_star, dtype=float)
    if x_star.shape != (dom.dim,):
        raise ArgumentError(
            f"point has shape {x_star.shape}, domain dim is {dom.dim}"
        )
    R = dom.radius
    if float(np.linalg.norm(x_star)) <= R:
        return x_star.copy()
    if R == 0.0:
        return np.zeros(dom.dim)

    rhs = mat @ x_star
    eye = np.eye(dom.dim)

    def candidate(mu: float) -> np.ndarray:
        return np.linalg.solve(mat + mu * eye, rhs)

    lo = 0.0  # ||x(lo)|| > R by the interior check above
    hi = 1.0
    x_hi = candidate(hi)
    doublings = 0
    while float(np.linalg.norm(x_hi)) > R:
        lo = hi
        hi *= 2.0
        x_hi = candidate(hi)
        doublings += 1
        if doublings > 200:
            raise NumericError(
                f"mahalanobis projection failed to bracket: mu in [{lo}, {hi}]"
            )

    for _ in range(200):
        if R - float(np.linalg.norm(x_hi)) <= tol:
            return x_hi
        mid = 0.5 * (lo + hi)
        x_mid = candidate(mid)
        if float(np.linalg.norm(x_mid)) > R:
            lo = mid
        else:
            hi = mid
            x_hi = x_mid
    if R - float(np.linalg.norm(x_hi)) <= tol:
        return x_hi
    raise NumericError(
        f"mahalanobis projection bisection stalled: mu in [{lo}, {hi}], "
        f"norm gap {R - float(np.linalg.norm(x_hi)):g}"
    )


def mahalanobis_norm(x: np.ndarray, mat: np.ndarray) -> float:
    """||x||_A = sqrt(x^T A x)."""
    return float(np.sqrt(max(0.0, float(x @ (mat @ x)))))
