"""Loss families, data generators, and dataset ingestion for the benchmark.

Three loss families over feature/label pairs (z_t, y_t):

    strongly_convex_ridge   f_t(x) = (1/2)(<z_t,x> - y_t)^2 + (1/2)||x||^2
    exp_concave_squared     f_t(x) = (1/2)(<z_t,x> - y_t)^2      (ball domain)
    olr_squared             same squared loss, unconstrained domain

Data can come from a synthetic stream (uniform features, linear labels plus
Gaussian noise), a non-stationary stream (the latent vector flips between
all-ones and all-zeros every ``period`` rounds, noise read from a file-backed
stream of values in [0, 1]), or a dataset in LIBSVM sparse text format whose
rows are cycled when the horizon exceeds the sample count.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ConfigurationError, ParseError, SequencingError
from .geometry import BallDomain

RIDGE = "strongly_convex_ridge"
SQUARED = "exp_concave_squared"
OLR = "olr_squared"
FAMILIES = (RIDGE, SQUARED, OLR)


@dataclass(frozen=True)
class SyntheticSpec:
    """Per-coordinate uniform features on [-1, 1]; y = <z, 1> + noise."""

    dim: int = 5
    noise_scale: float = 1.0  # 0 disables the Gaussian noise (test hook)


@dataclass(frozen=True)
class NonStationarySpec:
    """Latent vector alternates between all-ones and all-zeros every
    ``period`` rounds; additive noise streamed from a text file of values in
    [0, 1], cycled when shorter than the horizon."""

    dim: int = 5
    period: int = 30
    noise_path: str | None = None  # None -> packaged sample stream


@dataclass(frozen=True)
class DatasetSpec:
    """Rows of a parsed dataset, cycled to fill the horizon."""

    path: str
    dim: int


DataSource = SyntheticSpec | NonStationarySpec | DatasetSpec


@dataclass(frozen=True)
class EnvConstants:
    """Problem constants logged with every run and fed to the tunings."""

    G: float
    D: float
    lam: float | None
    alpha: float | None
    Y: float
    Z: float


@dataclass(frozen=True)
class Environment:
    """Loss family + data source + domain description."""

    family: str
    source: DataSource
    radius: float = 2.0  # ball radius for constrained families
    baseline_radius: float = 2.0  # ball given to constrained baselines in OLR cells

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigurationError(f"unknown family {self.family!r}; use {FAMILIES}")

    @property
    def dim(self) -> int:
        return self.source.dim

    @property
    def domain(self) -> BallDomain | None:
        if self.family == OLR:
            return None
        return BallDomain(self.dim, self.radius)

    def realize(self, T: int, seed: int) -> "RealizedEnvironment":
        if T < 1:
            raise ConfigurationError(f"T must be >= 1, got {T}")
        n = self.dim
        rng = np.random.default_rng(seed)
        src = self.source
        if isinstance(src, SyntheticSpec):
            z = np.empty((T, n))
            y = np.empty(T)
            # interleaved per-round draws keep (seed, t) determinism
            # independent of the horizon
            for t in range(T):
                z[t] = rng.uniform(-1.0, 1.0, size=n)
                y[t] = z[t].sum() + src.noise_scale * rng.standard_normal()
            Y = n + src.noise_scale
            Z = float(np.sqrt(n))
        elif isinstance(src, NonStationarySpec):
            noise = load_noise_stream(src.noise_path or default_noise_path())
            z = np.empty((T, n))
            y = np.empty(T)
            theta_one = np.ones(n)
            theta_zero = np.zeros(n)
            for t in range(T):
                z[t] = rng.uniform(-1.0, 1.0, size=n)
                phase = (t // src.period) % 2
                theta = theta_one if phase == 0 else theta_zero
                y[t] = float(z[t] @ theta) + noise[t % len(noise)]
            Y = n + 1.0
            Z = float(np.sqrt(n))
        elif isinstance(src, DatasetSpec):
            features, labels = parse_libsvm(src.path, dim=src.dim)
            if len(labels) == 0:
                raise ConfigurationError(f"dataset {src.path} is empty")
            idx = np.arange(T) % len(labels)
            z = features[idx]
            y = labels[idx]
            Y = float(np.max(np.abs(labels)))
            Z = float(np.max(np.linalg.norm(features, axis=1)))
        else:
            raise ConfigurationError(f"unknown data source {type(src).__name__}")
        return RealizedEnvironment(env=self, z=z, y=y, Y=Y, Z=Z)


class RealizedEnvironment:
    """All T rounds of one trial, with exact losses and gradients."""

    def __init__(self, env: Environment, z: np.ndarray, y: np.ndarray, Y: float, Z: float):
        self.env = env
        self.family = env.family
        self.dim = env.dim
        self.domain = env.domain
        self.z = z
        self.y = y
        self.horizon = len(y)
        self.constants = derive_constants(env, Y=Y, Z=Z)

    def _check_round(self, t: int) -> None:
        if not 1 <= t <= self.horizon:
            raise SequencingError(
                f"round {t} not materialized (horizon {self.horizon})"
            )

    def round_data(self, t: int) -> tuple[np.ndarray, float]:
        self._check_round(t)
        return self.z[t - 1], float(self.y[t - 1])

    def loss_value(self, t: int, x: np.ndarray) -> float:
        self._check_round(t)
        residual = float(self.z[t - 1] @ x) - float(self.y[t - 1])
        value = 0.5 * residual * residual
        if self.family == RIDGE:
            value += 0.5 * float(x @ x)
        return value

    def loss_grad(self, t: int, x: np.ndarray) -> np.ndarray:
        self._check_round(t)
        z_t = self.z[t - 1]
        residual = float(z_t @ x) - float(self.y[t - 1])
        grad = residual * z_t
        if self.family == RIDGE:
            grad = grad + x
        return grad

    def total_loss(self, x: np.ndarray) -> float:
        residuals = self.z @ x - self.y
        value = 0.5 * float(residuals @ residuals)
        if self.family == RIDGE:
            value += 0.5 * self.horizon * float(x @ x)
        return value

    def total_grad(self, x: np.ndarray) -> np.ndarray:
        residuals = self.z @ x - self.y
        grad = self.z.T @ residuals
        if self.family == RIDGE:
            grad = grad + self.horizon * x
        return grad

    def hessian_upper_bound(self) -> float:
        """Largest eigenvalue of the total-loss Hessian (for safe PGD steps)."""
        H = self.z.T @ self.z
        if self.family == RIDGE:
            H = H + self.horizon * np.eye(self.dim)
        return float(np.linalg.eigvalsh(H)[-1])


def derive_constants(env: Environment, Y: float, Z: float) -> EnvConstants:
    """Box bounds on gradients and curvature from the family's closed form."""
    if env.family == RIDGE:
        R = env.radius
        G = Z * (Z * R + Y) + R
        return EnvConstants(G=G, D=2 * R, lam=1.0, alpha=None, Y=Y, Z=Z)
    if env.family == SQUARED:
        R = env.radius
        G = Z * (Z * R + Y)
        alpha = 1.0 / (Z * R + Y) ** 2 if Z * R + Y > 0 else None
        return EnvConstants(G=G, D=2 * R, lam=None, alpha=alpha, Y=Y, Z=Z)
    # OLR: G and D describe the ball handed to constrained baselines
    R = env.baseline_radius
    G = Z * (Z * R + Y)
    return EnvConstants(G=G, D=2 * R, lam=None, alpha=None, Y=Y, Z=Z)


def env_constants(realized: RealizedEnvironment) -> EnvConstants:
    return realized.constants


# ---------------------------------------------------------------------------
# LIBSVM sparse text format
# ---------------------------------------------------------------------------


def parse_libsvm(path: str | Path, dim: int | None = None):
    """Parse ``<label> <index>:<value> ...`` lines into dense arrays.

    Indices are 1-based; absent indices are zero. With ``dim=None`` the
    dimension is inferred from the largest index seen.
    """
    path = Path(path)
    rows: list[dict[int, float]] = []
    labels: list[float] = []
    max_index = 0
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        tokens = line.split()
        try:
            label = float(tokens[0])
        except ValueError:
            raise ParseError(f"bad label {tokens[0]!r}", line=lineno) from None
        entries: dict[int, float] = {}
        for token in tokens[1:]:
            if ":" not in token:
                raise ParseError(f"expected index:value, got {token!r}", line=lineno)
            idx_str, val_str = token.split(":", 1)
            try:
                idx = int(idx_str)
                val = float(val_str)
            except ValueError:
                raise ParseError(f"bad entry {token!r}", line=lineno) from None
            if idx < 1:
                raise ParseError(f"index {idx} must be >= 1", line=lineno)
            if dim is not None and idx > dim:
                raise ParseError(
                    f"index {idx} exceeds configured dimension {dim}", line=lineno
                )
            entries[idx] = val
            max_index = max(max_index, idx)
        labels.append(label)
        rows.append(entries)
    n = dim if dim is not None else max_index
    features = np.zeros((len(rows), n))
    for i, entries in enumerate(rows):
        for idx, val in entries.items():
            features[i, idx - 1] = val
    return features, np.asarray(labels)


def write_libsvm(path: str | Path, features: np.ndarray, labels: np.ndarray) -> None:
    """Serialize dense arrays back to the sparse text grammar (zeros omitted)."""
    path = Path(path)
    lines = []
    for row, label in zip(features, labels):
        parts = [format(float(label), ".17g")]
        for j, val in enumerate(row, start=1):
            if val != 0.0:
                parts.append(f"{j}:{format(float(val), '.17g')}")
        lines.append(" ".join(parts))
    path.write_text("\n".join(lines) + ("\n" if lines else ""))


# ---------------------------------------------------------------------------
# Noise stream files
# ---------------------------------------------------------------------------


def default_noise_path() -> Path:
    return Path(str(resources.files("delayed_oco").joinpath("data/noise_sample.txt")))


def load_noise_stream(path: str | Path) -> np.ndarray:
    """One decimal in [0, 1] per line; ``#`` starts a comment."""
    path = Path(path)
    values = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            v = float(line)
        except ValueError:
            raise ParseError(f"bad noise value {line!r}", line=lineno) from None
        if not 0.0 <= v <= 1.0:
            raise ParseError(f"noise value {v} outside [0, 1]", line=lineno)
        values.append(v)
    if not values:
        raise ParseError("noise stream is empty", line=1)
    return np.asarray(values)
