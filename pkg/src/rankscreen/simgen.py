"""Seeded generators for the synthetic screening benchmarks.

Predictors are zero-mean with covariance sigma_ij = rho^|i-j|, produced by the
AR(1) recursion X_1 = Z_1, X_j = rho X_{j-1} + sqrt(1-rho^2) Z_j (exact for
that covariance, O(np)); the heavy-tailed variant divides a Gaussian row by
sqrt(chi^2_1) to get multivariate t with one degree of freedom. Responses
follow the printed benchmark formulas; note 1-based math names X_1..X_p map
to 0-based columns 0..p-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DataMatrix, ResponseVector, SeedSpec, StreamPurpose, derive_stream

# Active feature columns (0-based) per model. 2b as printed never uses X_1 and
# 2e never uses X_4, so their active sets have three entries.
ACTIVE_SETS: dict[str, tuple[int, ...]] = {
    "1a": (0, 1, 2, 3, 4),
    "1b": (0, 1, 2, 3, 4),
    "1c": (0, 1, 2, 3, 4),
    "1d": (0, 1, 2, 3, 4),
    "2a": (0, 1, 2, 3),
    "2b": (1, 2, 3),
    "2c": (0, 1, 2, 3),
    "2d": (0, 1, 2, 3),
    "2e": (0, 1, 2),
}

MODEL_IDS = tuple(ACTIVE_SETS)

# Above this rate, Poisson draws switch to the round(lam + sqrt(lam) Z)
# normal approximation (clamped at 0).
POISSON_EXACT_MAX = 1e7


class SimulationError(ValueError):
    """A generated response value came out non-finite (kept loud on purpose
    so seeds stay auditable instead of silently redrawing)."""


@dataclass(frozen=True)
class SimModelSpec:
    """One synthetic benchmark draw: model, shape, AR parameter, seed."""

    model_id: str
    n: int
    p: int
    rho: float = 0.5
    seed: SeedSpec = SeedSpec(0)

    def __post_init__(self):
        if self.model_id not in ACTIVE_SETS:
            raise ValueError(f"unknown model {self.model_id!r}; pick one of {', '.join(MODEL_IDS)}")
        if not abs(self.rho) < 1:
            raise ValueError(f"need |rho| < 1, got {self.rho}")
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")
        needed = max(ACTIVE_SETS[self.model_id]) + 1
        if self.p < needed:
            raise ValueError(f"model {self.model_id} needs p >= {needed}, got {self.p}")

    @property
    def active_set(self) -> tuple[int, ...]:
        return ACTIVE_SETS[self.model_id]


def gen_ar_gaussian(n: int, p: int, rho: float, stream: np.random.Generator) -> DataMatrix:
    """n i.i.d. rows from N(0, Sigma) with sigma_ij = rho^|i-j|."""
    if not abs(rho) < 1:
        raise ValueError(f"need |rho| < 1, got {rho}")
    w = stream.standard_normal((p, n))
    s = math.sqrt(1.0 - rho * rho)
    for j in range(1, p):
        w[j] = rho * w[j - 1] + s * w[j]
    return DataMatrix(w.T)


def gen_t1(n: int, p: int, rho: float, stream: np.random.Generator) -> DataMatrix:
    """Multivariate t_1 rows: N(0, Sigma) divided by sqrt(chi^2_1), per row."""
    if not abs(rho) < 1:
        raise ValueError(f"need |rho| < 1, got {rho}")
    w = stream.standard_normal((p, n))
    s = math.sqrt(1.0 - rho * rho)
    for j in range(1, p):
        w[j] = rho * w[j - 1] + s * w[j]
    w /= np.sqrt(stream.chisquare(1.0, size=n))[None, :]
    return DataMatrix(w.T)


def _poisson_counts(rate: np.ndarray, stream: np.random.Generator) -> np.ndarray:
    out = np.empty(rate.size)
    small = rate <= POISSON_EXACT_MAX
    if small.any():
        out[small] = stream.poisson(rate[small])
    if (~small).any():
        lam = rate[~small]
        z = stream.standard_normal(lam.size)
        out[~small] = np.maximum(np.rint(lam + np.sqrt(lam) * z), 0.0)
    return out


def gen_response(spec: SimModelSpec, X: DataMatrix, stream: np.random.Generator) -> ResponseVector:
    """Evaluate the model's response formula rowwise with fresh noise.

    Noise is drawn first, then any count sampling, so the draw order is fixed.
    Raises SimulationError if any response value is non-finite (e.g. the
    probability-zero X_2 = 0 pole in model 2b).
    """
    if X.n != spec.n or X.p != spec.p:
        raise ValueError(f"X is {X.n} x {X.p} but spec says {spec.n} x {spec.p}")
    c = X.column
    mid = spec.model_id
    eps = stream.standard_cauchy(X.n) if mid == "1b" else stream.standard_normal(X.n)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if mid in ("1a", "1b"):
            y = c(0) + c(1) + c(2) + c(3) + c(4) + eps
        elif mid == "1c":
            y = np.exp(2.0 * (c(0) + c(1) + c(2) + c(3) + c(4))) + eps
        elif mid == "1d":
            rate = np.exp(2.0 * (c(0) + c(1) + c(2) + c(3) + c(4)) + eps)
            y = _poisson_counts(rate, stream)
        elif mid == "2a":
            y = 5.0 * c(0) + 2.0 * np.sin(np.pi * c(1) / 2.0) + 2.0 * c(2) * (c(2) > 0) + 2.0 * np.exp(5.0 * c(3)) + eps
        elif mid == "2b":
            y = 2.0 * c(1) ** -2.0 + 4.0 * c(1) ** 3 + 3.0 * np.cos(c(2)) + 10.0 * (c(3) > 0) + eps
        elif mid == "2c":
            y = 1.0 - 5.0 * (c(1) + c(2)) ** 3 * np.exp(-5.0 * (c(0) + c(3) ** 3)) + eps
        elif mid == "2d":
            y = 1.0 - 5.0 * (c(1) + c(2)) ** -3.0 * np.exp(1.0 + 10.0 * np.sin(np.pi * c(0) / 2.0) + 5.0 * c(3)) + eps
        else:  # 2e, heteroscedastic: the noise sits inside the exponential
            y = np.cos(c(0)) + c(1) + np.exp(2.0 * c(1) + 2.0 * c(2) + eps)
    bad = np.flatnonzero(~np.isfinite(y))
    if bad.size:
        raise SimulationError(f"model {mid} produced a non-finite response at row {bad[0]} (and {bad.size - 1} more)")
    return ResponseVector(y)


def make_dataset(spec: SimModelSpec) -> tuple[DataMatrix, ResponseVector]:
    """Generate (X, y) for a benchmark spec; fully determined by spec.seed."""
    xs = derive_stream(spec.seed, StreamPurpose.PREDICTORS)
    noise = derive_stream(spec.seed, StreamPurpose.NOISE)
    gen = gen_t1 if spec.model_id == "1b" else gen_ar_gaussian
    X = gen(spec.n, spec.p, spec.rho, xs)
    names = tuple(f"x{j + 1}" for j in range(spec.p))
    X = DataMatrix(X.values, names=names)
    return X, gen_response(spec, X, noise)
