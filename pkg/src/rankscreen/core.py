"""Shared data model, deterministic stream derivation, and run configuration."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

# Rank sums accumulate sum_i l_i*(n - l_i) <= n^3/4 in 64-bit integers; the
# cap keeps that bound (and every intermediate product) inside uint64 range.
MAX_RANK_SAMPLES = 3_000_000


class StreamPurpose(IntEnum):
    """Tags separating the independent random streams derived from one seed."""

    TIEBREAK = 1
    SHUFFLE = 2
    PREDICTORS = 3
    NOISE = 4
    REPLICATE = 5
    TIMING = 6


@dataclass(frozen=True)
class SeedSpec:
    """A single 64-bit seed from which all randomness is derived."""

    global_seed: int = 0

    def __post_init__(self):
        if not 0 <= int(self.global_seed) < 2**64:
            raise ValueError(f"global_seed must be a 64-bit unsigned integer, got {self.global_seed}")


def derive_stream(seed: SeedSpec, purpose: int, feature: int = 0, round_index: int = 0) -> np.random.Generator:
    """Derive an independent random stream for (seed, purpose, feature, round).

    Counter-based construction (Philox keyed through a spawn key), so the
    stream is a pure function of its arguments and unrelated streams can be
    consumed in any order, including concurrently.
    """
    ss = np.random.SeedSequence(seed.global_seed, spawn_key=(int(purpose), int(feature), int(round_index)))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed: SeedSpec, purpose: int, index: int) -> SeedSpec:
    """Derive a child SeedSpec, e.g. one per benchmark replicate."""
    ss = np.random.SeedSequence(seed.global_seed, spawn_key=(int(purpose), int(index)))
    return SeedSpec(int(ss.generate_state(1, np.uint64)[0]))


def default_model_size(n: int) -> int:
    """Default number of retained features, floor(n / ln n)."""
    if n < 3:
        raise ValueError(f"default model size needs n >= 3, got {n}")
    return int(n / math.log(n))


@dataclass(frozen=True)
class DataMatrix:
    """An n x p predictor matrix with contiguous (Fortran-order) columns.

    Values are validated to be finite; n >= 2 and p >= 1. Immutable after
    construction and safe to share across workers.
    """

    values: np.ndarray
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError(f"predictor matrix must be 2-d, got shape {arr.shape}")
        n, p = arr.shape
        if n < 2 or p < 1:
            raise ValueError(f"need n >= 2 rows and p >= 1 columns, got {n} x {p}")
        if n > MAX_RANK_SAMPLES:
            raise ValueError(f"n = {n} exceeds the supported maximum of {MAX_RANK_SAMPLES} rows")
        if not np.isfinite(arr).all():
            raise ValueError("predictor matrix contains non-finite values")
        object.__setattr__(self, "values", np.asfortranarray(arr))
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != p:
                raise ValueError(f"got {len(names)} column names for {p} columns")
            object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]

    def column(self, j: int) -> np.ndarray:
        """Contiguous view of feature column j (0-based)."""
        return self.values[:, j]


@dataclass(frozen=True)
class ResponseVector:
    """A length-n response. Constant responses are allowed here; the xi
    estimator rejects them at evaluation time."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError(f"response must be 1-d, got shape {arr.shape}")
        if arr.size < 2:
            raise ValueError(f"response needs at least 2 values, got {arr.size}")
        if not np.isfinite(arr).all():
            raise ValueError("response contains non-finite values")
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class ScreenConfig:
    """Selection rule for full-sample screening.

    mode "hard" keeps the d top-scored features (d=None means floor(n/ln n));
    mode "soft" keeps features with score >= c * n**(-kappa).
    """

    seed: SeedSpec = SeedSpec(0)
    mode: str = "hard"
    d: int | None = None
    c: float | None = None
    kappa: float | None = None

    def __post_init__(self):
        if self.mode == "hard":
            if self.d is not None and self.d < 1:
                raise ValueError(f"hard mode needs d >= 1, got {self.d}")
            if self.c is not None or self.kappa is not None:
                raise ValueError("c/kappa only apply to soft mode")
        elif self.mode == "soft":
            if self.c is None or self.kappa is None:
                raise ValueError("soft mode needs both c and kappa")
            if self.c <= 0:
                raise ValueError(f"soft threshold needs c > 0, got {self.c}")
            if not 0 < self.kappa < 0.25:
                raise ValueError(f"soft threshold needs 0 < kappa < 1/4, got {self.kappa}")
            if self.d is not None:
                raise ValueError("d only applies to hard mode")
        else:
            raise ValueError(f"unknown screening mode {self.mode!r}")


@dataclass(frozen=True)
class BanditConfig:
    """Configuration of the subsample-and-eliminate screener.

    alpha0 trades speed for accuracy (0 means every round uses the full
    sample); eta > 1 is the per-round divisor shrinking alpha. d=None means
    floor(n / ln n).
    """

    seed: SeedSpec = SeedSpec(0)
    d: int | None = None
    alpha0: float = 0.35
    eta: float = 1.1

    def __post_init__(self):
        if self.d is not None and self.d < 1:
            raise ValueError(f"need d >= 1, got {self.d}")
        if self.alpha0 < 0:
            raise ValueError(f"need alpha0 >= 0, got {self.alpha0}")
        if not self.eta > 1:
            raise ValueError(f"need eta > 1, got {self.eta}")
