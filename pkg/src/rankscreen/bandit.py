"""Subsample-and-eliminate screening.

Shuffle the rows once, then alternate between re-scoring the surviving
features on a growing prefix of the shuffled sample and discarding the worse
half (keeping floor((p_cur + d) / 2)) until exactly d features remain. The
prefix sizes follow the subsample schedule t(n, alpha) with alpha shrinking
by a fixed factor each round, so total scoring work stays near
sqrt(n) * log(n) * p instead of n * log(n) * p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import BanditConfig, DataMatrix, ResponseVector, SeedSpec, StreamPurpose, default_model_size, derive_stream
from .rankstat import batch_omega
from .screen import ScreenResult, rank_features


@dataclass(frozen=True)
class BanditRound:
    """One elimination round: features kept/dropped, in that round's score order."""

    round_index: int
    alpha: float
    n_rows: int
    kept: tuple[int, ...]
    dropped: tuple[int, ...]

    @property
    def p_surviving(self) -> int:
        return len(self.kept)


BanditTrace = tuple[BanditRound, ...]


def subsample_size(n: int, alpha: float) -> int:
    """Cumulative subsample size t(n, alpha) = n(a^2+1)/(a^2 sqrt(n)+1).

    alpha=0 gives the full sample; large alpha approaches sqrt(n). Rounded up
    and clamped to [2, n] (to [1, 1] when n == 1).
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if alpha < 0:
        raise ValueError(f"need alpha >= 0, got {alpha}")
    a2 = alpha * alpha
    t = n * (a2 + 1.0) / (a2 * math.sqrt(n) + 1.0)
    size = min(n, math.ceil(t))
    return max(2, size) if n >= 2 else size


def alpha_schedule(alpha0: float, round_index: int, eta: float = 1.1) -> float:
    """alpha used in the given 1-based round: alpha0 / eta**(round-1)."""
    if round_index < 1:
        raise ValueError(f"rounds are 1-based, got {round_index}")
    if not eta > 1:
        raise ValueError(f"need eta > 1, got {eta}")
    return alpha0 / eta ** (round_index - 1)


def median_keep_count(p_cur: int, d: int) -> int:
    """How many features survive a round: floor((p_cur + d) / 2)."""
    if d < 1 or p_cur <= d:
        raise ValueError(f"need p_cur > d >= 1, got p_cur={p_cur}, d={d}")
    return (p_cur + d) // 2


def shuffle_rows(data: DataMatrix, y: ResponseVector, seed: SeedSpec) -> tuple[DataMatrix, ResponseVector]:
    """One joint random row permutation of the predictors and the response."""
    perm = derive_stream(seed, StreamPurpose.SHUFFLE).permutation(data.n)
    out = np.empty_like(data.values)
    for j in range(data.p):  # column-wise gather keeps peak memory at one copy
        out[:, j] = data.values[perm, j]
    return DataMatrix(out, names=data.names), ResponseVector(y.values[perm])


def bandit_cr_sis(data: DataMatrix, y: ResponseVector, cfg: BanditConfig, workers: int = 1) -> ScreenResult:
    """Run the subsample-and-eliminate screener down to d features.

    Round l re-scores the survivors on the first t(n, alpha0/eta**(l-1)) rows
    of the shuffled sample. The result's scores/ranking describe the final
    round; the trace records every round. If d >= p there is nothing to
    eliminate: all features are selected, no scoring happens, and the trace
    is empty.
    """
    n, p = data.n, data.p
    d = cfg.d if cfg.d is not None else default_model_size(n)
    if d >= p:
        everything = tuple(range(p))
        return ScreenResult(scores={}, ranking=everything, selected=everything, trace=())

    sdata, sy = shuffle_rows(data, y, cfg.seed)
    surviving = list(range(p))
    trace: list[BanditRound] = []
    scores: dict[int, float] = {}
    ranked: list[int] = []
    round_index = 1
    while len(surviving) > d:
        alpha = alpha_schedule(cfg.alpha0, round_index, cfg.eta)
        n_rows = subsample_size(n, alpha)
        scores = batch_omega(sdata, sy, surviving, rows=n_rows, seed=cfg.seed, round_index=round_index, workers=workers)
        ranked = rank_features(scores)
        keep = median_keep_count(len(surviving), d)
        rec = BanditRound(
            round_index=round_index,
            alpha=alpha,
            n_rows=n_rows,
            kept=tuple(ranked[:keep]),
            dropped=tuple(ranked[keep:]),
        )
        trace.append(rec)
        surviving = list(rec.kept)
        round_index += 1

    return ScreenResult(
        scores=scores,
        ranking=tuple(ranked),
        selected=tuple(surviving),
        trace=tuple(trace),
    )


def full_ranking(result: ScreenResult) -> list[int]:
    """Complete feature ordering implied by an eliminate-style run.

    The final round's ranking comes first, then each earlier round's dropped
    features, most recently dropped first (features that lasted longer rank
    higher). The first len(selected) entries equal the selected set.
    """
    ranking = list(result.ranking)
    for rec in reversed(result.trace[:-1]):
        ranking.extend(rec.dropped)
    return ranking
