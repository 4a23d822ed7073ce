"""Full-sample screening: score every feature, keep the top of the ranking.

Selection is either hard (the d largest scores) or soft (scores at least
c * n**(-kappa)). Exact score ties rank the smaller feature index first, so
results are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Mapping

from .core import DataMatrix, ResponseVector, ScreenConfig, default_model_size
from .rankstat import batch_omega

if TYPE_CHECKING:  # pragma: no cover
    from .bandit import BanditRound


@dataclass(frozen=True)
class ScreenResult:
    """Scores, the induced ranking, and the selected feature subset.

    For subsample-and-eliminate runs, scores/ranking cover the features still
    alive in the final round and trace holds the per-round records; for plain
    screening the trace is empty.
    """

    scores: dict[int, float]
    ranking: tuple[int, ...]
    selected: tuple[int, ...]
    trace: tuple["BanditRound", ...] = field(default=())


def rank_features(scores: Mapping[int, float]) -> list[int]:
    """Feature indices by descending score; ties take the smaller index first."""
    if not scores:
        raise ValueError("no scores to rank")
    for j, s in scores.items():
        if math.isnan(s):
            raise ValueError(f"feature {j} has NaN score")
    return sorted(scores, key=lambda j: (-scores[j], j))


def soft_threshold(scores: Mapping[int, float], c: float, kappa: float, n: int) -> list[int]:
    """Features with score >= c * n**(-kappa), in ranking order (may be empty)."""
    if c <= 0:
        raise ValueError(f"need c > 0, got {c}")
    if kappa < 0:
        raise ValueError(f"need kappa >= 0, got {kappa}")
    cut = c * n ** (-kappa)
    return [j for j in rank_features(scores) if scores[j] >= cut]


def cr_sis(data: DataMatrix, y: ResponseVector, cfg: ScreenConfig, workers: int = 1) -> ScreenResult:
    """Score all p features on the full sample and select per cfg.

    A constant response is allowed: every score is 0 and hard selection
    degenerates to the first d indices.
    """
    scores = batch_omega(data, y, range(data.p), rows=data.n, seed=cfg.seed, workers=workers)
    ranking = rank_features(scores)
    if cfg.mode == "hard":
        d = cfg.d if cfg.d is not None else default_model_size(data.n)
        selected = tuple(ranking[: min(d, data.p)])
    else:
        selected = tuple(soft_threshold(scores, cfg.c, cfg.kappa, data.n))
    return ScreenResult(scores=scores, ranking=tuple(ranking), selected=selected)
