"""Comparator screeners: Pearson-correlation ranking and a naive
distance-correlation ranking (O(n^2) per feature, adequate at desk scale)."""

from __future__ import annotations

import numpy as np

from .core import DataMatrix, ResponseVector
from .screen import ScreenResult, rank_features


def pearson_scores(data: DataMatrix, y: ResponseVector) -> dict[int, float]:
    """Absolute sample Pearson correlation per feature.

    A zero-variance feature or a constant response scores 0 by convention, so
    screening never fails on degenerate columns.
    """
    yc = y.values - y.values.mean()
    syy = float(yc @ yc)
    out = {}
    for j in range(data.p):
        col = data.column(j)
        xc = col - col.mean()
        sxx = float(xc @ xc)
        if sxx <= 0.0 or syy <= 0.0:
            out[j] = 0.0
        else:
            out[j] = min(1.0, abs(float(xc @ yc)) / np.sqrt(sxx * syy))
    return out


def _centered_distances(v: np.ndarray) -> np.ndarray:
    d = np.abs(v[:, None] - v[None, :])
    mean = d.mean()
    if mean > 0:  # dCor is scale-invariant; rescaling keeps the squares finite
        d /= mean
    return d - d.mean(axis=0)[None, :] - d.mean(axis=1)[:, None] + d.mean()


def dcor_scores(data: DataMatrix, y: ResponseVector) -> dict[int, float]:
    """Squared distance correlation per feature via explicit double centering.

    O(n^2) work and memory per feature. Zero distance variance on either side
    scores 0; results are clamped to [0, 1].
    """
    b = _centered_distances(y.values)
    dvar_y = float((b * b).mean())
    if dvar_y <= 0.0:
        return {j: 0.0 for j in range(data.p)}
    out = {}
    for j in range(data.p):
        a = _centered_distances(data.column(j))
        dvar_x = float((a * a).mean())
        if dvar_x <= 0.0:
            out[j] = 0.0
        else:
            dcov = float((a * b).mean())
            out[j] = min(1.0, max(0.0, dcov / np.sqrt(dvar_x * dvar_y)))
    return out


def _hard_select(scores: dict[int, float], d: int, p: int) -> ScreenResult:
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    ranking = rank_features(scores)
    return ScreenResult(scores=scores, ranking=tuple(ranking), selected=tuple(ranking[: min(d, p)]))


def sis(data: DataMatrix, y: ResponseVector, d: int) -> ScreenResult:
    """Keep the d features with the largest absolute Pearson correlation."""
    return _hard_select(pearson_scores(data, y), d, data.p)


def dc_sis(data: DataMatrix, y: ResponseVector, d: int) -> ScreenResult:
    """Keep the d features with the largest squared distance correlation."""
    return _hard_select(dcor_scores(data, y), d, data.p)
