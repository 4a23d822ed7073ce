"""Chatterjee's rank correlation and the screening statistic built on it.

Both statistics reduce to integer rank sums over the response reordered by
each feature column: with r_i the number of responses <= the i-th (in feature
order) and l_i the number >= it,

    omega = sum l_i (n - l_i) / n^3  -  sum |r_{i+1} - r_i| / (2 n^2)
            + (r_n - r_1) / (2 n^2)
    xi    = 1  -  n * sum |r_{i+1} - r_i| / (2 * sum l_i (n - l_i))

The l-sum does not depend on the feature, so it is computed once per response
(prefix) and shared across all columns. All sums are accumulated in exact
integer arithmetic and combined with a single floating division.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .core import MAX_RANK_SAMPLES, DataMatrix, ResponseVector, SeedSpec, StreamPurpose, derive_stream

# Column chunk sizing for the vectorized scorer: bounds temporaries to a few
# tens of MB regardless of the sample size.
_CHUNK_ELEMENTS = 4_000_000

# Above this the combined integer numerator can leave int64 range; fall back
# to float64 combination (the quantities exceed 2^53 there anyway).
_EXACT_NUMERATOR_MAX_N = 2_000_000


class ConstantResponseError(ValueError):
    """Raised when xi is requested for a constant response (zero denominator)."""


@dataclass(frozen=True)
class YRanks:
    """Response ranks shared by every feature: r counts <=, l counts >=."""

    r_global: np.ndarray
    l_global: np.ndarray
    sum_l_term: int
    n: int


@dataclass(frozen=True)
class RankProfile:
    """Feature-order permutation and the y-ranks rearranged into it."""

    order: np.ndarray
    r_perm: np.ndarray


def compute_y_ranks(y: ResponseVector | np.ndarray) -> YRanks:
    """Rank the response once: r_i = #{y_k <= y_i}, l_i = #{y_k >= y_i}.

    O(n log n) via one sort; the l-sum is exact integer arithmetic.
    """
    arr = np.asarray(getattr(y, "values", y), dtype=np.float64)
    n = arr.size
    if n < 2:
        raise ValueError(f"need at least 2 response values, got {n}")
    if n > MAX_RANK_SAMPLES:
        raise ValueError(f"n = {n} exceeds the supported maximum of {MAX_RANK_SAMPLES}")
    ys = np.sort(arr)
    r = np.searchsorted(ys, arr, side="right").astype(np.int64)
    l = n - np.searchsorted(ys, arr, side="left").astype(np.int64)
    lu = l.astype(np.uint64)
    sum_l = int((lu * (np.uint64(n) - lu)).sum(dtype=np.uint64))
    return YRanks(r_global=r, l_global=l, sum_l_term=sum_l, n=n)


def argsort_random_ties(x: np.ndarray, stream: np.random.Generator) -> np.ndarray:
    """Ascending argsort of x with tied blocks permuted uniformly at random.

    Tie-free input never touches the stream, so it stays deterministic.
    """
    x = np.asarray(x)
    order = np.argsort(x, kind="stable")
    xs = x[order]
    if not (xs[1:] == xs[:-1]).any():
        return order
    starts = np.concatenate(([0], np.flatnonzero(np.diff(xs) != 0) + 1, [x.size]))
    for a, b in zip(starts[:-1], starts[1:]):
        if b - a > 1:
            stream.shuffle(order[a:b])
    return order


def rank_profile(x: np.ndarray, yr: YRanks, stream: np.random.Generator) -> RankProfile:
    """Sort x (random tie-break) and carry the y-ranks along."""
    if len(x) != yr.n:
        raise ValueError(f"feature has {len(x)} rows but ranks cover {yr.n}")
    order = argsort_random_ties(x, stream)
    return RankProfile(order=order, r_perm=yr.r_global[order])


def _omega_scalar(r_perm: np.ndarray, sum_l_term: int, n: int) -> float:
    jumps = int(np.abs(np.diff(r_perm)).sum())
    num = 2 * sum_l_term - n * jumps + n * (int(r_perm[-1]) - int(r_perm[0]))
    return num / (2 * n**3)


def _omega_columns(rank_matrix: np.ndarray, sum_l_term: int, n: int) -> np.ndarray:
    jumps = np.abs(np.diff(rank_matrix, axis=0)).sum(axis=0)
    span = rank_matrix[-1, :] - rank_matrix[0, :]
    if n <= _EXACT_NUMERATOR_MAX_N:
        num = 2 * sum_l_term - n * jumps + n * span
    else:
        num = 2.0 * float(sum_l_term) - float(n) * jumps + float(n) * span
    return num / float(2 * n**3)


def chatterjee_omega(x: np.ndarray, yr: YRanks, stream: np.random.Generator) -> float:
    """Screening statistic omega-hat of one feature column against yr."""
    prof = rank_profile(x, yr, stream)
    return _omega_scalar(prof.r_perm, yr.sum_l_term, yr.n)


def chatterjee_xi(x: np.ndarray, yr: YRanks, stream: np.random.Generator) -> float:
    """Chatterjee's rank correlation xi-hat of one feature column against yr."""
    if yr.sum_l_term == 0:
        raise ConstantResponseError("xi is undefined for a constant response")
    prof = rank_profile(x, yr, stream)
    jumps = int(np.abs(np.diff(prof.r_perm)).sum())
    return (2 * yr.sum_l_term - yr.n * jumps) / (2 * yr.sum_l_term)


def _score_chunk(
    values: np.ndarray,
    rows: int,
    feats: list[int],
    yr: YRanks,
    seed: SeedSpec,
    round_index: int,
) -> dict[int, float]:
    m, k = rows, len(feats)
    xsub = np.empty((m, k), dtype=np.float64, order="F")
    for i, j in enumerate(feats):
        xsub[:, i] = values[:m, j]
    order = np.argsort(xsub, axis=0)
    xs = np.take_along_axis(xsub, order, axis=0)
    tied = (xs[1:] == xs[:-1]).any(axis=0)
    omg = _omega_columns(yr.r_global[order], yr.sum_l_term, yr.n)
    out = {}
    for i, j in enumerate(feats):
        if tied[i]:
            stream = derive_stream(seed, StreamPurpose.TIEBREAK, feature=j, round_index=round_index)
            out[j] = chatterjee_omega(xsub[:, i], yr, stream)
        else:
            out[j] = float(omg[i])
    return out


def batch_omega(
    data: DataMatrix,
    y: ResponseVector,
    features: Iterable[int],
    rows: int,
    seed: SeedSpec,
    round_index: int = 0,
    workers: int = 1,
) -> dict[int, float]:
    """omega-hat for many features on the first `rows` rows.

    Response ranks are computed once and shared; tie-free columns run through
    a vectorized kernel, tied columns fall back to per-feature streams derived
    from (seed, feature, round), so the result is independent of iteration
    order and worker count.
    """
    feats = [int(j) for j in features]
    if not feats:
        raise ValueError("no features requested")
    if not 2 <= rows <= data.n:
        raise ValueError(f"rows must be in [2, {data.n}], got {rows}")
    if y.n != data.n:
        raise ValueError(f"response has {y.n} rows but data has {data.n}")
    bad = [j for j in feats if not 0 <= j < data.p]
    if bad:
        raise ValueError(f"feature indices out of range: {bad[:5]}")

    yr = compute_y_ranks(y.values[:rows])
    step = max(1, _CHUNK_ELEMENTS // rows)
    chunks = [feats[i : i + step] for i in range(0, len(feats), step)]

    scored: dict[int, float] = {}
    if workers <= 1 or len(chunks) == 1:
        for chunk in chunks:
            scored.update(_score_chunk(data.values, rows, chunk, yr, seed, round_index))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_score_chunk, data.values, rows, chunk, yr, seed, round_index) for chunk in chunks]
            for fut in futures:
                scored.update(fut.result())
    return {j: scored[j] for j in feats}
