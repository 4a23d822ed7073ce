"""Replicate runner and evaluation metrics for the synthetic benchmarks.

Criteria follow the usual screening conventions: S is the distribution
(reported as quantiles) of the minimum model size that covers the active set,
and P_d is the fraction of replicates whose top-d set covers it, evaluated at
d1 = floor(n/ln n), d2 = 2 d1, d3 = 3 d1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from time import perf_counter
from typing import Iterable, Mapping, Sequence

import numpy as np

from .bandit import bandit_cr_sis, full_ranking
from .baselines import dc_sis, dcor_scores, pearson_scores, sis
from .core import (
    BanditConfig,
    DataMatrix,
    ResponseVector,
    ScreenConfig,
    SeedSpec,
    StreamPurpose,
    default_model_size,
    derive_seed,
)
from .rankstat import batch_omega
from .screen import cr_sis, rank_features
from .simgen import SimModelSpec, make_dataset

S_LEVELS = (0.05, 0.25, 0.50, 0.75, 0.95)

METHOD_KINDS = ("cr-sis", "bandit-cr-sis", "sis", "dc-sis")


@dataclass(frozen=True)
class MethodSpec:
    """A screener to benchmark; alpha0 applies to bandit-cr-sis only."""

    kind: str
    alpha0: float | None = None

    def __post_init__(self):
        if self.kind not in METHOD_KINDS:
            raise ValueError(f"unknown method {self.kind!r}; pick one of {', '.join(METHOD_KINDS)}")
        if self.kind == "bandit-cr-sis":
            if self.alpha0 is None:
                object.__setattr__(self, "alpha0", 0.35)
            elif self.alpha0 < 0:
                raise ValueError(f"need alpha0 >= 0, got {self.alpha0}")
        elif self.alpha0 is not None:
            raise ValueError(f"alpha0 does not apply to {self.kind}")

    @property
    def label(self) -> str:
        if self.kind == "bandit-cr-sis":
            return f"bandit-cr-sis(alpha0={self.alpha0:g})"
        return self.kind


def minimum_size_from_ranking(ranking: Sequence[int], active: Iterable[int]) -> int:
    """Smallest d whose top-d prefix of the ranking covers the active set."""
    position = {j: i + 1 for i, j in enumerate(ranking)}
    try:
        return max(position[a] for a in active)
    except KeyError as exc:
        raise ValueError(f"active feature {exc.args[0]} is not in the ranking") from None


def minimum_model_size(scores: Mapping[int, float], active: Iterable[int]) -> int:
    """Rank of the worst-ranked active feature (1-based) under the scores."""
    active = list(active)
    if not active:
        raise ValueError("active set is empty")
    missing = [a for a in active if a not in scores]
    if missing:
        raise ValueError(f"active features without scores: {missing}")
    return minimum_size_from_ranking(rank_features(scores), active)


def quantiles(values: Sequence[float], probs: Sequence[float] = S_LEVELS) -> list[float]:
    """Empirical quantiles with linear interpolation between order statistics."""
    if len(values) == 0:
        raise ValueError("no values to take quantiles of")
    return [float(q) for q in np.quantile(np.asarray(values, dtype=np.float64), probs, method="linear")]


def selection_proportion(min_sizes: Sequence[int], d: int) -> float:
    """Fraction of replicates whose minimum model size is at most d."""
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    if len(min_sizes) == 0:
        return 0.0
    return sum(1 for s in min_sizes if s <= d) / len(min_sizes)


@dataclass(frozen=True)
class MethodReport:
    method: str
    min_sizes: tuple[int, ...]
    s_quantiles: tuple[float, ...]
    p_at: tuple[float, ...]
    mean_seconds: float | None = None
    stderr_seconds: float | None = None


@dataclass(frozen=True)
class BenchReport:
    model_id: str
    n: int
    p: int
    rho: float
    replicates: int
    d_grid: tuple[int, int, int]
    methods: tuple[MethodReport, ...]

    def to_dict(self) -> dict:
        return {
            "model_id": self.model_id,
            "n": self.n,
            "p": self.p,
            "rho": self.rho,
            "replicates": self.replicates,
            "d_grid": list(self.d_grid),
            "methods": [
                {
                    "method": m.method,
                    "min_sizes": list(m.min_sizes),
                    "s_quantiles": list(m.s_quantiles),
                    "p_at": list(m.p_at),
                    "mean_seconds": m.mean_seconds,
                    "stderr_seconds": m.stderr_seconds,
                }
                for m in self.methods
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BenchReport":
        return cls(
            model_id=d["model_id"],
            n=d["n"],
            p=d["p"],
            rho=d["rho"],
            replicates=d["replicates"],
            d_grid=tuple(d["d_grid"]),
            methods=tuple(
                MethodReport(
                    method=m["method"],
                    min_sizes=tuple(m["min_sizes"]),
                    s_quantiles=tuple(m["s_quantiles"]),
                    p_at=tuple(m["p_at"]),
                    mean_seconds=m["mean_seconds"],
                    stderr_seconds=m["stderr_seconds"],
                )
                for m in d["methods"]
            ),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "BenchReport":
        return cls.from_dict(json.loads(text))

    def render_table(self) -> str:
        """Aligned text table: S-quantile columns, then P columns (percent)."""
        d1, d2, d3 = self.d_grid
        header = f"{'method':<30}" + "".join(f"{c:>9}" for c in ("5%", "25%", "50%", "75%", "95%"))
        header += "".join(f"{c:>9}" for c in (f"P_{d1}", f"P_{d2}", f"P_{d3}"))
        lines = [
            f"model {self.model_id}   n={self.n}  p={self.p}  rho={self.rho:g}  replicates={self.replicates}",
            header,
        ]
        for m in self.methods:
            cells = "".join(f"{q:>9.1f}" for q in m.s_quantiles)
            cells += "".join(f"{100.0 * v:>9.1f}" for v in m.p_at)
            lines.append(f"{m.method:<30}" + cells)
        return "\n".join(lines)


def _full_ranking_for(
    method: MethodSpec,
    data: DataMatrix,
    y: ResponseVector,
    bandit_d: int,
    seed: SeedSpec,
    workers: int,
) -> list[int]:
    if method.kind == "cr-sis":
        return rank_features(batch_omega(data, y, range(data.p), rows=data.n, seed=seed, workers=workers))
    if method.kind == "sis":
        return rank_features(pearson_scores(data, y))
    if method.kind == "dc-sis":
        return rank_features(dcor_scores(data, y))
    cfg = BanditConfig(seed=seed, d=min(bandit_d, data.p), alpha0=method.alpha0)
    return full_ranking(bandit_cr_sis(data, y, cfg, workers=workers))


def run_replicates(
    spec: SimModelSpec,
    methods: Sequence[MethodSpec],
    replicates: int,
    base_seed: SeedSpec,
    time_methods: bool = False,
    workers: int = 1,
    bandit_d: int | None = None,
) -> BenchReport:
    """Benchmark the given screeners over seeded replicates of one model.

    Every method inside a replicate sees the same generated data; replicate
    seeds derive from (base_seed, replicate index), so reports reproduce
    exactly. Eliminate-style methods run toward bandit_d (default d1) and are
    evaluated through their elimination-order ranking.
    """
    if replicates < 1:
        raise ValueError(f"need replicates >= 1, got {replicates}")
    if not methods:
        raise ValueError("no methods requested")
    d1 = default_model_size(spec.n)
    d_grid = (d1, 2 * d1, 3 * d1)
    target_d = d1 if bandit_d is None else bandit_d

    sizes: dict[str, list[int]] = {m.label: [] for m in methods}
    times: dict[str, list[float]] = {m.label: [] for m in methods}
    for r in range(replicates):
        rseed = derive_seed(base_seed, StreamPurpose.REPLICATE, r)
        data, y = make_dataset(replace(spec, seed=rseed))
        for m in methods:
            t0 = perf_counter()
            ranking = _full_ranking_for(m, data, y, target_d, rseed, workers)
            elapsed = perf_counter() - t0
            sizes[m.label].append(minimum_size_from_ranking(ranking, spec.active_set))
            times[m.label].append(elapsed)

    reports = []
    for m in methods:
        ms = sizes[m.label]
        mean_s = stderr_s = None
        if time_methods:
            ts = np.asarray(times[m.label])
            mean_s = float(ts.mean())
            stderr_s = float(ts.std(ddof=1) / np.sqrt(ts.size)) if ts.size > 1 else 0.0
        reports.append(
            MethodReport(
                method=m.label,
                min_sizes=tuple(ms),
                s_quantiles=tuple(quantiles(ms, S_LEVELS)),
                p_at=tuple(selection_proportion(ms, d) for d in d_grid),
                mean_seconds=mean_s,
                stderr_seconds=stderr_s,
            )
        )
    return BenchReport(
        model_id=spec.model_id,
        n=spec.n,
        p=spec.p,
        rho=spec.rho,
        replicates=replicates,
        d_grid=d_grid,
        methods=tuple(reports),
    )


@dataclass(frozen=True)
class TimingRow:
    method: str
    axis_value: int
    seconds: tuple[float, ...]

    @property
    def mean_seconds(self) -> float:
        return float(np.mean(self.seconds))

    @property
    def stderr_seconds(self) -> float:
        arr = np.asarray(self.seconds)
        return float(arr.std(ddof=1) / np.sqrt(arr.size)) if arr.size > 1 else 0.0

    @property
    def median_seconds(self) -> float:
        return float(np.median(self.seconds))


@dataclass(frozen=True)
class TimingReport:
    axis: str
    fixed: int
    d: int
    repeats: int
    rows: tuple[TimingRow, ...]

    def slopes(self) -> dict[str, float | None]:
        """Log-log slope of mean wall time against the swept axis, per method."""
        out: dict[str, float | None] = {}
        for method in dict.fromkeys(r.method for r in self.rows):
            pts = [(r.axis_value, r.mean_seconds) for r in self.rows if r.method == method]
            if len(pts) < 2:
                out[method] = None
            else:
                xs = np.log([v for v, _ in pts])
                ys = np.log([max(t, 1e-12) for _, t in pts])
                out[method] = float(np.polyfit(xs, ys, 1)[0])
        return out


def _run_screen(method: MethodSpec, data: DataMatrix, y: ResponseVector, d: int, seed: SeedSpec, workers: int):
    if method.kind == "cr-sis":
        return cr_sis(data, y, ScreenConfig(seed=seed, mode="hard", d=min(d, data.p)), workers=workers)
    if method.kind == "bandit-cr-sis":
        return bandit_cr_sis(data, y, BanditConfig(seed=seed, d=min(d, data.p), alpha0=method.alpha0), workers=workers)
    if method.kind == "sis":
        return sis(data, y, d)
    return dc_sis(data, y, d)


def timing_sweep(
    axis: str,
    grid: Sequence[int],
    fixed: int,
    d: int,
    methods: Sequence[MethodSpec],
    repeats: int,
    base_seed: SeedSpec = SeedSpec(0),
    model_id: str = "1a",
    rho: float = 0.5,
    workers: int = 1,
) -> TimingReport:
    """Wall-clock sweep of screening time along an n- or p-grid.

    One dataset per grid point (same for every method); only the screening
    call is timed, one run at a time. Timing values are hardware-dependent;
    compare ratios and slopes, not absolute seconds.
    """
    if axis not in ("n", "p"):
        raise ValueError(f"axis must be 'n' or 'p', got {axis!r}")
    if not grid:
        raise ValueError("empty grid")
    if repeats < 1:
        raise ValueError(f"need repeats >= 1, got {repeats}")
    rows = []
    for gi, g in enumerate(grid):
        n, p = (int(g), fixed) if axis == "n" else (fixed, int(g))
        data_seed = derive_seed(base_seed, StreamPurpose.TIMING, 2 * gi)
        screen_seed = derive_seed(base_seed, StreamPurpose.TIMING, 2 * gi + 1)
        data, y = make_dataset(SimModelSpec(model_id, n=n, p=p, rho=rho, seed=data_seed))
        for m in methods:
            secs = []
            for _ in range(repeats):
                t0 = perf_counter()
                _run_screen(m, data, y, d, screen_seed, workers)
                secs.append(perf_counter() - t0)
            rows.append(TimingRow(method=m.label, axis_value=int(g), seconds=tuple(secs)))
    return TimingReport(axis=axis, fixed=fixed, d=d, repeats=repeats, rows=tuple(rows))
