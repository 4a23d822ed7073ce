"""Feature screening by Chatterjee's rank correlation, with a bandit-style
subsample-and-eliminate accelerator for large samples."""

from .bandit import BanditRound, BanditTrace, alpha_schedule, bandit_cr_sis, full_ranking, median_keep_count, shuffle_rows, subsample_size
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
    derive_stream,
)
from .evalbench import (
    BenchReport,
    MethodReport,
    MethodSpec,
    TimingReport,
    TimingRow,
    minimum_model_size,
    minimum_size_from_ranking,
    quantiles,
    run_replicates,
    selection_proportion,
    timing_sweep,
)
from .rankstat import (
    ConstantResponseError,
    RankProfile,
    YRanks,
    argsort_random_ties,
    batch_omega,
    chatterjee_omega,
    chatterjee_xi,
    compute_y_ranks,
    rank_profile,
)
from .screen import ScreenResult, cr_sis, rank_features, soft_threshold
from .simgen import ACTIVE_SETS, SimModelSpec, SimulationError, gen_ar_gaussian, gen_response, gen_t1, make_dataset

__version__ = "0.1.0"

__all__ = [
    "ACTIVE_SETS",
    "BanditConfig",
    "BanditRound",
    "BanditTrace",
    "BenchReport",
    "ConstantResponseError",
    "DataMatrix",
    "MethodReport",
    "MethodSpec",
    "RankProfile",
    "ResponseVector",
    "ScreenConfig",
    "ScreenResult",
    "SeedSpec",
    "SimModelSpec",
    "SimulationError",
    "StreamPurpose",
    "TimingReport",
    "TimingRow",
    "YRanks",
    "alpha_schedule",
    "argsort_random_ties",
    "bandit_cr_sis",
    "batch_omega",
    "chatterjee_omega",
    "chatterjee_xi",
    "compute_y_ranks",
    "cr_sis",
    "dc_sis",
    "dcor_scores",
    "default_model_size",
    "derive_seed",
    "derive_stream",
    "full_ranking",
    "gen_ar_gaussian",
    "gen_response",
    "gen_t1",
    "make_dataset",
    "median_keep_count",
    "minimum_model_size",
    "minimum_size_from_ranking",
    "pearson_scores",
    "quantiles",
    "rank_features",
    "rank_profile",
    "run_replicates",
    "selection_proportion",
    "shuffle_rows",
    "sis",
    "soft_threshold",
    "subsample_size",
    "timing_sweep",
    "__version__",
]
