"""sdcmask: noise-based masking of confidential numeric microdata columns.

Two maskers with a shared similarity parameter alpha in [0, 1]:

* additive hybrid generator: blends the confidential column with a
  non-confidential key column and calibrated Gaussian noise, preserving
  mean, variance, and the covariance with the key column;
* multiplicative lognormal masker: releases X^alpha * U^(1-alpha) with the
  noise law calibrated on the log scale so the release keeps exactly the
  lognormal law fitted to the input, skewness included.

Both run in "exact" mode (noise standardized so the preservation statements
hold in sample) or "stochastic" mode (plain i.i.d. noise, preservation in
expectation). All randomness comes from seeded, label-keyed deterministic
streams; see :mod:`sdcmask.rng` for the frozen generator contract.
"""

from .additive import AdditiveNoiseSpec, calibrate_additive, check_alpha, mask_additive
from .config import METHOD_ADDITIVE, METHOD_MULTIPLICATIVE, METHODS, MaskConfig
from .dataset import Dataset, OutputStage, load_csv, save_csv
from .errors import (
    AlphaOutOfRange,
    ConfigError,
    DegenerateResidual,
    EmptyColumn,
    EmptyRequest,
    IoError,
    LengthMismatch,
    MalformedHeader,
    MaskingError,
    NegativeNoiseVariance,
    NonPositiveValue,
    ParseError,
    RaggedRows,
    ZeroVariance,
)
from .multiplicative import (
    LognormalParams,
    MultiplicativeNoiseSpec,
    calibrate_multiplicative,
    estimate_log_params,
    lognormal_moments,
    lognormal_skewness,
    mask_multiplicative,
    noise_variance_multiplicative,
    power_law_params,
    product_law_params,
)
from .report import (
    MaskReport,
    build_report,
    ks_log_normality,
    rank_pairs,
    tail_exposure,
)
from .rng import (
    MODE_EXACT,
    MODE_STOCHASTIC,
    MODES,
    standard_normals,
    standardize_exact,
)
from .simulate import run_simulation, simulate_lognormal
from .stats import (
    MomentSummary,
    as_column,
    covariance,
    mean,
    moment_summary,
    paired_columns,
    pearson,
    rank_swap_count,
    ranks,
    skewness,
    spearman,
    variance,
)

__version__ = "0.1.0"

__all__ = [
    "AdditiveNoiseSpec",
    "AlphaOutOfRange",
    "ConfigError",
    "Dataset",
    "DegenerateResidual",
    "EmptyColumn",
    "EmptyRequest",
    "IoError",
    "LengthMismatch",
    "LognormalParams",
    "MalformedHeader",
    "MaskConfig",
    "MaskReport",
    "MaskingError",
    "METHOD_ADDITIVE",
    "METHOD_MULTIPLICATIVE",
    "METHODS",
    "MODE_EXACT",
    "MODE_STOCHASTIC",
    "MODES",
    "MomentSummary",
    "MultiplicativeNoiseSpec",
    "NegativeNoiseVariance",
    "NonPositiveValue",
    "OutputStage",
    "ParseError",
    "RaggedRows",
    "ZeroVariance",
    "as_column",
    "build_report",
    "calibrate_additive",
    "calibrate_multiplicative",
    "check_alpha",
    "covariance",
    "estimate_log_params",
    "ks_log_normality",
    "load_csv",
    "lognormal_moments",
    "lognormal_skewness",
    "mask_additive",
    "mask_multiplicative",
    "mean",
    "moment_summary",
    "noise_variance_multiplicative",
    "paired_columns",
    "pearson",
    "power_law_params",
    "product_law_params",
    "rank_pairs",
    "rank_swap_count",
    "ranks",
    "run_simulation",
    "save_csv",
    "simulate_lognormal",
    "skewness",
    "spearman",
    "standard_normals",
    "standardize_exact",
    "tail_exposure",
    "variance",
]
