"""Utility-preservation and disclosure-risk diagnostics for a masked column.

A MaskReport pairs the original and masked columns' moments, correlations,
rank behaviour, and distribution diagnostics; it is the data behind the
density, absolute-difference, and rank-pair figures that the CLI renders.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import ndtr

from .config import METHOD_MULTIPLICATIVE, MaskConfig
from .errors import NonPositiveValue, ZeroVariance
from .multiplicative import LognormalParams, estimate_log_params
from .stats import (
    MomentSummary,
    as_column,
    moment_summary,
    paired_columns,
    pearson,
    rank_swap_count,
    ranks,
    skewness,
    spearman,
)


@dataclass(frozen=True)
class MaskReport:
    """Paired original/masked metrics for one mask run.

    ``abs_diff_series`` holds (original_rank_index, |y_i - x_i|) pairs of
    length n, ordered by ascending original value. Log-scale fields are None
    when either column contains non-positive values; ``pearson_log_xy`` and
    ``ks_stat_log`` are additionally reserved to the multiplicative method.
    """

    method: str
    alpha: float
    mode: str
    n: int
    raw_moments_original: MomentSummary
    raw_moments_masked: MomentSummary
    log_params_original: LognormalParams | None
    log_params_masked: LognormalParams | None
    pearson_xy: float
    spearman_xy: float
    pearson_log_xy: float | None
    rank_swaps: int
    skewness_original: float
    skewness_masked: float
    ks_stat_log: float | None
    abs_diff_series: tuple[tuple[int, float], ...]

    def to_dict(self) -> dict:
        """JSON-ready mapping with the field names above, verbatim."""
        out = asdict(self)
        out["abs_diff_series"] = [[i, d] for i, d in self.abs_diff_series]
        return out


def ks_log_normality(y: ArrayLike, reference: LognormalParams) -> float:
    """One-sample Kolmogorov-Smirnov statistic of ln y against N(mu, sigma_sq).

    Computed as the supremum gap between the empirical CDF of the logs and
    the reference normal CDF. A zero-variance reference degenerates to an
    exact-match test: 0 when the data sits at exp(mu), else 1.
    """
    ya = as_column(y)
    bad = np.flatnonzero(ya <= 0.0)
    if bad.size:
        idx = int(bad[0])
        raise NonPositiveValue(
            f"value {ya[idx]} at index {idx} is not strictly positive", index=idx
        )
    logs = np.sort(np.log(ya))
    if reference.sigma_sq == 0.0:
        tol = 1e-12 * max(1.0, abs(reference.mu))
        return 0.0 if float(np.max(np.abs(logs - reference.mu))) <= tol else 1.0
    n = logs.size
    cdf = ndtr((logs - reference.mu) / math.sqrt(reference.sigma_sq))
    grid = np.arange(1, n + 1) / n
    d_plus = float(np.max(grid - cdf))
    d_minus = float(np.max(cdf - (grid - 1.0 / n)))
    return max(d_plus, d_minus)


def tail_exposure(
    x: ArrayLike, y: ArrayLike, top_fraction: float = 0.05
) -> tuple[float, float]:
    """Mean |y - x| inside the top fraction of original values vs the rest.

    Large original values carry the highest re-identification risk, so a
    masker that concentrates its perturbation there scores a high ratio.
    The top group holds ceil(top_fraction * n) observations, clamped so
    both groups stay non-empty.
    """
    xa, ya = paired_columns(x, y)
    if not 0.0 < top_fraction < 1.0:
        raise ValueError(f"top_fraction must be in (0, 1), got {top_fraction}")
    n = xa.size
    if n < 2:
        raise ValueError("need at least 2 observations to split top and rest")
    m = min(max(1, math.ceil(top_fraction * n)), n - 1)
    absdiff = np.abs(ya - xa)[np.argsort(xa, kind="stable")]
    return float(absdiff[n - m :].mean()), float(absdiff[: n - m].mean())


def _abs_diff_series(xa: np.ndarray, ya: np.ndarray) -> tuple[tuple[int, float], ...]:
    order = np.argsort(xa, kind="stable")
    diffs = np.abs(ya - xa)[order]
    return tuple((i + 1, float(d)) for i, d in enumerate(diffs))


def build_report(x: ArrayLike, y: ArrayLike, config: MaskConfig) -> MaskReport:
    """Assemble the full metric set for an (original, masked) pair.

    Deterministic in its inputs. Log-scale diagnostics are marked absent
    (None) rather than erroneous when the data is not strictly positive.
    """
    xa, ya = paired_columns(x, y)
    positive = bool((xa > 0.0).all() and (ya > 0.0).all())

    log_orig = estimate_log_params(xa) if positive else None
    log_masked = estimate_log_params(ya) if positive else None

    pearson_log = None
    ks_log = None
    if positive and config.method == METHOD_MULTIPLICATIVE:
        try:
            pearson_log = pearson(np.log(xa), np.log(ya))
        except ZeroVariance:
            pearson_log = None
        ks_log = ks_log_normality(ya, log_orig)

    return MaskReport(
        method=config.method,
        alpha=config.alpha,
        mode=config.mode,
        n=int(xa.size),
        raw_moments_original=moment_summary(xa),
        raw_moments_masked=moment_summary(ya),
        log_params_original=log_orig,
        log_params_masked=log_masked,
        pearson_xy=pearson(xa, ya),
        spearman_xy=spearman(xa, ya),
        pearson_log_xy=pearson_log,
        rank_swaps=rank_swap_count(xa, ya),
        skewness_original=skewness(xa),
        skewness_masked=skewness(ya),
        ks_stat_log=ks_log,
        abs_diff_series=_abs_diff_series(xa, ya),
    )


def rank_pairs(x: ArrayLike, y: ArrayLike) -> np.ndarray:
    """(n, 2) array of (original rank, masked rank) pairs, row per respondent."""
    xa, ya = paired_columns(x, y)
    return np.column_stack((ranks(xa), ranks(ya)))
